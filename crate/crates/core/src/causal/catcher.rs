use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::EventCloud;
use crate::order::CausalSet;
use crate::result::{DimensionResult, Status, Witness};
use crate::setcover::{min_set_cover, CoverOutcome};

/// Settings for [`catcher_dimension_with`].
#[derive(Clone, Debug)]
pub struct CatcherOptions {
    /// Elements inside the trimming window; `None` keeps whole chains.
    pub window: Option<BitSet>,
    /// Restricts candidates to this set (still excluding `J(p)`).
    pub candidates: Option<BitSet>,
    /// Set-cover search nodes.
    pub budget: u64,
}

impl Default for CatcherOptions {
    fn default() -> Self {
        CatcherOptions {
            window: None,
            candidates: None,
            budget: 1_000_000,
        }
    }
}

/// Points of a Minkowski cloud at least `margin * height` below the top
/// null boundary of the diamond `J(q-, q+)`, where `q-` is `bottom` and
/// `q+ = bottom + height e_0`.
///
/// Membership is `(t - t_bottom) + |x - x_bottom| <= (1 - margin) * height`.
/// The left side is monotone along causal curves, so the window is a down-set.
pub fn diamond_window(cloud: &EventCloud, bottom: &[f64], height: f64, margin: f64) -> Result<BitSet> {
    if bottom.len() != cloud.dim_spacetime() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim_spacetime(),
            found: bottom.len(),
        });
    }
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::arg("margin", "must lie in [0, 1)"));
    }
    let limit = (1.0 - margin) * height;
    Ok(BitSet::from_indices(
        cloud.len(),
        (0..cloud.len()).filter(|&i| {
            let x = &cloud.coords[i];
            let r2: f64 = x[1..].iter().zip(&bottom[1..]).map(|(a, b)| (a - b) * (a - b)).sum();
            (x[0] - bottom[0]) + r2.sqrt() <= limit
        }),
    ))
}

/// The window for the standard diamond `q± = (±1, 0, ...)`.
pub fn standard_diamond_window(cloud: &EventCloud, margin: f64) -> Result<BitSet> {
    let mut bottom = vec![0.0; cloud.dim_spacetime()];
    bottom[0] = -1.0;
    diamond_window(cloud, &bottom, 2.0, margin)
}

fn check_window(cs: &CausalSet, p: usize, window: &BitSet) -> Result<()> {
    if window.len() != cs.len() {
        return Err(Error::SizeMismatch {
            expected: cs.len(),
            found: window.len(),
        });
    }
    let future = cs.up(p);
    for x in window.intersection(future).iter() {
        if !cs.down(x).intersection(future).is_subset(window) {
            return Err(Error::arg("window", format!("not a down-set above p at element {x}")));
        }
    }
    Ok(())
}

/// Elements at which a maximal chain from `p` is decided.
///
/// A chain from `p` along covering pairs is trimmed at its first element
/// outside the window (or runs to a maximal element inside it). Because
/// `J+(A)` is an up-set, the trimmed chain meets `J+(A)` iff its last
/// element does. The returned set holds every element that can be such a
/// last element: elements of `J+(p)` outside the window with a lower cover
/// inside it, plus maximal elements of the window above `p`. If `p` itself
/// is outside the window the set is `{p}`.
pub fn chain_checkpoints(cs: &CausalSet, p: usize, window: Option<&BitSet>) -> Result<BitSet> {
    cs.check_index(p)?;
    let n = cs.len();
    let future = cs.up(p);
    let Some(w) = window else {
        return Ok(BitSet::from_indices(n, future.iter().filter(|&x| cs.is_maximal(x))));
    };
    check_window(cs, p, w)?;
    if !w.contains(p) {
        return Ok(BitSet::from_indices(n, [p]));
    }
    let inside = future.intersection(w);
    let mut out = BitSet::new(n);
    for x in inside.iter() {
        if cs.is_maximal(x) {
            out.insert(x);
        }
    }
    for y in future.difference(w).iter() {
        let below = cs.down(y).intersection(&inside);
        // y is an entry point iff some element of `below` is covered by y.
        let entry = below.iter().any(|x| cs.up(x).intersection_count(cs.down(y)) == 2);
        if entry {
            out.insert(y);
        }
    }
    Ok(out)
}

/// Minimum catcher set without trimming.
pub fn catcher_dimension(cs: &CausalSet, p: usize, exact_budget: u64) -> Result<DimensionResult> {
    catcher_dimension_with(
        cs,
        p,
        &CatcherOptions {
            budget: exact_budget,
            ..Default::default()
        },
    )
}

/// Minimum `|A|` with `A ∩ J(p) = ∅` such that every (trimmed) maximal
/// chain from `p` meets `J+(A)`, solved as set cover over
/// [`chain_checkpoints`].
pub fn catcher_dimension_with(cs: &CausalSet, p: usize, opts: &CatcherOptions) -> Result<DimensionResult> {
    let universe = chain_checkpoints(cs, p, opts.window.as_ref())?;
    let mut pool = cs.cone(p).complement();
    if let Some(c) = &opts.candidates {
        if c.len() != cs.len() {
            return Err(Error::SizeMismatch {
                expected: cs.len(),
                found: c.len(),
            });
        }
        pool.intersect_with(c);
    }
    let candidates: Vec<usize> = pool.iter().collect();
    let sets: Vec<BitSet> = candidates.iter().map(|&a| cs.up(a).intersection(&universe)).collect();
    let res = min_set_cover(&universe, &sets, opts.budget);
    let to_elems = |idx: Vec<usize>| -> Vec<usize> { idx.into_iter().map(|i| candidates[i]).collect() };
    let out = match res.outcome {
        CoverOutcome::Infeasible => DimensionResult::none(Status::NoCatcher, res.nodes),
        CoverOutcome::Optimal(idx) => {
            let set = to_elems(idx);
            DimensionResult::exact(
                set.len(),
                Witness::Catcher {
                    p,
                    set,
                    minimal: true,
                },
                res.nodes,
            )
        }
        CoverOutcome::Bounds { lower, best } => {
            let set = to_elems(best);
            DimensionResult::bounds(
                Status::Interval,
                Some(lower),
                Some(set.len()),
                Witness::Catcher {
                    p,
                    set,
                    minimal: false,
                },
                res.nodes,
            )
        }
    };
    Ok(out
        .with_param("checkpoints", universe.count() as f64)
        .with_param("candidates", candidates.len() as f64))
}

/// Checks a catcher set by searching for an escaping chain.
///
/// Walks covering pairs upward from `p` through elements outside
/// `J+(set)`. The set fails if the walk reaches an element outside the
/// window or a maximal element, or if it meets `J(p)`.
pub fn verify_catcher(cs: &CausalSet, p: usize, set: &[usize], window: Option<&BitSet>) -> Result<bool> {
    cs.check_index(p)?;
    for &a in set {
        cs.check_index(a)?;
    }
    if let Some(w) = window {
        check_window(cs, p, w)?;
    }
    let cone = cs.cone(p);
    if set.iter().any(|&a| cone.contains(a)) {
        return Ok(false);
    }
    let caught = cs.up_of_set(&BitSet::from_indices(cs.len(), set.iter().copied()));
    let mut seen = BitSet::new(cs.len());
    let mut stack = vec![p];
    seen.insert(p);
    while let Some(x) = stack.pop() {
        if window.is_some_and(|w| !w.contains(x)) {
            return Ok(false);
        }
        let covers = cs.upper_covers(x);
        if covers.is_empty() {
            return Ok(false);
        }
        for y in covers {
            if !caught.contains(y) && !seen.contains(y) {
                seen.insert(y);
                stack.push(y);
            }
        }
    }
    Ok(true)
}

/// Checks a catcher set against explicitly enumerated maximal chains,
/// each cut after its first element outside the window.
pub fn verify_catcher_by_chains(
    cs: &CausalSet,
    p: usize,
    set: &[usize],
    window: Option<&BitSet>,
    chain_budget: usize,
) -> Result<bool> {
    let cone = cs.cone(p);
    if set.iter().any(|&a| cone.contains(a)) {
        return Ok(false);
    }
    let caught = cs.up_of_set(&BitSet::from_indices(cs.len(), set.iter().copied()));
    let chains = cs.maximal_chains_from(p, chain_budget)?;
    Ok(chains.iter().all(|c| {
        let cut = match window {
            Some(w) => c.0.iter().position(|&x| !w.contains(x)).map_or(c.0.len(), |i| i + 1),
            None => c.0.len(),
        };
        c.0[..cut].iter().any(|&x| caught.contains(x))
    }))
}

/// Largest catcher dimension over the open intervals `I(q-, q+)` that
/// contain `p`, each computed inside its induced subposet.
///
/// The endpoints are dropped: `q+` lies on every maximal chain of the
/// closed interval, which would make any element below it a catcher.
/// Intervals whose subposet gives no catcher (for example a chain through
/// `p`) are skipped; if every interval is skipped the result is `NoCatcher`.
pub fn local_catcher_dimension(
    cs: &CausalSet,
    p: usize,
    intervals: &[(usize, usize)],
    windows: Option<&[BitSet]>,
    budget: u64,
) -> Result<DimensionResult> {
    cs.check_index(p)?;
    if let Some(w) = windows {
        if w.len() != intervals.len() {
            return Err(Error::SizeMismatch {
                expected: intervals.len(),
                found: w.len(),
            });
        }
    }
    let mut best: Option<DimensionResult> = None;
    let mut nodes = 0;
    for (i, &(lo, hi)) in intervals.iter().enumerate() {
        let mut elems = cs.interval(lo, hi)?;
        if !elems.contains(p) || p == lo || p == hi {
            return Err(Error::arg("intervals", format!("p is not strictly inside interval {i}")));
        }
        elems.remove(lo);
        elems.remove(hi);
        let list = elems.to_vec();
        let sub = cs.induced(&list)?;
        let local_p = list.iter().position(|&x| x == p).unwrap();
        let window = windows.map(|w| BitSet::from_indices(list.len(), (0..list.len()).filter(|&j| w[i].contains(list[j]))));
        let mut r = catcher_dimension_with(
            &sub,
            local_p,
            &CatcherOptions {
                window,
                candidates: None,
                budget,
            },
        )?;
        nodes += r.nodes_explored;
        if r.status == Status::NoCatcher {
            continue;
        }
        if let Witness::Catcher { set, .. } = &mut r.witness {
            for x in set.iter_mut() {
                *x = list[*x];
            }
        }
        r.witness = match r.witness {
            Witness::Catcher { set, minimal, .. } => Witness::Catcher { p, set, minimal },
            w => w,
        };
        let better = match &best {
            None => true,
            Some(b) => r.upper.unwrap_or(0) > b.upper.unwrap_or(0),
        };
        if better {
            best = Some(r);
        }
    }
    let mut out = best.unwrap_or_else(|| DimensionResult::none(Status::NoCatcher, 0));
    out.nodes_explored = nodes;
    Ok(out.with_param("intervals", intervals.len() as f64))
}
