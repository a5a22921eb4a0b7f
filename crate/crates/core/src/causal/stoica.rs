use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::EventCloud;
use crate::order::CausalSet;
use crate::result::{DimensionResult, Status, Witness};

/// Default multiplier in [`default_stoica_eps`].
pub const DEFAULT_EPS_KAPPA: f64 = 2.0;

/// Default largest set tried by [`stoica_dimension`].
pub const DEFAULT_MAX_SIZE: usize = 5;

/// Mean Euclidean nearest-neighbour distance of the cloud's coordinates.
pub fn mean_nearest_neighbour(cloud: &EventCloud) -> f64 {
    let n = cloud.len();
    if n < 2 {
        return 0.0;
    }
    let total: f64 = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| cloud.coord_dist(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    total / n as f64
}

/// `eps` with `eps^2 = kappa * extent * h`, where `h` is the mean
/// nearest-neighbour distance and `extent` the region's half height.
///
/// A point at offset `h` from a null cone of extent `L` has `sigma^2` of
/// order `L * h`, so this thickens each cone by a few sample spacings.
pub fn default_stoica_eps(cloud: &EventCloud, kappa: f64, extent: f64) -> f64 {
    (kappa * extent * mean_nearest_neighbour(cloud)).sqrt()
}

fn in_horismos(cloud: &EventCloud, cs: &CausalSet, a: usize, x: usize, e2: f64) -> bool {
    cs.le(a, x) && (0.0..=e2).contains(&cloud.sigma2(a, x))
}

/// The sample points within Euclidean distance `r` of `p`, excluding `p`.
pub fn neighbourhood(cloud: &EventCloud, p: usize, r: f64) -> BitSet {
    BitSet::from_indices(cloud.len(), (0..cloud.len()).filter(|&x| x != p && cloud.coord_dist(p, x) <= r))
}

/// Minimum `|A|` over points `a != p` with `p ∈ E+_eps(a)` such that no
/// point of the `r`-neighbourhood of `p` other than `p` lies in every
/// `E+_eps(a)`.
///
/// Sizes are tried in increasing order up to `max_size`; candidates whose
/// horismos set contains another candidate's are skipped. An empty
/// neighbourhood is isolated by `A = {}`.
pub fn stoica_dimension(
    cloud: &EventCloud,
    cs: &CausalSet,
    p: usize,
    eps: f64,
    r: f64,
    max_size: usize,
) -> Result<DimensionResult> {
    cs.check_index(p)?;
    if cloud.len() != cs.len() {
        return Err(Error::SizeMismatch {
            expected: cs.len(),
            found: cloud.len(),
        });
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::arg("eps", "must be positive"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::arg("neighborhood_r", "must be positive"));
    }
    let e2 = eps * eps;
    let nb = neighbourhood(cloud, p, r);
    let candidates: Vec<usize> = cs
        .down(p)
        .iter()
        .filter(|&a| a != p && in_horismos(cloud, cs, a, p, e2))
        .collect();
    let finish = |res: DimensionResult| {
        res.with_param("eps", eps)
            .with_param("neighborhood_r", r)
            .with_param("candidates", candidates.len() as f64)
            .with_param("neighbourhood_size", nb.count() as f64)
    };
    if nb.is_empty() {
        let w = Witness::Stoica { p, set: vec![], eps };
        return Ok(finish(DimensionResult::exact(0, w, 0)));
    }
    let sets: Vec<BitSet> = candidates
        .iter()
        .map(|&a| BitSet::from_indices(cs.len(), nb.iter().filter(|&x| in_horismos(cloud, cs, a, x, e2))))
        .collect();
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| (sets[i].count(), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&j| sets[j].is_subset(&sets[i])) {
            kept.push(i);
        }
    }
    let mut nodes = 0u64;
    for size in 1..=max_size.min(kept.len()) {
        let mut chosen = Vec::with_capacity(size);
        if let Some(found) = search(&sets, &kept, 0, size, &nb, &mut chosen, &mut nodes) {
            let mut set: Vec<usize> = found.iter().map(|&i| candidates[i]).collect();
            set.sort_unstable();
            let w = Witness::Stoica { p, set, eps };
            return Ok(finish(DimensionResult::exact(size, w, nodes)));
        }
    }
    Ok(finish(DimensionResult::none(Status::NoWitness, nodes)))
}

fn search(
    sets: &[BitSet],
    kept: &[usize],
    start: usize,
    left: usize,
    current: &BitSet,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    if current.is_empty() {
        return Some(chosen.clone());
    }
    if left == 0 {
        return None;
    }
    for pos in start..kept.len() {
        if kept.len() - pos < left {
            break;
        }
        *nodes += 1;
        let i = kept[pos];
        let next = current.intersection(&sets[i]);
        chosen.push(i);
        if let Some(found) = search(sets, kept, pos + 1, left - 1, &next, chosen, nodes) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Recomputes a Stoica witness: `a != p`, `p ∈ E+_eps(a)` for each member,
/// and the intersection over the `r`-neighbourhood is empty.
pub fn verify_stoica(cloud: &EventCloud, cs: &CausalSet, p: usize, set: &[usize], eps: f64, r: f64) -> bool {
    let e2 = eps * eps;
    if set.iter().any(|&a| a == p || a >= cs.len() || !in_horismos(cloud, cs, a, p, e2)) {
        return false;
    }
    neighbourhood(cloud, p, r)
        .iter()
        .all(|x| !set.iter().all(|&a| in_horismos(cloud, cs, a, x, e2)))
}
