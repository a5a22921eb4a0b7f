//! Backtracking search for order embeddings and monotone injections, and
//! the preimage check for catcher sets.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::causal::verify_catcher;
use crate::error::{Error, Result};
use crate::order::CausalSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMode {
    /// `a <= b` iff `f(a) <= f(b)`.
    Embedding,
    /// Injective with `a <= b` implying `f(a) <= f(b)`.
    MonotoneInjection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub source_id: String,
    pub target_id: String,
    pub mode: EmbedMode,
    /// `assignment[x]` is the image of source element `x`.
    pub assignment: Vec<usize>,
}

impl EmbeddingCertificate {
    /// Fails with [`Error::InvalidCertificate`] unless the assignment is an
    /// injective map of the required kind.
    pub fn validate(&self, src: &CausalSet, dst: &CausalSet) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCertificate(m));
        if self.assignment.len() != src.len() {
            return bad(format!("{} images for {} elements", self.assignment.len(), src.len()));
        }
        let mut used = BitSet::new(dst.len());
        for (x, &y) in self.assignment.iter().enumerate() {
            if y >= dst.len() {
                return bad(format!("image of {x} is out of range"));
            }
            if used.contains(y) {
                return bad(format!("image {y} used twice"));
            }
            used.insert(y);
        }
        let f = &self.assignment;
        for a in 0..src.len() {
            for b in 0..src.len() {
                let (s, d) = (src.le(a, b), dst.le(f[a], f[b]));
                let ok = match self.mode {
                    EmbedMode::Embedding => s == d,
                    EmbedMode::MonotoneInjection => !s || d,
                };
                if !ok {
                    return bad(format!("pair ({a}, {b}) is not preserved"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Yes { certificate: EmbeddingCertificate, nodes: u64 },
    /// The search space was exhausted without a solution.
    No { nodes: u64 },
    /// The node budget ran out first.
    Exhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, SearchOutcome::Yes { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Yes { nodes, .. } | SearchOutcome::No { nodes } | SearchOutcome::Exhausted { nodes } => *nodes,
        }
    }

    pub fn certificate(&self) -> Option<&EmbeddingCertificate> {
        match self {
            SearchOutcome::Yes { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

struct Target {
    strict_up: Vec<BitSet>,
    strict_down: Vec<BitSet>,
    incomparable: Vec<BitSet>,
}

struct Engine<'a> {
    src: &'a CausalSet,
    mode: EmbedMode,
    target: Target,
    /// Per source element: target elements ordered by closeness of their
    /// up/down-set sizes.
    preference: Vec<Vec<usize>>,
    assignment: Vec<Option<usize>>,
    budget: u64,
    nodes: u64,
}

impl Engine<'_> {
    fn pick_variable(&self, domains: &[BitSet]) -> Option<usize> {
        let src = self.src;
        (0..src.len())
            .filter(|&x| self.assignment[x].is_none())
            .min_by_key(|&x| {
                (
                    domains[x].count(),
                    std::cmp::Reverse(src.up(x).count() + src.down(x).count()),
                    x,
                )
            })
    }

    /// Restrict the unassigned domains after `x -> y`; false on a wipe-out.
    fn propagate(&self, x: usize, y: usize, domains: &mut [BitSet]) -> bool {
        let src = self.src;
        for z in 0..src.len() {
            if self.assignment[z].is_some() || z == x {
                continue;
            }
            if src.lt(x, z) {
                domains[z].intersect_with(&self.target.strict_up[y]);
            } else if src.lt(z, x) {
                domains[z].intersect_with(&self.target.strict_down[y]);
            } else {
                match self.mode {
                    EmbedMode::Embedding => domains[z].intersect_with(&self.target.incomparable[y]),
                    EmbedMode::MonotoneInjection => domains[z].remove(y),
                }
            }
            if domains[z].is_empty() {
                return false;
            }
        }
        true
    }

    /// `Some(true)` on success, `Some(false)` if exhausted below, `None` on budget.
    fn dfs(&mut self, domains: Vec<BitSet>) -> Option<bool> {
        let Some(x) = self.pick_variable(&domains) else {
            return Some(true);
        };
        let prefs = std::mem::take(&mut self.preference[x]);
        let result = self.try_values(x, &prefs, &domains);
        self.preference[x] = prefs;
        result
    }

    fn try_values(&mut self, x: usize, prefs: &[usize], domains: &[BitSet]) -> Option<bool> {
        for &y in prefs {
            if !domains[x].contains(y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut next = domains.to_vec();
            if !self.propagate(x, y, &mut next) {
                continue;
            }
            self.assignment[x] = Some(y);
            if self.dfs(next)? {
                return Some(true);
            }
            self.assignment[x] = None;
        }
        Some(false)
    }
}

fn strict(row: &BitSet, a: usize) -> BitSet {
    let mut s = row.clone();
    s.remove(a);
    s
}

/// Complete backtracking search for a map of the given kind.
///
/// `allowed[x]`, when given, restricts the possible images of `x`. Domains
/// start from up/down/incomparable-count filters, the most constrained
/// source element is assigned first, and each assignment is forward
/// checked against every unassigned element.
pub fn search_map(
    src: &CausalSet,
    dst: &CausalSet,
    mode: EmbedMode,
    budget: u64,
    allowed: Option<&[BitSet]>,
) -> SearchOutcome {
    let (n, m) = (src.len(), dst.len());
    let certificate = |assignment: Vec<usize>| EmbeddingCertificate {
        source_id: "src".into(),
        target_id: "dst".into(),
        mode,
        assignment,
    };
    if n > m {
        return SearchOutcome::No { nodes: 0 };
    }
    let sizes = |cs: &CausalSet, a: usize| (cs.up(a).count() - 1, cs.down(a).count() - 1);
    let dst_sizes: Vec<(usize, usize)> = (0..m).map(|y| sizes(dst, y)).collect();
    let mut domains = Vec::with_capacity(n);
    let mut preference = Vec::with_capacity(n);
    for x in 0..n {
        let (u, d) = sizes(src, x);
        let inc = n - 1 - u - d;
        let mut dom = BitSet::new(m);
        for (y, &(uy, dy)) in dst_sizes.iter().enumerate() {
            let ok = uy >= u
                && dy >= d
                && (mode == EmbedMode::MonotoneInjection || m - 1 - uy - dy >= inc);
            if ok {
                dom.insert(y);
            }
        }
        if let Some(a) = allowed {
            dom.intersect_with(&a[x]);
        }
        if dom.is_empty() {
            return SearchOutcome::No { nodes: 0 };
        }
        let mut pref: Vec<usize> = dom.iter().collect();
        pref.sort_by_key(|&y| (dst_sizes[y].0.abs_diff(u) + dst_sizes[y].1.abs_diff(d), y));
        preference.push(pref);
        domains.push(dom);
    }
    let target = Target {
        strict_up: (0..m).map(|y| strict(dst.up(y), y)).collect(),
        strict_down: (0..m).map(|y| strict(dst.down(y), y)).collect(),
        incomparable: (0..m).map(|y| dst.cone(y).complement()).collect(),
    };
    let mut engine = Engine {
        src,
        mode,
        target,
        preference,
        assignment: vec![None; n],
        budget,
        nodes: 0,
    };
    match engine.dfs(domains) {
        Some(true) => {
            let assignment = engine.assignment.iter().map(|a| a.unwrap()).collect();
            SearchOutcome::Yes {
                certificate: certificate(assignment),
                nodes: engine.nodes,
            }
        }
        Some(false) => SearchOutcome::No { nodes: engine.nodes },
        None => SearchOutcome::Exhausted { nodes: engine.nodes },
    }
}

pub fn order_embedding_exists(src: &CausalSet, dst: &CausalSet, budget: u64) -> SearchOutcome {
    search_map(src, dst, EmbedMode::Embedding, budget, None)
}

pub fn monotone_injection_exists(src: &CausalSet, dst: &CausalSet, budget: u64) -> SearchOutcome {
    search_map(src, dst, EmbedMode::MonotoneInjection, budget, None)
}

/// Checks that the preimage of a catcher set is a catcher set.
///
/// `a_dst` must catch every (window-trimmed) maximal chain from `f(p_src)`
/// in `dst`. Returns whether `f^-1(a_dst)` is disjoint from `J(p_src)` and
/// catches every maximal chain from `p_src` in `src`, trimmed at the
/// preimage of the window.
pub fn preimage_catcher_check(
    cert: &EmbeddingCertificate,
    src: &CausalSet,
    dst: &CausalSet,
    p_src: usize,
    a_dst: &[usize],
    dst_window: Option<&BitSet>,
) -> Result<bool> {
    let as_injection = EmbeddingCertificate {
        mode: EmbedMode::MonotoneInjection,
        ..cert.clone()
    };
    as_injection.validate(src, dst)?;
    src.check_index(p_src)?;
    let f = &cert.assignment;
    let p_dst = f[p_src];
    match verify_catcher(dst, p_dst, a_dst, dst_window) {
        Ok(true) => {}
        Ok(false) => return Err(Error::InvalidWitness(format!("{a_dst:?} does not catch chains from {p_dst}"))),
        Err(e) => return Err(Error::InvalidWitness(e.to_string())),
    }
    let targets = BitSet::from_indices(dst.len(), a_dst.iter().copied());
    let a_src: Vec<usize> = (0..src.len()).filter(|&x| targets.contains(f[x])).collect();
    let src_window = dst_window.map(|w| BitSet::from_indices(src.len(), (0..src.len()).filter(|&x| w.contains(f[x]))));
    verify_catcher(src, p_src, &a_src, src_window.as_ref())
}
