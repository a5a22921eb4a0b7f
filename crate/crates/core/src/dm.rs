//! Dushnik-Miller dimension via critical-pair colouring.
//!
//! A critical pair `(a, b)` is an incomparable pair with
//! `D(a) ⊆ D(b)` and `U(b) ⊆ U(a)` (strict down- and up-sets). A family of
//! linear extensions is a realizer iff every critical pair has `b` below `a`
//! in some member, so `dim <= k` iff the critical pairs split into `k`
//! classes each of which can be reversed by one extension. A class is
//! reversible iff the order plus the edges `b -> a` stays acyclic.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::EventCloud;
use crate::order::{CausalSet, LinearExtension, TieBreak};
use crate::result::{DimensionResult, Status, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn to_witness(&self) -> Witness {
        Witness::Realizer {
            extensions: self.extensions.iter().map(|e| e.0.clone()).collect(),
        }
    }
}

/// True iff every extension is a linear extension of `cs` and their
/// intersection is exactly `cs`.
pub fn verify_realizer(cs: &CausalSet, r: &Realizer) -> Result<bool> {
    let n = cs.len();
    let mut positions = Vec::with_capacity(r.len());
    for ext in &r.extensions {
        if ext.0.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: ext.0.len(),
            });
        }
        match ext.positions(n) {
            Some(pos) if ext.is_extension_of(cs) => positions.push(pos),
            _ => return Ok(false),
        }
    }
    if positions.is_empty() {
        return Ok(n == 0);
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && !cs.le(a, b) && positions.iter().all(|pos| pos[a] < pos[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All critical pairs `(a, b)`, sorted.
pub fn critical_pairs(cs: &CausalSet) -> Vec<(usize, usize)> {
    let n = cs.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || cs.comparable(a, b) {
                continue;
            }
            let mut da = cs.down(a).clone();
            da.remove(a);
            let mut ub = cs.up(b).clone();
            ub.remove(b);
            if da.is_subset(cs.down(b)) && ub.is_subset(cs.up(a)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Two critical pairs that no single extension can reverse together
/// (`a1 <= b2` and `a2 <= b1` close a cycle).
#[inline]
fn alternating(cs: &CausalSet, p: (usize, usize), q: (usize, usize)) -> bool {
    cs.le(p.0, q.1) && cs.le(q.0, p.1)
}

/// True iff `pairs` are critical and pairwise alternating, which forces
/// `dim >= pairs.len()`.
pub fn verify_critical_clique(cs: &CausalSet, pairs: &[(usize, usize)]) -> bool {
    let crit = critical_pairs(cs);
    pairs.iter().all(|p| crit.contains(p))
        && pairs
            .iter()
            .enumerate()
            .all(|(i, &p)| pairs[i + 1..].iter().all(|&q| alternating(cs, p, q)))
}

/// Closure of `cs` plus the reversal edges added so far.
#[derive(Clone)]
struct Class {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl Class {
    fn new(cs: &CausalSet) -> Self {
        Class {
            up: (0..cs.len()).map(|a| cs.up(a).clone()).collect(),
            down: (0..cs.len()).map(|a| cs.down(a).clone()).collect(),
        }
    }

    /// Adds `b -> a`; returns false (leaving the class unchanged) on a cycle.
    fn try_reverse(&mut self, (a, b): (usize, usize)) -> bool {
        if self.up[a].contains(b) {
            return false;
        }
        if self.up[b].contains(a) {
            return true;
        }
        let below_b = self.down[b].clone();
        let above_a = self.up[a].clone();
        for x in below_b.iter() {
            self.up[x].union_with(&above_a);
        }
        for y in above_a.iter() {
            self.down[y].union_with(&below_b);
        }
        true
    }

    fn can_reverse(&self, (a, b): (usize, usize)) -> bool {
        !self.up[a].contains(b)
    }

    fn extension(&self) -> LinearExtension {
        CausalSet::from_up_rows(self.up.clone())
            .expect("class relation is acyclic")
            .linear_extension(TieBreak::SmallestIndex)
    }
}

fn greedy_clique(cs: &CausalSet, crit: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let m = crit.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| i != j && alternating(cs, crit[i], crit[j])).collect())
        .collect();
    let degree: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..m {
        let mut clique = vec![start];
        let mut cand: Vec<usize> = (0..m).filter(|&j| adj[start][j]).collect();
        while !cand.is_empty() {
            let &pick = cand
                .iter()
                .max_by_key(|&&j| (cand.iter().filter(|&&x| adj[j][x]).count(), degree[j], std::cmp::Reverse(j)))
                .unwrap();
            clique.push(pick);
            cand.retain(|&x| adj[pick][x]);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    let mut pairs: Vec<_> = best.into_iter().map(|i| crit[i]).collect();
    pairs.sort_unstable();
    pairs
}

fn greedy_realizer(cs: &CausalSet, crit: &[(usize, usize)]) -> Realizer {
    let mut covered = vec![false; crit.len()];
    let mut extensions = Vec::new();
    while let Some(first) = covered.iter().position(|c| !c) {
        let mut class = Class::new(cs);
        for (i, &pair) in crit.iter().enumerate().skip(first) {
            if !covered[i] {
                class.try_reverse(pair);
            }
        }
        let ext = class.extension();
        let pos = ext.positions(cs.len()).unwrap();
        for (i, &(a, b)) in crit.iter().enumerate() {
            if pos[b] < pos[a] {
                covered[i] = true;
            }
        }
        extensions.push(ext);
    }
    if extensions.is_empty() {
        extensions.push(cs.linear_extension(TieBreak::SmallestIndex));
    }
    Realizer { extensions }
}

enum Search {
    Found(Vec<Class>),
    Infeasible,
    Exhausted,
}

struct Colouring<'a> {
    order: &'a [(usize, usize)],
    k: usize,
    budget: u64,
    nodes: u64,
}

impl Colouring<'_> {
    fn run(&mut self, cs: &CausalSet) -> Search {
        let mut classes: Vec<Class> = Vec::with_capacity(self.k);
        match self.dfs(cs, 0, &mut classes) {
            Some(true) => Search::Found(classes),
            Some(false) => Search::Infeasible,
            None => Search::Exhausted,
        }
    }

    /// `Some(true)` when a colouring was found (left in `classes`),
    /// `Some(false)` when this subtree is infeasible, `None` on budget.
    fn dfs(&mut self, cs: &CausalSet, idx: usize, classes: &mut Vec<Class>) -> Option<bool> {
        if idx == self.order.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let pair = self.order[idx];
        // A pair already reversed by an existing class costs nothing.
        if classes.iter().any(|c| c.up[pair.1].contains(pair.0)) {
            return self.dfs(cs, idx + 1, classes);
        }
        for c in 0..classes.len() {
            if !classes[c].can_reverse(pair) {
                continue;
            }
            let saved = classes[c].clone();
            classes[c].try_reverse(pair);
            if self.remaining_feasible(idx + 1, classes) {
                match self.dfs(cs, idx + 1, classes)? {
                    true => return Some(true),
                    false => {}
                }
            }
            classes[c] = saved;
        }
        // Opening a new class: all empty classes are interchangeable.
        if classes.len() < self.k {
            let mut fresh = Class::new(cs);
            fresh.try_reverse(pair);
            classes.push(fresh);
            if self.remaining_feasible(idx + 1, classes) && self.dfs(cs, idx + 1, classes)? {
                return Some(true);
            }
            classes.pop();
        }
        Some(false)
    }

    /// Forward check: every unassigned pair still fits somewhere.
    fn remaining_feasible(&self, from: usize, classes: &[Class]) -> bool {
        if classes.len() < self.k {
            return true;
        }
        self.order[from..]
            .iter()
            .all(|&p| classes.iter().any(|c| c.can_reverse(p)))
    }
}

/// Smallest `k <= max_k` with a realizer of size `k`.
///
/// Lower bound from a clique of pairwise alternating critical pairs, upper
/// bound from a greedy realizer; the gap is closed by colouring search with
/// forward checking. A spent `budget` (search nodes) yields `Interval`.
pub fn dm_dimension(cs: &CausalSet, max_k: usize, budget: u64) -> DimensionResult {
    let crit = critical_pairs(cs);
    if crit.is_empty() {
        let r = Realizer {
            extensions: vec![cs.linear_extension(TieBreak::SmallestIndex)],
        };
        return DimensionResult::exact(1, r.to_witness(), 0);
    }
    let clique = greedy_clique(cs, &crit);
    let mut lower = clique.len().max(2);
    let greedy = greedy_realizer(cs, &crit);
    let upper = greedy.len();
    if lower >= upper {
        return DimensionResult::exact(upper, greedy.to_witness(), 0);
    }

    // Most-conflicted pairs first.
    let mut order = crit.clone();
    let conflicts = |p: (usize, usize)| crit.iter().filter(|&&q| q != p && alternating(cs, p, q)).count();
    order.sort_by_key(|&p| (std::cmp::Reverse(conflicts(p)), p));

    let mut nodes = 0u64;
    while lower < upper && lower <= max_k {
        let mut search = Colouring {
            order: &order,
            k: lower,
            budget: budget.saturating_sub(nodes),
            nodes: 0,
        };
        let outcome = search.run(cs);
        nodes += search.nodes;
        match outcome {
            Search::Found(classes) => {
                let r = Realizer {
                    extensions: classes.iter().map(Class::extension).collect(),
                };
                return DimensionResult::exact(lower, r.to_witness(), nodes);
            }
            Search::Infeasible => lower += 1,
            Search::Exhausted => {
                return DimensionResult::bounds(Status::Interval, Some(lower), Some(upper), greedy.to_witness(), nodes);
            }
        }
    }
    if lower >= upper {
        DimensionResult::exact(upper, greedy.to_witness(), nodes)
    } else {
        // Every k <= max_k was ruled out.
        DimensionResult::bounds(Status::LowerBound, Some(lower), Some(upper), greedy.to_witness(), nodes)
    }
}

/// Lower-bound certificate for `cs`: a clique of alternating critical pairs.
pub fn critical_clique(cs: &CausalSet) -> Vec<(usize, usize)> {
    greedy_clique(cs, &critical_pairs(cs))
}

/// The two null-coordinate orders of a 2D Minkowski cloud: sort by
/// `u = t - x` and by `v = t + x` (each tie broken by the other coordinate,
/// then by index).
pub fn sprinkling_dim_witness_2d(cloud: &EventCloud) -> Result<Realizer> {
    if cloud.n_spatial != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: cloud.n_spatial,
        });
    }
    let uv: Vec<(f64, f64)> = cloud.coords.iter().map(|x| (x[0] - x[1], x[0] + x[1])).collect();
    let mut by_u: Vec<usize> = (0..cloud.len()).collect();
    by_u.sort_by(|&i, &j| {
        uv[i].0
            .total_cmp(&uv[j].0)
            .then(uv[i].1.total_cmp(&uv[j].1))
            .then(i.cmp(&j))
    });
    let mut by_v: Vec<usize> = (0..cloud.len()).collect();
    by_v.sort_by(|&i, &j| {
        uv[i].1
            .total_cmp(&uv[j].1)
            .then(uv[i].0.total_cmp(&uv[j].0))
            .then(i.cmp(&j))
    });
    Ok(Realizer {
        extensions: vec![LinearExtension(by_u), LinearExtension(by_v)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cone_standard_example, grid_product, powerset_order, sprinkle_minkowski_with, Region};

    fn ext(v: &[usize]) -> LinearExtension {
        LinearExtension(v.to_vec())
    }

    #[test]
    fn chains_have_dimension_one() {
        for n in [0, 1, 5] {
            let r = dm_dimension(&CausalSet::chain(n), 8, 1000);
            assert_eq!(r.value, Some(1));
        }
    }

    #[test]
    fn antichain_of_two_has_dimension_two() {
        let r = dm_dimension(&CausalSet::antichain(2), 8, 1000);
        assert_eq!(r.status, Status::Exact);
        assert_eq!(r.value, Some(2));
    }

    #[test]
    fn named_posets() {
        assert_eq!(dm_dimension(&powerset_order(3).unwrap(), 8, 100_000).value, Some(3));
        assert_eq!(dm_dimension(&grid_product(3, 3).unwrap(), 8, 100_000).value, Some(3));
        let (_, s5) = cone_standard_example(5, 1.0).unwrap();
        assert_eq!(dm_dimension(&s5, 8, 100_000).value, Some(5));
    }

    #[test]
    fn realizer_checks() {
        let c = CausalSet::chain(3);
        assert!(verify_realizer(&c, &Realizer { extensions: vec![ext(&[0, 1, 2])] }).unwrap());
        let a = CausalSet::antichain(2);
        let two = Realizer {
            extensions: vec![ext(&[0, 1]), ext(&[1, 0])],
        };
        assert!(verify_realizer(&a, &two).unwrap());
        let short = Realizer {
            extensions: vec![ext(&[0])],
        };
        assert!(matches!(verify_realizer(&a, &short), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn no_two_extensions_realize_b3() {
        let b3 = powerset_order(3).unwrap();
        let e1 = b3.linear_extension(TieBreak::SmallestIndex);
        let e2 = b3.linear_extension(TieBreak::LargestIndex);
        assert!(!verify_realizer(&b3, &Realizer { extensions: vec![e1, e2] }).unwrap());
    }

    #[test]
    fn lower_bound_certificate_for_standard_example() {
        let (_, s4) = cone_standard_example(4, 0.7).unwrap();
        let clique = critical_clique(&s4);
        assert_eq!(clique.len(), 4);
        assert!(verify_critical_clique(&s4, &clique));
    }

    #[test]
    fn budget_exhaustion_gives_interval() {
        // Two disjoint copies of the 4-crown need a search to rule out k = 2.
        let cs = CausalSet::from_relation_pairs(
            8,
            &[(0, 4), (0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 4)],
        )
        .unwrap();
        let r = dm_dimension(&cs, 8, 1);
        if r.status != Status::Exact {
            assert_eq!(r.status, Status::Interval);
            assert!(r.lower.unwrap() <= r.upper.unwrap());
        }
    }

    #[test]
    fn null_coordinate_witness() {
        let timelike = vec![vec![-0.5, 0.0], vec![0.5, 0.1]];
        let (cloud, cs) = sprinkle_minkowski_with(1, 2, Region::Diamond, 0, &timelike).unwrap();
        let r = sprinkling_dim_witness_2d(&cloud).unwrap();
        assert_eq!(r.extensions[0], r.extensions[1]);
        assert!(verify_realizer(&cs, &r).unwrap());
        let spacelike = vec![vec![0.0, -0.4], vec![0.0, 0.4]];
        let (cloud, cs) = sprinkle_minkowski_with(1, 2, Region::Diamond, 0, &spacelike).unwrap();
        let r = sprinkling_dim_witness_2d(&cloud).unwrap();
        assert_ne!(r.extensions[0], r.extensions[1]);
        assert!(verify_realizer(&cs, &r).unwrap());
    }
}
