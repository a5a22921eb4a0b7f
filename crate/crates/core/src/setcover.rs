//! Exact minimum set cover by branch and bound.

use crate::bitset::BitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    /// A minimum cover, as sorted indices into the input sets.
    Optimal(Vec<usize>),
    /// Budget spent: the optimum lies in `lower..=best.len()`.
    Bounds { lower: usize, best: Vec<usize> },
    /// The sets do not cover the universe.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub outcome: CoverOutcome,
    pub nodes: u64,
}

struct Solver<'a> {
    sets: &'a [BitSet],
    /// For each element, the (reduced) sets containing it.
    containing: Vec<Vec<usize>>,
    best: Vec<usize>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

/// Sets that are not contained in another set, as indices into `sets`.
/// Among equal sets the lowest index is kept.
pub fn undominated(sets: &[BitSet], universe: &BitSet) -> Vec<usize> {
    let trimmed: Vec<BitSet> = sets.iter().map(|s| s.intersection(universe)).collect();
    let mut order: Vec<usize> = (0..sets.len()).filter(|&i| !trimmed[i].is_empty()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(trimmed[i].count()), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&j| trimmed[i].is_subset(&trimmed[j])) {
            kept.push(i);
        }
    }
    kept
}

/// Greedy cover (largest marginal gain, lowest index on ties).
fn greedy(sets: &[BitSet], candidates: &[usize], universe: &BitSet) -> Vec<usize> {
    let mut uncovered = universe.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let &pick = candidates
            .iter()
            .max_by_key(|&&i| (sets[i].intersection_count(&uncovered), std::cmp::Reverse(i)))
            .expect("feasibility checked by caller");
        chosen.push(pick);
        uncovered.difference_with(&sets[pick]);
    }
    chosen
}

impl Solver<'_> {
    /// Elements pairwise sharing no set each need their own set.
    fn packing_bound(&self, uncovered: &BitSet) -> usize {
        let mut elems: Vec<usize> = uncovered.iter().collect();
        elems.sort_by_key(|&e| (self.containing[e].len(), e));
        let mut blocked = BitSet::new(self.sets.len());
        let mut count = 0;
        for e in elems {
            if self.containing[e].iter().all(|&s| !blocked.contains(s)) {
                count += 1;
                for &s in &self.containing[e] {
                    blocked.insert(s);
                }
            }
        }
        count
    }

    fn dfs(&mut self, uncovered: &BitSet, chosen: &mut Vec<usize>) {
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if chosen.len() + 1 >= self.best.len() {
            return;
        }
        let max_gain = self
            .containing
            .iter()
            .enumerate()
            .filter(|(e, _)| uncovered.contains(*e))
            .flat_map(|(_, ss)| ss.iter())
            .map(|&s| self.sets[s].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let lb = uncovered.count().div_ceil(max_gain).max(self.packing_bound(uncovered));
        if chosen.len() + lb >= self.best.len() {
            return;
        }
        // Branch on the element with the fewest covering sets.
        let elem = uncovered
            .iter()
            .min_by_key(|&e| (self.containing[e].len(), e))
            .unwrap();
        let mut branch = self.containing[elem].clone();
        branch.sort_by_key(|&s| (std::cmp::Reverse(self.sets[s].intersection_count(uncovered)), s));
        for s in branch {
            chosen.push(s);
            let rest = uncovered.difference(&self.sets[s]);
            self.dfs(&rest, chosen);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// Minimum number of `sets` whose union contains `universe`.
///
/// Dominated sets are dropped first; a greedy cover seeds the upper bound
/// and the search branches on the least-covered element, pruning with a
/// packing bound. `budget` caps search nodes.
pub fn min_set_cover(universe: &BitSet, sets: &[BitSet], budget: u64) -> CoverResult {
    let mut all = BitSet::new(universe.len());
    for s in sets {
        all.union_with(s);
    }
    if !universe.is_subset(&all) {
        return CoverResult {
            outcome: CoverOutcome::Infeasible,
            nodes: 0,
        };
    }
    if universe.is_empty() {
        return CoverResult {
            outcome: CoverOutcome::Optimal(vec![]),
            nodes: 0,
        };
    }
    let kept = undominated(sets, universe);
    let trimmed: Vec<BitSet> = sets.iter().map(|s| s.intersection(universe)).collect();
    let mut containing = vec![Vec::new(); universe.len()];
    for &i in &kept {
        for e in trimmed[i].iter() {
            containing[e].push(i);
        }
    }
    let mut best = greedy(&trimmed, &kept, universe);
    best.sort_unstable();
    let mut solver = Solver {
        sets: &trimmed,
        containing,
        best,
        budget,
        nodes: 0,
        exhausted: false,
    };
    let root_lb = solver.packing_bound(universe).max(1);
    if root_lb < solver.best.len() {
        let mut chosen = Vec::new();
        solver.dfs(universe, &mut chosen);
    }
    let mut best = solver.best;
    best.sort_unstable();
    let outcome = if solver.exhausted {
        CoverOutcome::Bounds { lower: root_lb, best }
    } else {
        CoverOutcome::Optimal(best)
    };
    CoverResult {
        outcome,
        nodes: solver.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(len: usize, v: &[usize]) -> BitSet {
        BitSet::from_indices(len, v.iter().copied())
    }

    #[test]
    fn greedy_trap_is_solved_exactly() {
        // Greedy picks the big middle set first and needs 3; optimum is 2.
        let u = BitSet::full(6);
        let sets = vec![set(6, &[0, 1, 2]), set(6, &[3, 4, 5]), set(6, &[1, 2, 3, 4])];
        let r = min_set_cover(&u, &sets, 1000);
        assert_eq!(r.outcome, CoverOutcome::Optimal(vec![0, 1]));
    }

    #[test]
    fn infeasible_and_empty() {
        let u = BitSet::full(3);
        let r = min_set_cover(&u, &[set(3, &[0, 1])], 10);
        assert_eq!(r.outcome, CoverOutcome::Infeasible);
        let r = min_set_cover(&BitSet::new(3), &[], 10);
        assert_eq!(r.outcome, CoverOutcome::Optimal(vec![]));
    }

    #[test]
    fn dominated_sets_are_dropped() {
        let u = BitSet::full(4);
        let sets = vec![set(4, &[0]), set(4, &[0, 1]), set(4, &[0, 1]), set(4, &[2, 3])];
        assert_eq!(undominated(&sets, &u), vec![1, 3]);
    }

    #[test]
    fn tiny_budget_reports_bounds() {
        // Projective-plane style instance where bounds differ at the root.
        let u = BitSet::full(7);
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        let sets: Vec<BitSet> = lines.iter().map(|l| set(7, l)).collect();
        let exact = min_set_cover(&u, &sets, 10_000);
        assert!(matches!(exact.outcome, CoverOutcome::Optimal(ref v) if v.len() == 3));
        let cut = min_set_cover(&u, &sets, 0);
        match cut.outcome {
            CoverOutcome::Bounds { lower, best } => assert!(lower <= 3 && best.len() >= 3),
            CoverOutcome::Optimal(v) => assert_eq!(v.len(), 3),
            CoverOutcome::Infeasible => panic!(),
        }
    }
}
