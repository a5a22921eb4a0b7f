//! Finite partial orders stored as transitively closed bit rows.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite reflexive partial order on `0..n`.
///
/// `up[a]` holds every `b` with `a <= b` and `down[a]` every `b` with
/// `b <= a`. Both are kept closed, so `J+(a)` and `J-(a)` are plain row reads.
#[derive(Clone, PartialEq, Eq)]
pub struct CausalSet {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

/// A chain listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain(pub Vec<usize>);

/// A permutation of `0..n`, listed from smallest to largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearExtension(pub Vec<usize>);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    SmallestIndex,
    LargestIndex,
}

impl LinearExtension {
    /// `pos[x]` is the rank of `x`; `None` if this is not a permutation of `0..n`.
    pub fn positions(&self, n: usize) -> Option<Vec<usize>> {
        if self.0.len() != n {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (rank, &x) in self.0.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return None;
            }
            pos[x] = rank;
        }
        Some(pos)
    }

    pub fn is_extension_of(&self, cs: &CausalSet) -> bool {
        let Some(pos) = self.positions(cs.len()) else {
            return false;
        };
        (0..cs.len()).all(|a| cs.up(a).iter().all(|b| pos[a] <= pos[b]))
    }
}

impl Chain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_chain_in(&self, cs: &CausalSet) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1] && cs.le(w[0], w[1]))
    }
}

impl CausalSet {
    /// Reflexive-transitive closure of `pairs` on `n` elements.
    pub fn from_relation_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::Index { index: x, n });
                }
            }
            up[a].insert(b);
        }
        Self::close(up)
    }

    /// Build from a predicate `le(a, b)`; the result is closed, so a predicate
    /// that is only transitive up to rounding still yields a partial order.
    pub fn from_fn(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut up = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = BitSet::new(n);
            row.insert(a);
            for b in 0..n {
                if a != b && le(a, b) {
                    row.insert(b);
                }
            }
            up.push(row);
        }
        Self::close(up)
    }

    /// Rows that already contain the reflexive pairs; closes and validates.
    pub fn from_up_rows(rows: Vec<BitSet>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if !r.contains(i) {
                return Err(Error::arg("rows", format!("row {i} is not reflexive")));
            }
        }
        Self::close(rows)
    }

    fn close(mut up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        for k in 0..n {
            let rk = up[k].clone();
            for (i, row) in up.iter_mut().enumerate() {
                if i != k && row.contains(k) {
                    row.union_with(&rk);
                }
            }
        }
        let down = transpose(&up);
        for a in 0..n {
            if up[a].intersection_count(&down[a]) != 1 {
                let b = up[a]
                    .intersection(&down[a])
                    .iter()
                    .find(|&b| b != a)
                    .unwrap_or(a);
                return Err(Error::Cycle { a, b });
            }
        }
        Ok(CausalSet {
            n,
            up,
            down,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relation_pairs(n, &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation_pairs(n, &[]).expect("no pairs")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::Index {
                index: a,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// `J+(a)`, including `a`.
    #[inline]
    pub fn up(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// `J-(a)`, including `a`.
    #[inline]
    pub fn down(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    /// `J(a) = J+(a) ∪ J-(a)`.
    pub fn cone(&self, a: usize) -> BitSet {
        self.up[a].union(&self.down[a])
    }

    /// `J+(A)`.
    pub fn up_of_set(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.n);
        for a in set.iter() {
            out.union_with(&self.up[a]);
        }
        out
    }

    /// `J(a, b)`; empty when `a` is not below `b`.
    pub fn interval(&self, a: usize, b: usize) -> Result<BitSet> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.up[a].intersection(&self.down[b]))
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        self.up[a].count() == 1
    }

    pub fn is_minimal(&self, a: usize) -> bool {
        self.down[a].count() == 1
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_maximal(a)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_minimal(a)).collect()
    }

    /// Elements `b` covering `a`: `a < b` with nothing strictly between.
    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.up[a]
            .iter()
            .filter(|&b| b != a && self.down[b].intersection_count(&self.up[a]) == 2)
            .collect()
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.down[a]
            .iter()
            .filter(|&b| b != a && self.up[b].intersection_count(&self.down[a]) == 2)
            .collect()
    }

    /// All covering pairs, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b)))
            .collect()
    }

    /// Number of strictly related ordered pairs.
    pub fn strict_pair_count(&self) -> usize {
        self.up.iter().map(|r| r.count() - 1).sum()
    }

    /// The subposet induced on `elements`; element `i` of the result is `elements[i]`.
    pub fn induced(&self, elements: &[usize]) -> Result<CausalSet> {
        for &e in elements {
            self.check_index(e)?;
        }
        let m = elements.len();
        let mut up = Vec::with_capacity(m);
        for &a in elements {
            let mut row = BitSet::new(m);
            for (j, &b) in elements.iter().enumerate() {
                if self.le(a, b) {
                    row.insert(j);
                }
            }
            up.push(row);
        }
        let down = transpose(&up);
        for a in 0..m {
            if up[a].intersection_count(&down[a]) != 1 {
                return Err(Error::arg("elements", "repeated element"));
            }
        }
        Ok(CausalSet {
            n: m,
            up,
            down,
            labels: None,
        })
    }

    /// Maximal chains from `p` along covering pairs.
    ///
    /// Fails with [`Error::BudgetExceeded`] carrying the first `budget` chains
    /// when there are more.
    pub fn maximal_chains_from(&self, p: usize, budget: usize) -> Result<Vec<Chain>> {
        self.check_index(p)?;
        if budget == 0 {
            return Err(Error::arg("budget", "must be positive"));
        }
        let mut covers: Vec<Option<Vec<usize>>> = vec![None; self.n];
        let mut out = Vec::new();
        let mut path = vec![p];
        // Each frame is (node, index of the next cover to try).
        let mut stack = vec![(p, 0usize)];
        while let Some(top) = stack.last_mut() {
            let node = top.0;
            let next = &mut top.1;
            let cov = covers[node].get_or_insert_with(|| self.upper_covers(node));
            if cov.is_empty() {
                if out.len() == budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        partial: out,
                    });
                }
                out.push(Chain(path.clone()));
                stack.pop();
                path.pop();
                continue;
            }
            if *next < cov.len() {
                let child = cov[*next];
                *next += 1;
                stack.push((child, 0));
                path.push(child);
            } else {
                stack.pop();
                path.pop();
            }
        }
        Ok(out)
    }

    /// A deterministic linear extension (Kahn's algorithm).
    pub fn linear_extension(&self, tiebreak: TieBreak) -> LinearExtension {
        let mut pending: Vec<usize> = self.down.iter().map(|d| d.count() - 1).collect();
        let key = |i: usize| match tiebreak {
            TieBreak::SmallestIndex => i,
            TieBreak::LargestIndex => self.n - 1 - i,
        };
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..self.n)
            .filter(|&i| pending[i] == 0)
            .map(|i| Reverse((key(i), i)))
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse((_, a))) = ready.pop() {
            order.push(a);
            for b in self.up[a].iter() {
                if b != a {
                    pending[b] -= 1;
                    if pending[b] == 0 {
                        ready.push(Reverse((key(b), b)));
                    }
                }
            }
        }
        LinearExtension(order)
    }

    /// Verify the stored rows: reflexive, antisymmetric, transitive, and
    /// `down` is the transpose of `up`.
    pub fn validate(&self) -> Result<()> {
        for a in 0..self.n {
            if !self.le(a, a) {
                return Err(Error::arg("rel", format!("{a} not reflexive")));
            }
            for b in self.up[a].iter() {
                if b != a && self.le(b, a) {
                    return Err(Error::Cycle { a, b });
                }
                if !self.up[b].is_subset(&self.up[a]) {
                    return Err(Error::arg("rel", format!("not transitive at {a} <= {b}")));
                }
                if !self.down[b].contains(a) {
                    return Err(Error::arg("rel", "down rows out of sync"));
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self, meta: serde_json::Map<String, serde_json::Value>) -> CausalSetDoc {
        CausalSetDoc {
            n: self.n,
            pairs: self.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: self.labels.clone(),
            meta,
        }
    }
}

impl std::fmt::Debug for CausalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CausalSet")
            .field("n", &self.n)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

fn transpose(up: &[BitSet]) -> Vec<BitSet> {
    let n = up.len();
    let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for (a, row) in up.iter().enumerate() {
        for b in row.iter() {
            down[b].insert(a);
        }
    }
    down
}

/// On-disk form of a causal set. Readers accept any generating pair set;
/// the writer emits sorted cover pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalSetDoc {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub meta: serde_json::Map<String, serde_json::Value>,
}

impl CausalSetDoc {
    pub fn to_causal_set(&self) -> Result<CausalSet> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|p| (p[0], p[1])).collect();
        let cs = CausalSet::from_relation_pairs(self.n, &pairs)?;
        match &self.labels {
            Some(l) => cs.with_labels(l.clone()),
            None => Ok(cs),
        }
    }
}
