//! Relations derived from a causal order: chronology functors, horismos and
//! direction-functional orders.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::EventCloud;
use crate::order::CausalSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Beta,
    Gamma,
    GammaGuarded,
    HorismosPlus,
    HorismosMinus,
    DirectionOrder,
}

/// A binary relation on `0..n`, row `a` holding every `b` with `(a, b)` in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    rows: Vec<BitSet>,
}

impl Relation {
    pub fn new(kind: RelationKind, n: usize) -> Self {
        Relation {
            kind,
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn transpose(&self, kind: RelationKind) -> Relation {
        let mut t = Relation::new(kind, self.len());
        for (a, b) in self.pairs() {
            t.insert(b, a);
        }
        t
    }
}

/// True when `J(u, v)` contains two incomparable elements.
fn interval_not_total(cs: &CausalSet, u: usize, v: usize) -> bool {
    let j = cs.up(u).intersection(cs.down(v));
    let size = j.count();
    j.iter().any(|w| cs.cone(w).intersection_count(&j) != size)
}

/// `(x, y)` is in beta iff `x <= y` and some `x < u < v < y` has a
/// non-totally-ordered `J(u, v)`.
///
/// The witness condition is monotone: enlarging `J(u, v)` keeps it
/// non-total. So it is enough to try `u` among the upper covers of `x` and
/// `v` among the lower covers of `y`.
pub fn beta_chronology(cs: &CausalSet) -> Relation {
    let n = cs.len();
    let upper: Vec<Vec<usize>> = (0..n).map(|a| cs.upper_covers(a)).collect();
    let lower: Vec<Vec<usize>> = (0..n).map(|a| cs.lower_covers(a)).collect();
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    let mut rel = Relation::new(RelationKind::Beta, n);
    for x in 0..n {
        for y in cs.up(x).iter() {
            if y == x {
                continue;
            }
            let hit = upper[x].iter().any(|&u| {
                lower[y].iter().any(|&v| {
                    u != v
                        && cs.le(u, v)
                        && *memo.entry((u, v)).or_insert_with(|| interval_not_total(cs, u, v))
                })
            });
            if hit {
                rel.insert(x, y);
            }
        }
    }
    rel
}

/// `(p, q)` is in gamma iff every `a > p` has some `p < b < a` with `b <= q`,
/// and every `c < q` has some `c < d < q` with `p <= d`. The guarded form
/// also requires `p < q`.
///
/// On a finite order the first clause fails whenever `p` has an upper cover,
/// so the literal relation only holds between maximal `p` and minimal `q`.
pub fn gamma_chronology(cs: &CausalSet, guarded: bool) -> Relation {
    let n = cs.len();
    let kind = if guarded {
        RelationKind::GammaGuarded
    } else {
        RelationKind::Gamma
    };
    let mut rel = Relation::new(kind, n);
    let strict_up = |a: usize| {
        let mut s = cs.up(a).clone();
        s.remove(a);
        s
    };
    let strict_down = |a: usize| {
        let mut s = cs.down(a).clone();
        s.remove(a);
        s
    };
    // first[p]: for each a > p, the set of b with p < b < a.
    let first: Vec<Vec<BitSet>> = (0..n)
        .map(|p| {
            let sp = strict_up(p);
            sp.iter().map(|a| sp.intersection(&strict_down(a))).collect()
        })
        .collect();
    let second: Vec<Vec<BitSet>> = (0..n)
        .map(|q| {
            let sq = strict_down(q);
            sq.iter().map(|c| sq.intersection(&strict_up(c))).collect()
        })
        .collect();
    for p in 0..n {
        if first[p].iter().any(BitSet::is_empty) {
            continue;
        }
        for q in 0..n {
            if guarded && !cs.lt(p, q) {
                continue;
            }
            let c1 = first[p].iter().all(|bs| bs.intersects(cs.down(q)));
            let c2 = c1 && second[q].iter().all(|ds| ds.intersects(cs.up(p)));
            if c2 {
                rel.insert(p, q);
            }
        }
    }
    rel
}

/// Future and past horismos `(E+, E-)`.
///
/// With coordinates, `(a, x)` is in `E+` iff `a <= x` and
/// `0 <= sigma^2(a, x) <= eps^2`. Without coordinates only `eps = 0` is
/// allowed and `E+` is `J+` minus beta-chronology.
pub fn horismos(cloud: Option<&EventCloud>, cs: &CausalSet, eps: f64) -> Result<(Relation, Relation)> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::arg("eps", "must be finite and non-negative"));
    }
    let n = cs.len();
    let mut plus = Relation::new(RelationKind::HorismosPlus, n);
    match cloud {
        Some(cloud) => {
            if cloud.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: cloud.len(),
                });
            }
            let e2 = eps * eps;
            for a in 0..n {
                for x in cs.up(a).iter() {
                    let s2 = cloud.sigma2(a, x);
                    if (0.0..=e2).contains(&s2) {
                        plus.insert(a, x);
                    }
                }
            }
        }
        None if eps > 0.0 => return Err(Error::NoCoordinates),
        None => {
            let beta = beta_chronology(cs);
            for a in 0..n {
                for x in cs.up(a).iter() {
                    if !beta.contains(a, x) {
                        plus.insert(a, x);
                    }
                }
            }
        }
    }
    let minus = plus.transpose(RelationKind::HorismosMinus);
    Ok((plus, minus))
}

/// `k` equispaced unit vectors on the circle, starting at angle 0.
pub fn circle_directions(k: usize) -> Vec<Vec<f64>> {
    (0..k)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / k as f64;
            vec![a.cos(), a.sin()]
        })
        .collect()
}

/// Intersection of the preorders `dt + v . dx >= 0` over the given unit
/// spatial directions, with the number of ordered pairs it relates that
/// the causal order does not.
pub fn direction_order(cloud: &EventCloud, cs: &CausalSet, directions: &[Vec<f64>]) -> Result<(Relation, usize)> {
    for v in directions {
        if v.len() != cloud.n_spatial {
            return Err(Error::DimensionMismatch {
                expected: cloud.n_spatial,
                found: v.len(),
            });
        }
        let norm2: f64 = v.iter().map(|c| c * c).sum();
        if (norm2 - 1.0).abs() > 1e-9 {
            return Err(Error::arg("directions", format!("{v:?} is not a unit vector")));
        }
    }
    let n = cloud.len();
    if cs.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: cs.len(),
        });
    }
    let mut rel = Relation::new(RelationKind::DirectionOrder, n);
    let mut misclassified = 0;
    for x in 0..n {
        for y in 0..n {
            let (px, py) = (&cloud.coords[x], &cloud.coords[y]);
            let dt = py[0] - px[0];
            let ok = directions.iter().all(|v| {
                let dot: f64 = v.iter().zip(&py[1..]).zip(&px[1..]).map(|((c, b), a)| c * (b - a)).sum();
                dt + dot >= 0.0
            });
            if ok {
                rel.insert(x, y);
                if x != y && !cs.le(x, y) {
                    misclassified += 1;
                }
            }
        }
    }
    Ok((rel, misclassified))
}
