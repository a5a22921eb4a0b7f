//! Brute-force oracles and random instance builders shared by the
//! integration tests and the acceptance harness.
#![allow(dead_code)]

use ordim::bitset::BitSet;
use ordim::{CausalSet, EmbedMode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Intersection of `d` random permutations of `0..n`.
pub fn random_permutation_order(rng: &mut impl Rng, n: usize, d: usize) -> CausalSet {
    let perms: Vec<Vec<usize>> = (0..d)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            let mut pos = vec![0; n];
            for (r, &x) in p.iter().enumerate() {
                pos[x] = r;
            }
            pos
        })
        .collect();
    CausalSet::from_fn(n, |a, b| perms.iter().all(|pos| pos[a] <= pos[b])).unwrap()
}

/// Closure of a random DAG on `0..n` with edge probability `density`.
pub fn random_dag_order(rng: &mut impl Rng, n: usize, density: f64) -> CausalSet {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((a, b));
            }
        }
    }
    CausalSet::from_relation_pairs(n, &pairs).unwrap()
}

/// Either kind of random order, chosen by the rng.
pub fn random_order(rng: &mut impl Rng, max_n: usize) -> CausalSet {
    let n = rng.gen_range(1..=max_n);
    if rng.gen_bool(0.5) {
        let d = rng.gen_range(1..=4);
        random_permutation_order(rng, n, d)
    } else {
        let density = rng.gen_range(0.05..0.5);
        random_dag_order(rng, n, density)
    }
}

/// All linear extensions, or `None` if there are more than `cap`.
pub fn all_linear_extensions(cs: &CausalSet, cap: usize) -> Option<Vec<Vec<usize>>> {
    fn rec(cs: &CausalSet, placed: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        let n = cs.len();
        if placed.len() == n {
            out.push(placed.clone());
            return out.len() <= cap;
        }
        for x in 0..n {
            if used[x] {
                continue;
            }
            // Every strict predecessor of x must already be placed.
            if (0..n).any(|y| y != x && cs.le(y, x) && !used[y]) {
                continue;
            }
            used[x] = true;
            placed.push(x);
            let ok = rec(cs, placed, used, out, cap);
            placed.pop();
            used[x] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let ok = rec(cs, &mut Vec::new(), &mut vec![false; cs.len()], &mut out, cap);
    ok.then_some(out)
}

type Mask = [u64; 3];

fn and(a: &Mask, b: &Mask) -> Mask {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2]]
}

fn and_not(a: &Mask, b: &Mask) -> Mask {
    [a[0] & !b[0], a[1] & !b[1], a[2] & !b[2]]
}

fn is_zero(a: &Mask) -> bool {
    a.iter().all(|&w| w == 0)
}

fn lowest_bit(a: &Mask) -> Mask {
    let mut out = [0; 3];
    if let Some(i) = a.iter().position(|&w| w != 0) {
        out[i] = a[i] & a[i].wrapping_neg();
    }
    out
}

/// Smallest number of masks covering `full`, by plain recursion on the
/// lowest uncovered bit.
fn min_mask_cover(masks: &[Mask], full: Mask) -> Option<usize> {
    fn rec(masks: &[Mask], uncovered: Mask, depth: usize, best: &mut usize) {
        if is_zero(&uncovered) {
            *best = (*best).min(depth);
            return;
        }
        if depth + 1 >= *best {
            return;
        }
        let bit = lowest_bit(&uncovered);
        for m in masks {
            if !is_zero(&and(m, &bit)) {
                rec(masks, and_not(&uncovered, m), depth + 1, best);
            }
        }
    }
    let union = masks.iter().fold([0u64; 3], |a, m| [a[0] | m[0], a[1] | m[1], a[2] | m[2]]);
    if !is_zero(&and_not(&full, &union)) {
        return None;
    }
    let mut best = usize::MAX;
    rec(masks, full, 0, &mut best);
    Some(best)
}

/// Keep only masks not strictly contained in another (one copy of duplicates).
fn maximal_masks(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.sort_unstable();
    masks.dedup();
    let all = masks.clone();
    masks.retain(|m| !all.iter().any(|o| o != m && and(m, o) == *m));
    masks
}

/// Dushnik-Miller dimension from the definition: the fewest linear
/// extensions such that every incomparable ordered pair `(a, b)` has `b`
/// before `a` in one of them. `None` when there are too many extensions.
pub fn brute_dm_dimension(cs: &CausalSet, cap: usize) -> Option<usize> {
    let n = cs.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && !cs.comparable(a, b))
        .collect();
    if pairs.is_empty() {
        return Some(1);
    }
    assert!(pairs.len() <= 192, "too many incomparable pairs for the oracle");
    let exts = all_linear_extensions(cs, cap)?;
    let masks: Vec<Mask> = exts
        .iter()
        .map(|e| {
            let mut pos = vec![0; n];
            for (r, &x) in e.iter().enumerate() {
                pos[x] = r;
            }
            let mut m = [0u64; 3];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if pos[b] < pos[a] {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            m
        })
        .collect();
    let mut full = [0u64; 3];
    for i in 0..pairs.len() {
        full[i / 64] |= 1 << (i % 64);
    }
    min_mask_cover(&maximal_masks(masks), full)
}

/// Minimum set cover by trying all subsets in order of size.
pub fn brute_set_cover(universe: &BitSet, sets: &[BitSet]) -> Option<usize> {
    let m = sets.len();
    assert!(m <= 20);
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut cover = BitSet::new(universe.len());
        for (i, s) in sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cover.union_with(s);
            }
        }
        if universe.is_subset(&cover) {
            best = Some(size);
        }
    }
    best
}

/// Catcher dimension from the definition: enumerate maximal chains from `p`
/// (cut after their first element outside the window) and try candidate
/// subsets by increasing size.
pub fn brute_catcher(cs: &CausalSet, p: usize, window: Option<&BitSet>) -> Option<usize> {
    let cone = cs.cone(p);
    let candidates: Vec<usize> = (0..cs.len()).filter(|&a| !cone.contains(a)).collect();
    assert!(candidates.len() <= 20);
    let chains: Vec<Vec<usize>> = cs
        .maximal_chains_from(p, 1_000_000)
        .unwrap()
        .into_iter()
        .map(|c| {
            let cut = match window {
                Some(w) => c.0.iter().position(|&x| !w.contains(x)).map_or(c.0.len(), |i| i + 1),
                None => c.0.len(),
            };
            c.0[..cut].to_vec()
        })
        .collect();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << candidates.len()) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let chosen: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        let hit = chains
            .iter()
            .all(|c| c.iter().any(|&x| chosen.iter().any(|&a| cs.le(a, x))));
        if hit {
            best = Some(size);
        }
    }
    best
}

/// Plain backtracking over injective assignments, checking every pair
/// against earlier assignments only.
pub fn brute_embedding(src: &CausalSet, dst: &CausalSet, mode: EmbedMode) -> Option<Vec<usize>> {
    fn ok(src: &CausalSet, dst: &CausalSet, mode: EmbedMode, f: &[usize], x: usize, y: usize) -> bool {
        f.iter().enumerate().all(|(a, &fa)| {
            let pairs = [(src.le(a, x), dst.le(fa, y)), (src.le(x, a), dst.le(y, fa))];
            pairs.iter().all(|&(s, d)| match mode {
                EmbedMode::Embedding => s == d,
                EmbedMode::MonotoneInjection => !s || d,
            })
        })
    }
    fn rec(src: &CausalSet, dst: &CausalSet, mode: EmbedMode, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let x = f.len();
        if x == src.len() {
            return true;
        }
        for y in 0..dst.len() {
            if !used[y] && ok(src, dst, mode, f, x, y) {
                used[y] = true;
                f.push(y);
                if rec(src, dst, mode, f, used) {
                    return true;
                }
                f.pop();
                used[y] = false;
            }
        }
        false
    }
    let mut f = Vec::new();
    rec(src, dst, mode, &mut f, &mut vec![false; dst.len()]).then_some(f)
}

/// Median of values where `None` sorts above every number.
pub fn median(values: &[Option<usize>]) -> Option<f64> {
    let mut v: Vec<Option<usize>> = values.to_vec();
    v.sort_by_key(|x| x.unwrap_or(usize::MAX));
    let n = v.len();
    if n == 0 {
        return None;
    }
    let (a, b) = (v[(n - 1) / 2]?, v[n / 2]?);
    Some((a + b) as f64 / 2.0)
}
