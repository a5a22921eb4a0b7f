use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::MetricSample;
use crate::result::{DimensionResult, Status, Witness};
use crate::setcover::{min_set_cover, CoverOutcome};

/// `0.9` times the distance from `p` to its nearest other point: the
/// largest tolerance that still separates `p` from its neighbours by some
/// landmark, with a little slack for rounding.
pub fn default_triangulation_delta(sample: &MetricSample, p: usize) -> f64 {
    let nearest = (0..sample.len())
        .filter(|&q| q != p)
        .map(|q| sample.d(p, q))
        .fold(f64::INFINITY, f64::min);
    if nearest.is_finite() {
        0.9 * nearest
    } else {
        0.0
    }
}

/// Minimum number of landmarks `a != p` such that no `q != p` has
/// `|d(q, a) - d(p, a)| <= delta` for every landmark.
///
/// Landmark `a` separates `q` when the distances differ by more than
/// `delta`, so this is a set cover of the other points.
pub fn triangulation_dimension(sample: &MetricSample, p: usize, delta: f64, budget: u64) -> Result<DimensionResult> {
    let n = sample.len();
    if p >= n {
        return Err(Error::Index { index: p, n });
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::arg("delta", "must be finite and non-negative"));
    }
    let mut universe = BitSet::full(n);
    universe.remove(p);
    let landmarks: Vec<usize> = (0..n).filter(|&a| a != p).collect();
    let sets: Vec<BitSet> = landmarks
        .iter()
        .map(|&a| BitSet::from_indices(n, (0..n).filter(|&q| q != p && (sample.d(q, a) - sample.d(p, a)).abs() > delta)))
        .collect();
    let res = min_set_cover(&universe, &sets, budget);
    let to_points = |idx: Vec<usize>| -> Vec<usize> { idx.into_iter().map(|i| landmarks[i]).collect() };
    let out = match res.outcome {
        CoverOutcome::Infeasible => DimensionResult::none(Status::NoWitness, res.nodes),
        CoverOutcome::Optimal(idx) => {
            let set = to_points(idx);
            DimensionResult::exact(set.len(), Witness::Landmarks { p, set }, res.nodes)
        }
        CoverOutcome::Bounds { lower, best } => {
            let set = to_points(best);
            let hi = set.len();
            DimensionResult::bounds(Status::Interval, Some(lower), Some(hi), Witness::Landmarks { p, set }, res.nodes)
        }
    };
    Ok(out.with_param("delta", delta))
}

/// True iff the landmarks separate every other point from `p`.
pub fn verify_landmarks(sample: &MetricSample, p: usize, set: &[usize], delta: f64) -> bool {
    !set.contains(&p)
        && (0..sample.len())
            .filter(|&q| q != p)
            .all(|q| set.iter().any(|&a| (sample.d(q, a) - sample.d(p, a)).abs() > delta))
}
