use crate::bitset::BitSet;
use crate::embed::{search_map, EmbedMode, SearchOutcome};
use crate::error::{Error, Result};
use crate::generators::grid_product;
use crate::order::CausalSet;
use crate::result::{DimensionResult, Status, Witness};

/// Largest `k <= max_k` such that the grid `{0..L-1}^k` order-embeds into
/// `target` (the interval `J(q-, q+)`, or the whole order) with the grid's
/// bottom mapped into `J+(p)`.
///
/// A grid with `k + 1` factors contains one with `k`, so the first failure
/// ends the scan. `budget` caps the total search nodes; when it runs out
/// the last success is reported as a lower bound.
pub fn ml_dimension_proxy(
    cs: &CausalSet,
    p: usize,
    l: usize,
    max_k: usize,
    budget: u64,
    target: Option<(usize, usize)>,
) -> Result<DimensionResult> {
    cs.check_index(p)?;
    if l < 2 {
        return Err(Error::arg("L", "need L >= 2"));
    }
    let region = match target {
        Some((lo, hi)) => cs.interval(lo, hi)?,
        None => BitSet::full(cs.len()),
    };
    let bottom_allowed = region.intersection(cs.up(p));
    let mut best: Option<(usize, Witness)> = None;
    let mut nodes = 0u64;
    for k in 1..=max_k {
        let grid = grid_product(l, k)?;
        let mut allowed = vec![region.clone(); grid.len()];
        allowed[0] = bottom_allowed.clone();
        let outcome = search_map(&grid, cs, EmbedMode::Embedding, budget.saturating_sub(nodes), Some(&allowed));
        nodes += outcome.nodes();
        match outcome {
            SearchOutcome::Yes { mut certificate, .. } => {
                certificate.source_id = format!("grid({l},{k})");
                certificate.target_id = "target".into();
                best = Some((k, Witness::Embedding { certificate }));
            }
            SearchOutcome::No { .. } => break,
            SearchOutcome::Exhausted { .. } => {
                let (lo, w) = best.unwrap_or((0, Witness::None));
                let r = DimensionResult::bounds(Status::LowerBound, Some(lo), None, w, nodes);
                return Ok(r.with_param("L", l as f64).with_param("failed_k", k as f64));
            }
        }
    }
    let (k, w) = best.unwrap_or((0, Witness::None));
    Ok(DimensionResult::exact(k, w, nodes).with_param("L", l as f64))
}
