use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embed::EmbeddingCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    LowerBound,
    UpperBound,
    Interval,
    /// No set of any size satisfies the catcher condition.
    NoCatcher,
    /// No witness up to the search cap.
    NoWitness,
    /// Bounds computed from a partial universe.
    Heuristic,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::LowerBound => "lower_bound",
            Status::UpperBound => "upper_bound",
            Status::Interval => "interval",
            Status::NoCatcher => "no_catcher",
            Status::NoWitness => "no_witness",
            Status::Heuristic => "heuristic",
        }
    }

    /// True when the search stopped on a budget and only bounds are known.
    pub fn is_bounded_only(self) -> bool {
        matches!(
            self,
            Status::LowerBound | Status::UpperBound | Status::Interval | Status::Heuristic
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// Linear extensions, each listed bottom to top.
    Realizer { extensions: Vec<Vec<usize>> },
    /// Critical pairs that pairwise need different extensions.
    CriticalClique { pairs: Vec<(usize, usize)> },
    Catcher { p: usize, set: Vec<usize>, minimal: bool },
    Stoica { p: usize, set: Vec<usize>, eps: f64 },
    Landmarks { p: usize, set: Vec<usize> },
    Embedding { certificate: EmbeddingCertificate },
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::None => 0,
            Witness::Realizer { extensions } => extensions.len(),
            Witness::CriticalClique { pairs } => pairs.len(),
            Witness::Catcher { set, .. }
            | Witness::Stoica { set, .. }
            | Witness::Landmarks { set, .. } => set.len(),
            Witness::Embedding { certificate } => certificate.assignment.len(),
        }
    }
}

/// Outcome of a dimension computation.
///
/// `value` is set only for `Exact`. Bounded statuses fill `lower` and/or
/// `upper`. `nodes_explored` is the search budget consumed; `params` records
/// the numeric parameters the run actually used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub status: Status,
    pub value: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub witness: Witness,
    pub nodes_explored: u64,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl DimensionResult {
    pub fn exact(value: usize, witness: Witness, nodes: u64) -> Self {
        DimensionResult {
            status: Status::Exact,
            value: Some(value),
            lower: Some(value),
            upper: Some(value),
            witness,
            nodes_explored: nodes,
            params: BTreeMap::new(),
        }
    }

    pub fn bounds(status: Status, lower: Option<usize>, upper: Option<usize>, witness: Witness, nodes: u64) -> Self {
        DimensionResult {
            status,
            value: None,
            lower,
            upper,
            witness,
            nodes_explored: nodes,
            params: BTreeMap::new(),
        }
    }

    pub fn none(status: Status, nodes: u64) -> Self {
        Self::bounds(status, None, None, Witness::None, nodes)
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// `"3"` for exact values, `"[2,4]"` for intervals, otherwise the status name.
    pub fn display_value(&self) -> String {
        match (self.status, self.value, self.lower, self.upper) {
            (Status::Exact, Some(v), _, _) => v.to_string(),
            (_, _, Some(lo), Some(hi)) => format!("[{lo},{hi}]"),
            (_, _, Some(lo), None) => format!(">={lo}"),
            (_, _, None, Some(hi)) => format!("<={hi}"),
            (s, ..) => s.as_str().to_string(),
        }
    }
}
