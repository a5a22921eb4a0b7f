//! Catcher, local catcher, Stoica, triangulation and grid-embedding dimensions.
//!
//! The compactness dimension of a causally simple space equals its catcher
//! dimension, so [`catcher_dimension`] also serves as the compactness
//! dimension; there is no separate topological computation.

mod catcher;
mod ml;
mod stoica;
mod triangulation;

pub use catcher::{
    catcher_dimension, catcher_dimension_with, chain_checkpoints, diamond_window, local_catcher_dimension,
    standard_diamond_window, verify_catcher, verify_catcher_by_chains, CatcherOptions,
};
pub use ml::ml_dimension_proxy;
pub use stoica::{
    default_stoica_eps, mean_nearest_neighbour, neighbourhood, stoica_dimension, verify_stoica, DEFAULT_EPS_KAPPA,
    DEFAULT_MAX_SIZE,
};
pub use triangulation::{default_triangulation_delta, triangulation_dimension, verify_landmarks};
