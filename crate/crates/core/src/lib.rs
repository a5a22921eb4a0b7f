//! Order-theoretic dimensions of finite posets and sampled causal structures.
//!
//! A [`CausalSet`] is a finite partial order kept transitively closed in bit
//! rows. On top of it the crate provides generators for sprinklings, grids
//! and cylinders, derived relations (chronology functors, horismos,
//! direction orders), an exact Dushnik-Miller solver, catcher / Stoica /
//! triangulation dimensions, and an order-embedding search engine.
//!
//! On finite posets the geometric and Debreu dimensions coincide with the
//! Dushnik-Miller dimension, so only the latter is computed.

pub mod bitset;
pub mod causal;
pub mod dm;
pub mod embed;
pub mod error;
pub mod generators;
pub mod order;
pub mod relations;
pub mod result;
pub mod setcover;

pub use bitset::BitSet;
pub use dm::{dm_dimension, sprinkling_dim_witness_2d, verify_realizer, Realizer};
pub use embed::{EmbedMode, EmbeddingCertificate, SearchOutcome};
pub use error::{Error, Result};
pub use order::{CausalSet, CausalSetDoc, Chain, LinearExtension, TieBreak};
pub use result::{DimensionResult, Status, Witness};
