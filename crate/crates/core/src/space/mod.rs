//! Finite probability spaces, σ-algebras as partitions, random variables and
//! filtrations.
//!
//! Every atom carries strictly positive mass, so "almost surely" statements
//! become exact atomwise statements.

mod filtration;
mod partition;
mod probability;
mod variable;

pub use filtration::Filtration;
pub use partition::{Partition, DEFAULT_EVENT_CAP};
pub use probability::ProbabilitySpace;
pub use variable::{Event, RandomVariable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("probability space has no atoms")]
    Empty,
    #[error("atom `{0}` has non-positive probability")]
    NullAtom(String),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(String),
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("mismatched spaces: {0} atoms vs {1} atoms")]
    Mismatch(usize, usize),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("{0} cells exceed the event-enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("filtration partition at `{fine}` does not refine the one at `{coarse}`")]
    NotRefining { coarse: String, fine: String },
    #[error("filtration is empty or has {times} times for {partitions} partitions")]
    BadFiltration { times: usize, partitions: usize },
}
