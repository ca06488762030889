//! Conditional indicators on finite probability spaces.
//!
//! Values live in the extended reals with exact rational arithmetic, so every
//! equality tested by the property checkers is decided exactly.

pub mod battery;
pub mod expectation;
pub mod ext;
pub mod indicators;
pub mod report;
pub mod risk;
pub mod sampling;
pub mod space;
pub mod stochastic;

pub use ext::ExtReal;
pub use indicators::{Flag, Indicator};
pub use report::{CheckReport, Counterexample, Verdict};
pub use sampling::CheckConfig;
pub use space::{Event, Filtration, Partition, ProbabilitySpace, RandomVariable};
