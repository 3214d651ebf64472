//! A countable model of the extension theorem: weight premeasures on the
//! finite–cofinite algebra of ℕ, their extensions to eventually periodic sets,
//! and a premeasure on the rational interval algebra with no proper left
//! extension.

pub mod counterexample;
pub mod intervals;
pub mod premeasure;
pub mod sample;
pub mod sets;

use thiserror::Error;

pub use counterexample::{counterexample_report, Certificate};
pub use intervals::{Interval, RatIntervalSet};
pub use premeasure::{
    approximate_by_algebra, cover_bound_oracle, inner_extend, premeasure_eval, restriction_compat_check,
    right_extend, uniqueness_check, Approximation, CoverBound, GeomWeightPremeasure, RestrictionReport, Tail,
};
pub use sets::{CofinSet, EventuallyPeriodicSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarathError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("the premeasure has infinite total mass")]
    InfiniteMass,
    #[error("instance too large: {0}")]
    TooLarge(String),
}
