//! Σ-transformations between poset-valued 2-functors on finite 2-categories:
//! classification, reflections, closures, coends, the closure formula and
//! extensions along strict transformations.

pub mod category;
pub mod closure;
pub mod coend;
pub mod enumerate;
pub mod final_functor;
pub mod functor;
pub mod json;
pub mod kan;
pub mod monad;
pub mod sample;
pub mod transformation;

#[cfg(test)]
pub(crate) mod fixtures;

use thiserror::Error;

pub use category::{Finite2Category, Morphism, SigmaClass};
pub use coend::{CoendCategory, CoendTransformation, CoendVariant};
pub use enumerate::{CandidateMode, Candidates, CheckOptions};
pub use final_functor::{colimit, preserves_colimit, weakly_final_check, WeaklyFinalReport};
pub use functor::{LatticeFunctor, PosetFunctor, PosetTransformation, ValueFunctor, WeightFunctor};
pub use closure::{SigmaIndependenceReport, StrictnessReport};
pub use kan::{Extension, ExtensionMethod, ExtensionReport, ProperPairReport, Side};
pub use monad::{FormulaOutcome, MonadHypothesisReport};
pub use transformation::{Kind, KindReport, Space, Transformation, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoCatError {
    #[error("invalid category: {0}")]
    Category(String),
    #[error("invalid functor: {0}")]
    Functor(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("target is not a lattice: {0}")]
    NotLattice(String),
    #[error("component at object {object} is not monotone: {x} <= {y} but images are not ordered")]
    NotMonotone { object: String, x: String, y: String },
    #[error("Σ-law fails at ({morphism}, {element})")]
    SigmaLaw { morphism: String, element: String },
    #[error("transformation is not lax: {0}")]
    NotLax(String),
    #[error("transformation is not colax: {0}")]
    NotColax(String),
    #[error("transformation is not strict: {0}")]
    NotStrict(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("operation not supported by this value backend: {0}")]
    BackendUnsupported(&'static str),
    #[error("no such transformation exists: {0}")]
    Nonexistence(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Input(String),
}
