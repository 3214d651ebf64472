//! Premeasures on finite set algebras, their outer and inner relatives, the
//! closures between them, and their encoding as transformations over a
//! truncated category of finite index sets.

pub mod algebra;
pub mod closures;
pub mod crosscheck;
pub mod encoding;
pub mod json;
pub mod sample;
pub mod table;

use thiserror::Error;

use crate::twocat::TwoCatError;

pub use algebra::{AtomSet, SetAlgebra};
pub use closures::{join_premeasures, overline_outer, rl_general, underline_inner};
pub use crosscheck::{engine_crosscheck, CrossOperation, CrosscheckReport, CROSSCHECK_MAX_ATOMS};
pub use encoding::{MeasureEncoding, TruncatedIndexCategory, Variant};
pub use table::{validate_measure_kind, KindValidation, MeasureKind, MeasureTable};

/// Enumeration-based operations refuse algebras with more atoms than this.
pub const MAX_ATOMS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("{0} is not an element of the ground set")]
    NotInGround(usize),
    #[error("atoms do not partition the ground set: {0}")]
    NotAPartition(String),
    #[error("set {0} is not a union of atoms")]
    NotInAlgebra(String),
    #[error("table has {got} values, the algebra has {expected} elements")]
    TableSize { expected: usize, got: usize },
    #[error("a {kind} must vanish on the empty set")]
    EmptyNotZero { kind: MeasureKind },
    #[error("table is not monotone: {0}")]
    NotMonotone(String),
    #[error("table is not {expected}: {witness}")]
    WrongKind { expected: MeasureKind, witness: String },
    #[error("tables live on different algebras")]
    MixedAlgebras,
    #[error("algebra has {0} atoms; at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] TwoCatError),
}
