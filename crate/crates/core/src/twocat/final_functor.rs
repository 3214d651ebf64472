//! Weakly final monotone maps between finite preorders (thin categories) and
//! colimits of diagrams into finite lattices.

use serde::Serialize;

use crate::order::{FiniteLattice, FinitePreorder};

use super::TwoCatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeaklyFinalReport {
    pub weakly_final: bool,
    /// An object `d` whose comma category `d/F` is empty.
    pub witness: Option<usize>,
    /// For a failing map: a diagram into the chain `0 < 1` whose colimit is
    /// not preserved (1 exactly on objects with empty comma category).
    pub counterexample: Option<Vec<usize>>,
}

fn check_map(c: &FinitePreorder, d: &FinitePreorder, fun: &[usize]) -> Result<(), TwoCatError> {
    if fun.len() != c.len() || fun.iter().any(|&y| y >= d.len()) {
        return Err(TwoCatError::Shape("functor table does not match its preorders".into()));
    }
    for x in 0..c.len() {
        for y in 0..c.len() {
            if c.leq(x, y) && !d.leq(fun[x], fun[y]) {
                return Err(TwoCatError::NotMonotone {
                    object: "functor".into(),
                    x: x.to_string(),
                    y: y.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `fun: C → D` is weakly final iff every `d` lies below some `fun(c)`.
pub fn weakly_final_check(
    c: &FinitePreorder,
    d: &FinitePreorder,
    fun: &[usize],
) -> Result<WeaklyFinalReport, TwoCatError> {
    check_map(c, d, fun)?;
    let empty_comma = |x: usize| !fun.iter().any(|&fc| d.leq(x, fc));
    let witness = (0..d.len()).find(|&x| empty_comma(x));
    Ok(WeaklyFinalReport {
        weakly_final: witness.is_none(),
        witness,
        counterexample: witness.map(|_| (0..d.len()).map(|x| empty_comma(x) as usize).collect()),
    })
}

/// Colimit of a diagram into a lattice: the join of its values.
pub fn colimit(lattice: &FiniteLattice, values: &[usize]) -> usize {
    lattice.join_all(values.iter().copied())
}

/// Whether `colim(D∘fun) = colim D` for a monotone diagram `D: D → L`.
pub fn preserves_colimit(
    c: &FinitePreorder,
    d: &FinitePreorder,
    fun: &[usize],
    lattice: &FiniteLattice,
    diagram: &[usize],
) -> Result<bool, TwoCatError> {
    check_map(c, d, fun)?;
    if diagram.len() != d.len() || diagram.iter().any(|&v| v >= lattice.len()) {
        return Err(TwoCatError::Shape("diagram does not match its preorder".into()));
    }
    for x in 0..d.len() {
        for y in 0..d.len() {
            if d.leq(x, y) && !lattice.leq(diagram[x], diagram[y]) {
                return Err(TwoCatError::NotMonotone {
                    object: "diagram".into(),
                    x: x.to_string(),
                    y: y.to_string(),
                });
            }
        }
    }
    let composite: Vec<usize> = fun.iter().map(|&y| diagram[y]).collect();
    Ok(colimit(lattice, &composite) == colimit(lattice, diagram))
}
