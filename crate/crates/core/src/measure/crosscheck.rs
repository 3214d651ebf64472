//! Runs the generic engine on encoded tables and compares the decoded results
//! with the closed forms.
//!
//! The closure formula evaluated at the index set `1` ranges over families of
//! at most `K` members, so the exact comparison needs `K` at least the number
//! of atoms. The truncation is capped at three, which bounds the atoms.

use serde::Serialize;

use crate::ext::ExtValue;
use crate::twocat::{CheckOptions, SigmaIndependenceReport, StrictnessReport, TwoCatError};

use super::closures::{join_premeasures, overline_outer, rl_general, underline_inner};
use super::encoding::{MeasureEncoding, Variant};
use super::table::{MeasureKind, MeasureTable};
use super::MeasureError;

pub const CROSSCHECK_MAX_ATOMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossOperation {
    Overline,
    Underline,
    ReflectLax,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub operation: CrossOperation,
    pub bound: usize,
    pub closed_form: Vec<(String, ExtValue)>,
    pub engine: Vec<(String, ExtValue)>,
    pub equal: bool,
    /// Whether the engine's formula value had the kind the theory predicts.
    pub engine_kind_ok: bool,
    /// Run on a capped integer backend; absent for non-integer tables.
    pub strictness: Option<StrictnessReport>,
    pub sigma_independence: Option<SigmaIndependenceReport>,
    pub notes: Vec<String>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.equal
            && self.engine_kind_ok
            && self.strictness.as_ref().is_none_or(|s| s.holds())
            && self.sigma_independence.as_ref().is_none_or(|p| p.equal)
    }
}

/// Compares the closed form of `op` on `m` (joined with `others` for
/// [`CrossOperation::Join`]) with the engine's formula on the encoding.
pub fn engine_crosscheck(
    m: &MeasureTable,
    op: CrossOperation,
    others: &[MeasureTable],
    opts: &CheckOptions,
) -> Result<CrosscheckReport, MeasureError> {
    let alg = m.algebra();
    if alg.atom_count() > CROSSCHECK_MAX_ATOMS {
        return Err(MeasureError::TooLarge(format!(
            "engine cross-checks support at most {CROSSCHECK_MAX_ATOMS} atoms, got {}",
            alg.atom_count()
        )));
    }
    let bound = alg.atom_count().max(2);
    let enc = MeasureEncoding::new(alg.clone(), Variant::Part, bound, None)?;
    let space = enc.space();
    let mut family: Vec<MeasureTable> = vec![m.clone()];
    family.extend(others.iter().cloned());

    let (closed, outcome) = match op {
        CrossOperation::Overline => {
            let closed = overline_outer(m)?;
            (closed, space.monad_formula_overline(&enc.encode(m)?, None)?)
        }
        CrossOperation::Underline => {
            let closed = underline_inner(m)?;
            (closed, space.monad_formula_underline(&enc.encode(m)?)?)
        }
        CrossOperation::ReflectLax => {
            let closed = rl_general(m)?;
            let general = m.clone().with_kind(MeasureKind::General)?;
            (closed, space.formula_reflect_lax(&enc.encode(&general)?)?)
        }
        CrossOperation::Join => {
            let closed = join_premeasures(&family)?;
            let encoded = family.iter().map(|t| enc.encode(t)).collect::<Result<Vec<_>, _>>()?;
            let pointwise = space.pointwise_join(&encoded)?;
            (closed, space.monad_formula_overline(&pointwise, None)?)
        }
    };
    let engine = enc.decode(&outcome.value)?;
    let engine_kind_ok = match op {
        CrossOperation::Overline | CrossOperation::Underline | CrossOperation::Join => outcome.is_strict,
        CrossOperation::ReflectLax => outcome.has_expected_kind,
    };

    let mut notes = Vec::new();
    let refs: Vec<&MeasureTable> = family.iter().collect();
    let (strictness, sigma_independence) = match MeasureEncoding::required_cap(&refs) {
        None => {
            notes.push("fixpoint checks skipped: values are not all integers".into());
            (None, None)
        }
        Some(cap) => {
            let capped = MeasureEncoding::with_truncation(alg.clone(), enc.truncation().clone(), Some(cap))?;
            let strictness = capped.space().check_strictness_condition(opts)?;
            let lambdas = match op {
                CrossOperation::Overline => vec![capped.encode(m)?],
                _ => Vec::new(),
            };
            let sigma_independence = match capped.space().sigma_independence_check(&lambdas, opts) {
                Ok(r) => Some(r),
                Err(TwoCatError::Hypothesis(msg)) => {
                    notes.push(format!("closure comparison without Σ skipped: {msg}"));
                    None
                }
                Err(e) => return Err(e.into()),
            };
            (Some(strictness), sigma_independence)
        }
    };
    Ok(CrosscheckReport {
        operation: op,
        bound,
        closed_form: closed.entries(),
        engine: engine.entries(),
        equal: closed.same_values(&engine),
        engine_kind_ok,
        strictness,
        sigma_independence,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::super::algebra::SetAlgebra;
    use super::super::table::fixtures::*;
    use super::*;

    fn opts() -> CheckOptions {
        CheckOptions { samples: 4, seed: 0 }
    }

    #[test]
    fn overline_of_mu1_matches() {
        let r = engine_crosscheck(&mu1(), CrossOperation::Overline, &[], &opts()).unwrap();
        assert!(r.equal && r.engine_kind_ok, "{r:?}");
        assert_eq!(r.engine.last().unwrap().1, v(3));
        assert!(r.strictness.as_ref().unwrap().holds(), "{r:?}");
    }

    #[test]
    fn underline_of_mu2_matches() {
        let r = engine_crosscheck(&mu2(), CrossOperation::Underline, &[], &opts()).unwrap();
        assert!(r.equal && r.engine_kind_ok, "{r:?}");
        assert_eq!(r.engine.last().unwrap().1, v(3));
    }

    #[test]
    fn join_and_reflection_match() {
        let r = engine_crosscheck(&delta(0), CrossOperation::Join, &[delta(1)], &opts()).unwrap();
        assert!(r.equal && r.engine_kind_ok, "{r:?}");
        let alg = SetAlgebra::power_set(2);
        let m = MeasureTable::new(alg, vec![v(1), v(2), v(2), v(5)], MeasureKind::General).unwrap();
        let r = engine_crosscheck(&m, CrossOperation::ReflectLax, &[], &opts()).unwrap();
        assert!(r.equal && r.engine_kind_ok, "{r:?}");
    }

    #[test]
    fn counting_closures_are_identities() {
        let c = MeasureTable::counting(SetAlgebra::power_set(3));
        for op in [CrossOperation::Overline, CrossOperation::Underline, CrossOperation::Join] {
            let r = engine_crosscheck(&c, op, &[], &opts()).unwrap();
            assert!(r.equal);
            assert_eq!(r.engine, c.entries());
        }
    }

    #[test]
    fn four_atoms_rejected() {
        let c = MeasureTable::counting(SetAlgebra::power_set(4));
        assert!(matches!(
            engine_crosscheck(&c, CrossOperation::Overline, &[], &opts()),
            Err(MeasureError::TooLarge(_))
        ));
    }
}
