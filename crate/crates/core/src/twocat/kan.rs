//! Left and right extensions of transformations along a strict
//! transformation `ι: F → H`.
//!
//! The right extension in a space of transformations `H → G` is the largest
//! member `ε` with `ε∘ι ≤ τ`; the left extension is the least member with
//! `τ ≤ ε∘ι`. Both start from the objectwise formulas, which bound every
//! candidate componentwise, and are then repaired by the same fixpoint
//! iteration used for the reflections. When a needed adjoint of some `Gf` is
//! missing the space is enumerated instead.

use serde::{Deserialize, Serialize};

use super::closure::{greatest_below, least_above, Constraints};
use super::enumerate::{CandidateMode, CheckOptions};
use super::functor::{PosetTransformation, ValueFunctor};
use super::transformation::{Kind, Space, Transformation};
use super::TwoCatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionMethod {
    Fixpoint,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension<V> {
    pub value: Transformation<V>,
    pub method: ExtensionMethod,
    /// The componentwise formula the construction started from.
    pub objectwise_formula: Transformation<V>,
    /// For lax right and colax left extensions: whether reflecting the
    /// extension in the space of Σ-transformations gives the same result.
    pub reflection_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub in_space: bool,
    pub proper: bool,
    pub objectwise: bool,
    /// `None` when no candidates could be produced.
    pub universal: Option<bool>,
    pub mode: CandidateMode,
    pub candidates_checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperPairReport {
    pub mode: CandidateMode,
    pub checked: usize,
    /// Number of strict inputs for which both strict extensions exist.
    pub both_exist: usize,
    pub left_proper: usize,
    pub right_proper: usize,
    pub agree: bool,
    pub witness: Option<String>,
}

impl<G: ValueFunctor> Space<G> {
    /// `ε∘ι`, where `ε` lives over the codomain of `ι`.
    pub fn restrict(
        &self,
        ext: &Transformation<G::Value>,
        iota: &PosetTransformation,
    ) -> Transformation<G::Value> {
        Transformation::from_raw(
            (0..self.category().object_count())
                .map(|a| {
                    (0..self.source().size(a))
                        .map(|y| ext.value(a, iota.apply(a, y)).clone())
                        .collect()
                })
                .collect(),
        )
    }

    /// `(Ran τ)_A(x) = ⋀{τ_A(y) : ι_A(y) ≥ x}` or
    /// `(Lan τ)_A(x) = ⋁{τ_A(y) : ι_A(y) ≤ x}`.
    pub fn objectwise_extension(
        &self,
        tau: &Transformation<G::Value>,
        iota: &PosetTransformation,
        target: &Space<G>,
        side: Side,
    ) -> Transformation<G::Value> {
        let g = self.target();
        Transformation::from_raw(
            (0..self.category().object_count())
                .map(|a| {
                    let ha = target.source().poset(a);
                    (0..ha.len())
                        .map(|x| {
                            let ys = (0..self.source().size(a)).filter(|&y| match side {
                                Side::Right => ha.leq(x, iota.apply(a, y)),
                                Side::Left => ha.leq(iota.apply(a, y), x),
                            });
                            match side {
                                Side::Right => ys.fold(g.top(a), |acc, y| g.meet(a, &acc, tau.value(a, y))),
                                Side::Left => ys.fold(g.bottom(a), |acc, y| g.join(a, &acc, tau.value(a, y))),
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    fn check_target(&self, target: &Space<G>) -> Result<(), TwoCatError> {
        if **self.category() != **target.category() || self.sigma() != target.sigma() {
            return Err(TwoCatError::Shape(
                "extension spaces must share the category and Σ".into(),
            ));
        }
        Ok(())
    }

    fn fixpoint_extension(
        &self,
        start: &Transformation<G::Value>,
        target: &Space<G>,
        side: Side,
        kind: Kind,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        if !target.target().supports_fixpoints() {
            return Err(TwoCatError::BackendUnsupported(
                "fixpoint constructions need an enumerable value backend",
            ));
        }
        let c = Constraints::of_kind(kind, target.sigma(), target.category());
        let table = start.components().to_vec();
        match side {
            Side::Right => greatest_below(target.source(), &**target.target(), table, &c),
            Side::Left => least_above(target.source(), &**target.target(), table, &c),
        }
        .map(Transformation::from_raw)
    }

    fn on_correct_side(
        &self,
        restricted: &Transformation<G::Value>,
        tau: &Transformation<G::Value>,
        side: Side,
    ) -> bool {
        match side {
            Side::Right => self.leq(restricted, tau),
            Side::Left => self.leq(tau, restricted),
        }
    }

    fn enumerated_extension(
        &self,
        tau: &Transformation<G::Value>,
        iota: &PosetTransformation,
        target: &Space<G>,
        side: Side,
        kind: Kind,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        let all = target.enumerate_kind(kind)?;
        let admissible: Vec<_> = all
            .into_iter()
            .filter(|c| self.on_correct_side(&self.restrict(c, iota), tau, side))
            .collect();
        let best = admissible.iter().find(|m| {
            admissible.iter().all(|c| match side {
                Side::Right => target.leq(c, m),
                Side::Left => target.leq(m, c),
            })
        });
        match best {
            Some(b) => Ok(b.clone()),
            None if admissible.is_empty() => Err(TwoCatError::Nonexistence(format!(
                "no {kind} transformation restricts to the {} of τ (exhaustive)",
                if side == Side::Right { "lower side" } else { "upper side" }
            ))),
            None => Err(TwoCatError::Nonexistence(format!(
                "{} admissible {kind} transformations but no {} one (exhaustive)",
                admissible.len(),
                if side == Side::Right { "largest" } else { "least" }
            ))),
        }
    }

    /// Extends `tau` (a transformation in this space of the given kind) along
    /// `iota` into `target`, which must be the space over the codomain of ι.
    pub fn kan_extend(
        &self,
        tau: &Transformation<G::Value>,
        iota: &PosetTransformation,
        target: &Space<G>,
        side: Side,
        kind: Kind,
    ) -> Result<Extension<G::Value>, TwoCatError> {
        self.check_target(target)?;
        self.require_kind(tau, kind)?;
        let objectwise_formula = self.objectwise_extension(tau, iota, target, side);
        let (value, method) = match self.fixpoint_extension(&objectwise_formula, target, side, kind) {
            Ok(v) => (v, ExtensionMethod::Fixpoint),
            Err(TwoCatError::Hypothesis(_)) | Err(TwoCatError::BackendUnsupported(_)) => (
                self.enumerated_extension(tau, iota, target, side, kind)?,
                ExtensionMethod::Enumeration,
            ),
            Err(e) => return Err(e),
        };
        let reflection_agrees = match (side, kind) {
            (Side::Right, Kind::Lax) | (Side::Left, Kind::Colax) => self
                .fixpoint_extension(&objectwise_formula, target, side, Kind::General)
                .and_then(|general| match side {
                    Side::Right => target.reflect_lax(&general),
                    Side::Left => target.coreflect_colax(&general),
                })
                .ok()
                .map(|r| r == value),
            _ => None,
        };
        Ok(Extension {
            value,
            method,
            objectwise_formula,
            reflection_agrees,
        })
    }

    /// Checks properness, objectwiseness and the universal property of `ext`.
    #[allow(clippy::too_many_arguments)]
    pub fn check_extension(
        &self,
        ext: &Transformation<G::Value>,
        tau: &Transformation<G::Value>,
        iota: &PosetTransformation,
        target: &Space<G>,
        side: Side,
        kind: Kind,
        opts: &CheckOptions,
    ) -> Result<ExtensionReport, TwoCatError> {
        self.check_target(target)?;
        let restricted = self.restrict(ext, iota);
        let formula = self.objectwise_extension(tau, iota, target, side);
        let in_space = target.is_kind(ext, kind);
        let proper = restricted == *tau;
        let objectwise = *ext == formula;
        let mut witness = None;
        if !self.on_correct_side(&restricted, tau, side) {
            witness = Some(format!("ε∘ι = {{{}}} is on the wrong side of τ", self.render(&restricted)));
        }
        let candidates = target.candidates(kind, opts)?;
        let items: Vec<Transformation<G::Value>> = match candidates.mode {
            CandidateMode::Exhaustive => candidates
                .items
                .into_iter()
                .filter(|c| self.on_correct_side(&self.restrict(c, iota), tau, side))
                .collect(),
            CandidateMode::Sampled => candidates
                .items
                .into_iter()
                .filter_map(|c| {
                    let squeezed = match side {
                        Side::Right => target.pointwise_meet(&[c, formula.clone()]).ok()?,
                        Side::Left => target.pointwise_join(&[c, formula.clone()]).ok()?,
                    };
                    match side {
                        Side::Right => target.project_below(&squeezed, kind).ok(),
                        Side::Left => target.project_above(&squeezed, kind).ok(),
                    }
                })
                .collect(),
            CandidateMode::Skipped => Vec::new(),
        };
        if witness.is_none() {
            if let Some(bad) = items.iter().find(|c| match side {
                Side::Right => !target.leq(c, ext),
                Side::Left => !target.leq(ext, c),
            }) {
                witness = Some(format!(
                    "candidate {{{}}} is not on the correct side of the extension",
                    target.render(bad)
                ));
            }
        }
        let universal = match candidates.mode {
            CandidateMode::Skipped => None,
            _ => Some(in_space && witness.is_none()),
        };
        Ok(ExtensionReport {
            in_space,
            proper,
            objectwise,
            universal,
            mode: candidates.mode,
            candidates_checked: items.len(),
            witness,
        })
    }

    /// For every strict input whose strict left and right extensions both
    /// exist, properness of one must coincide with properness of the other.
    pub fn proper_pair_check(
        &self,
        iota: &PosetTransformation,
        target: &Space<G>,
        opts: &CheckOptions,
    ) -> Result<ProperPairReport, TwoCatError> {
        let inputs = self.candidates(Kind::Strict, opts)?;
        let mut report = ProperPairReport {
            mode: inputs.mode,
            checked: inputs.items.len(),
            both_exist: 0,
            left_proper: 0,
            right_proper: 0,
            agree: true,
            witness: None,
        };
        for tau in &inputs.items {
            let left = self.kan_extend(tau, iota, target, Side::Left, Kind::Strict);
            let right = self.kan_extend(tau, iota, target, Side::Right, Kind::Strict);
            let (Ok(left), Ok(right)) = (left, right) else { continue };
            report.both_exist += 1;
            let lp = self.restrict(&left.value, iota) == *tau;
            let rp = self.restrict(&right.value, iota) == *tau;
            report.left_proper += lp as usize;
            report.right_proper += rp as usize;
            if lp != rp && report.witness.is_none() {
                report.agree = false;
                report.witness = Some(format!(
                    "τ = {{{}}}: left proper {lp}, right proper {rp}",
                    self.render(tau)
                ));
            }
        }
        Ok(report)
    }
}
