//! The closed formula for the closure of a lax transformation, its dual for
//! the kernel of a colax one, and checks of the hypotheses under which the
//! formula is known to produce strict transformations.

use serde::Serialize;

use super::category::Finite2Category;
use super::coend::{build_coend, CoendVariant};
use super::functor::{PosetFunctor, ValueFunctor};
use super::transformation::{Kind, Space, Transformation};
use super::TwoCatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaOutcome<V> {
    pub value: Transformation<V>,
    /// Colax for the closure formula, lax for the kernel formula.
    pub has_expected_kind: bool,
    pub is_strict: bool,
    /// Comparison with the fixpoint construction, when that was available and
    /// the formula value has the expected kind.
    pub fixpoint_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadHypothesisReport {
    /// Directed joins in a finite poset are attained, so every monotone `Gf`
    /// preserves them.
    pub g1_holds: bool,
    pub f1_holds: bool,
    pub f1_witness: Option<String>,
    pub f2_holds: bool,
    pub f2_witness: Option<String>,
    /// False when the enumeration budget ran out before every family up to
    /// `arity_bound` was examined.
    pub f2_complete: bool,
    pub arity_bound: Option<usize>,
}

impl MonadHypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.g1_holds && self.f1_holds && self.f2_holds && self.f2_complete
    }
}

/// Families examined by the wide-pullback check before giving up.
const WIDE_PULLBACK_BUDGET: usize = 20_000;

pub fn check_monad_hypotheses(
    f: &PosetFunctor,
    arity_bound: Option<usize>,
) -> Result<MonadHypothesisReport, TwoCatError> {
    let (f1_holds, f1_witness) = check_f1(f)?;
    let (f2_holds, f2_complete, f2_witness) = check_f2(f, arity_bound);
    Ok(MonadHypothesisReport {
        g1_holds: true,
        f1_holds,
        f1_witness,
        f2_holds,
        f2_witness,
        f2_complete,
        arity_bound,
    })
}

/// Every pair `(g, y)` with `Fg(y) ≤ x` lies below a pair with `Fg(y) = x`.
fn check_f1(f: &PosetFunctor) -> Result<(bool, Option<String>), TwoCatError> {
    let cat = f.category();
    for a in 0..cat.object_count() {
        let k = build_coend(f, a, CoendVariant::Sharp)?;
        let counit: Vec<usize> = (0..k.len()).map(|i| k.counit(f, i)).collect();
        let fa = f.poset(a);
        for x in 0..fa.len() {
            for d in (0..k.len()).filter(|&d| fa.leq(counit[d], x)) {
                if !(0..k.len()).any(|e| counit[e] == x && k.leq(d, e)) {
                    let (g, y) = k.elements[d];
                    return Ok((
                        false,
                        Some(format!(
                            "at {} = {}: ({}, {}) has no map into a pair with image {}",
                            cat.object_name(a),
                            fa.label(x),
                            cat.morphism(g).name,
                            f.poset(cat.morphism(g).source).label(y),
                            fa.label(x)
                        )),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// Cones `(P, p_1..p_n)` over the cospan family `fs` into one object.
fn cones(cat: &Finite2Category, fs: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for p in 0..cat.object_count() {
        let mut current = Vec::new();
        collect_cones(cat, fs, p, None, &mut current, &mut out);
    }
    out
}

fn collect_cones(
    cat: &Finite2Category,
    fs: &[usize],
    p: usize,
    common: Option<usize>,
    current: &mut Vec<usize>,
    out: &mut Vec<(usize, Vec<usize>)>,
) {
    let i = current.len();
    if i == fs.len() {
        out.push((p, current.clone()));
        return;
    }
    let ai = cat.morphism(fs[i]).source;
    for &leg in cat.hom(p, ai) {
        let c = cat.compose(fs[i], leg).expect("composable");
        if common.is_some_and(|k| k != c) {
            continue;
        }
        current.push(leg);
        collect_cones(cat, fs, p, Some(c), current, out);
        current.pop();
    }
}

fn is_limit_cone(cat: &Finite2Category, cone: &(usize, Vec<usize>), all: &[(usize, Vec<usize>)]) -> bool {
    let (p, legs) = cone;
    all.iter().all(|(q, qlegs)| {
        cat.hom(*q, *p)
            .iter()
            .filter(|&&u| {
                legs.iter()
                    .zip(qlegs)
                    .all(|(&leg, &ql)| cat.compose(leg, u) == Some(ql))
            })
            .count()
            == 1
    })
}

/// Whether `F` sends the limit cone to a limit in posets.
fn preserves_limit(f: &PosetFunctor, fs: &[usize], cone: &(usize, Vec<usize>)) -> bool {
    let cat = f.category();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for &fi in fs {
        let src = cat.morphism(fi).source;
        tuples = tuples
            .into_iter()
            .flat_map(|t| (0..f.size(src)).map(move |y| {
                let mut t = t.clone();
                t.push(y);
                t
            }))
            .filter(|t| f.apply(fs[0], t[0]) == f.apply(fi, *t.last().unwrap()))
            .collect();
    }
    let (p, legs) = cone;
    let image: Vec<Vec<usize>> = (0..f.size(*p))
        .map(|y| legs.iter().map(|&l| f.apply(l, y)).collect())
        .collect();
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != image.len() || sorted.len() != tuples.len() {
        return false;
    }
    let fp = f.poset(*p);
    (0..image.len()).all(|y| {
        (0..image.len()).all(|z| {
            let componentwise = legs.iter().enumerate().all(|(i, &l)| {
                f.poset(cat.morphism(l).target).leq(image[y][i], image[z][i])
            });
            fp.leq(y, z) == componentwise
        })
    })
}

/// Advances a non-decreasing index sequence over `0..m`.
fn next_multiset(idx: &mut [usize], m: usize) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] + 1 < m {
            idx[k] += 1;
            let v = idx[k];
            idx[k + 1..].iter_mut().for_each(|j| *j = v);
            return true;
        }
    }
    false
}

fn check_f2(f: &PosetFunctor, arity_bound: Option<usize>) -> (bool, bool, Option<String>) {
    let cat = f.category();
    let mut budget = WIDE_PULLBACK_BUDGET;
    for a in 0..cat.object_count() {
        let into = cat.arrows_into(a);
        let bound = arity_bound.unwrap_or(into.len());
        for n in 2..=bound {
            let mut idx = vec![0usize; n];
            loop {
                if budget == 0 {
                    return (true, false, None);
                }
                budget -= 1;
                let fs: Vec<usize> = idx.iter().map(|&i| into[i]).collect();
                let all = cones(cat, &fs);
                let names = || {
                    fs.iter()
                        .map(|&g| cat.morphism(g).name.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                match all.iter().find(|c| is_limit_cone(cat, c, &all)) {
                    None => {
                        return (false, true, Some(format!("no wide pullback of ({})", names())));
                    }
                    Some(cone) => {
                        if !preserves_limit(f, &fs, cone) {
                            return (
                                false,
                                true,
                                Some(format!("F does not preserve the wide pullback of ({})", names())),
                            );
                        }
                    }
                }
                if !next_multiset(&mut idx, into.len()) {
                    break;
                }
            }
        }
    }
    (true, true, None)
}

impl<G: ValueFunctor> Space<G> {
    /// `⋁{ Gg(λ_C(y)) : g: C → A, y ∈ FC, Fg(y) ≤ x }` at every `(A, x)`.
    pub fn formula_overline_value(&self, l: &Transformation<G::Value>) -> Transformation<G::Value> {
        let (f, g, cat) = (self.source(), self.target(), self.category());
        let comps = (0..cat.object_count())
            .map(|a| {
                let fa = f.poset(a);
                (0..fa.len())
                    .map(|x| {
                        let mut acc = g.bottom(a);
                        for &m in cat.arrows_into(a) {
                            let c = cat.morphism(m).source;
                            for y in 0..f.size(c) {
                                if fa.leq(f.apply(m, y), x) {
                                    acc = g.join(a, &acc, &g.apply(m, l.value(c, y)));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Transformation::from_raw(comps)
    }

    /// `⋀{ Gg(σ_C(y)) : g: C → A, y ∈ FC, Fg(y) ≥ x }` at every `(A, x)`.
    pub fn formula_underline_value(&self, s: &Transformation<G::Value>) -> Transformation<G::Value> {
        let (f, g, cat) = (self.source(), self.target(), self.category());
        let comps = (0..cat.object_count())
            .map(|a| {
                let fa = f.poset(a);
                (0..fa.len())
                    .map(|x| {
                        let mut acc = g.top(a);
                        for &m in cat.arrows_into(a) {
                            let c = cat.morphism(m).source;
                            for y in 0..f.size(c) {
                                if fa.leq(x, f.apply(m, y)) {
                                    acc = g.meet(a, &acc, &g.apply(m, s.value(c, y)));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Transformation::from_raw(comps)
    }

    /// Evaluates the closure formula on a lax transformation. When the value
    /// is colax it must coincide with the fixpoint closure; when `hypotheses`
    /// all hold it must be strict. Either violation is reported as an error.
    pub fn monad_formula_overline(
        &self,
        l: &Transformation<G::Value>,
        hypotheses: Option<&MonadHypothesisReport>,
    ) -> Result<FormulaOutcome<G::Value>, TwoCatError> {
        self.require_kind(l, Kind::Lax)?;
        let value = self.formula_overline_value(l);
        let report = self.classify(&value);
        let fixpoint_agrees = if report.is_colax && self.target().supports_fixpoints() {
            let closure = self.closure_overline(l)?;
            if closure != value {
                return Err(TwoCatError::Hypothesis(format!(
                    "colax formula value {{{}}} differs from the closure {{{}}}",
                    self.render(&value),
                    self.render(&closure)
                )));
            }
            Some(true)
        } else {
            None
        };
        if hypotheses.is_some_and(|h| h.all_hold()) && !report.is_strict {
            return Err(TwoCatError::Hypothesis(format!(
                "formula value {{{}}} is not strict although all hypotheses hold",
                self.render(&value)
            )));
        }
        Ok(FormulaOutcome {
            value,
            has_expected_kind: report.is_colax,
            is_strict: report.is_strict,
            fixpoint_agrees,
        })
    }

    /// Dual of [`Self::monad_formula_overline`] for colax transformations.
    pub fn monad_formula_underline(
        &self,
        s: &Transformation<G::Value>,
    ) -> Result<FormulaOutcome<G::Value>, TwoCatError> {
        self.require_kind(s, Kind::Colax)?;
        self.formula_reflect_lax(s)
    }

    /// The kernel formula applied to an arbitrary Σ-transformation. When the
    /// value is lax it must coincide with the lax reflection.
    pub fn formula_reflect_lax(
        &self,
        s: &Transformation<G::Value>,
    ) -> Result<FormulaOutcome<G::Value>, TwoCatError> {
        let value = self.formula_underline_value(s);
        let report = self.classify(&value);
        let fixpoint_agrees = if report.is_lax && self.target().supports_fixpoints() {
            let r = self.reflect_lax(s)?;
            if r != value {
                return Err(TwoCatError::Hypothesis(format!(
                    "lax formula value {{{}}} differs from the reflection {{{}}}",
                    self.render(&value),
                    self.render(&r)
                )));
            }
            Some(true)
        } else {
            None
        };
        Ok(FormulaOutcome {
            value,
            has_expected_kind: report.is_lax,
            is_strict: report.is_strict,
            fixpoint_agrees,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::twocat::{LatticeFunctor, SigmaClass};
    use std::sync::Arc;

    #[test]
    fn single_object_formula_is_identity() {
        let cat = Arc::new(Finite2Category::single_object("*"));
        let f = Arc::new(chain_functor(&cat, 3));
        let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 3)).unwrap());
        let s = Space::new(f, g, SigmaClass::empty(&cat)).unwrap();
        for l in s.enumerate_kind(Kind::Lax).unwrap() {
            let out = s.monad_formula_overline(&l, None).unwrap();
            assert_eq!(out.value, l);
        }
    }

    /// In T0 the arrow f is monic, so every finite family of arrows into an
    /// object has a wide pullback and F preserves it.
    #[test]
    fn t0_hypotheses() {
        let s = t0_space();
        let h = check_monad_hypotheses(s.source(), None).unwrap();
        assert!(h.g1_holds && h.f1_holds && h.f2_holds && h.f2_complete);
        for l in s.enumerate_kind(Kind::Lax).unwrap() {
            let out = s.monad_formula_overline(&l, Some(&h)).unwrap();
            assert!(out.is_strict);
            assert_eq!(out.fixpoint_agrees, Some(true));
        }
    }

    /// Two parallel arrows f, g: A → B have no pullback in a category with no
    /// other arrows into A than the identity (f∘id ≠ g∘id).
    #[test]
    fn missing_pullback_detected() {
        let cat = Arc::new(
            Finite2Category::new(
                vec!["A".into(), "B".into()],
                vec![("f".into(), 0, 1), ("g".into(), 0, 1)],
                &[],
                &[],
            )
            .unwrap(),
        );
        let f = chain_functor(&cat, 2);
        let h = check_monad_hypotheses(&f, None).unwrap();
        assert!(!h.f2_holds);
        assert!(h.f2_witness.unwrap().contains("f, g"));
    }

    #[test]
    fn kernel_formula_matches_reflection_when_lax() {
        let s = t0_space();
        for t in s.enumerate_kind(Kind::General).unwrap() {
            let out = s.formula_reflect_lax(&t).unwrap();
            if out.has_expected_kind {
                assert_eq!(out.fixpoint_agrees, Some(true));
            }
        }
    }
}
