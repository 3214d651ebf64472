//! Reflections onto lax and colax transformations, the closures built from
//! them, and the strictness condition.
//!
//! All constructions are monotone fixpoint iterations. A family `X` is repaired
//! until it satisfies the selected constraints:
//!
//! * lax direction at `f: A → B`: `X_B(Ff x) ≤ Gf(X_A x)`
//! * colax direction at `f`: `Gf(X_A x) ≤ X_B(Ff x)`
//!
//! Descending iteration lowers values and yields the largest solution below the
//! start; ascending iteration yields the least solution above it. A constraint
//! that would have to move the "wrong" side is handled through the adjoint of
//! `Gf`, which exists only when `Gf` preserves the corresponding joins or meets.

use std::collections::VecDeque;

use serde::Serialize;

use super::category::{Finite2Category, SigmaClass};
use super::enumerate::{CandidateMode, CheckOptions};
use super::functor::{PosetFunctor, ValueFunctor};
use super::transformation::{Kind, Space, Table, Transformation};
use super::TwoCatError;

/// Which morphisms carry which inequality.
#[derive(Debug, Clone)]
pub(crate) struct Constraints {
    pub lax: Vec<bool>,
    pub colax: Vec<bool>,
}

impl Constraints {
    pub fn of_kind(kind: Kind, sigma: &SigmaClass, cat: &Finite2Category) -> Self {
        let sig: Vec<bool> = (0..cat.morphism_count()).map(|f| sigma.contains(f)).collect();
        let all = vec![true; cat.morphism_count()];
        match kind {
            Kind::General => Constraints {
                lax: sig.clone(),
                colax: sig,
            },
            Kind::Lax => Constraints {
                lax: all,
                colax: sig,
            },
            Kind::Colax => Constraints {
                lax: sig,
                colax: all,
            },
            Kind::Strict => Constraints {
                lax: all.clone(),
                colax: all,
            },
        }
    }
}

fn morphism_name(cat: &Finite2Category, f: usize) -> String {
    cat.morphism(f).name.clone()
}

/// Direction of a fixpoint iteration.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Down,
    Up,
}

/// Chaotic iteration with a worklist: whenever the value at `(a, y)` moves,
/// only the constraints that read it are re-evaluated.
fn propagate<G: ValueFunctor>(
    source: &PosetFunctor,
    target: &G,
    mut x: Table<G>,
    c: &Constraints,
    dir: Direction,
) -> Result<Table<G>, TwoCatError> {
    let cat = source.category().clone();
    let n = cat.object_count();
    // elements that must follow (a, y) under monotonicity
    let followers: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| {
            let p = source.poset(a);
            (0..p.len())
                .map(|y| {
                    (0..p.len())
                        .filter(|&z| z != y && if dir == Direction::Down { p.leq(z, y) } else { p.leq(y, z) })
                        .collect()
                })
                .collect()
        })
        .collect();
    // forward constraints push values along Gf, backward ones pull through an adjoint
    let (forward, backward) = match dir {
        Direction::Down => (&c.lax, &c.colax),
        Direction::Up => (&c.colax, &c.lax),
    };
    let active = |f: usize| !cat.is_identity(f);
    let mut outgoing = vec![Vec::new(); n];
    let mut incoming = vec![Vec::new(); n];
    for f in (0..cat.morphism_count()).filter(|&f| active(f)) {
        let m = cat.morphism(f);
        if forward[f] {
            outgoing[m.source].push(f);
        }
        if backward[f] {
            incoming[m.target].push(f);
        }
    }
    let preimages: Vec<Vec<Vec<usize>>> = (0..cat.morphism_count())
        .map(|f| {
            let m = cat.morphism(f);
            let mut pre = vec![Vec::new(); source.size(m.target)];
            if backward[f] && active(f) {
                for e in 0..source.size(m.source) {
                    pre[source.apply(f, e)].push(e);
                }
            }
            pre
        })
        .collect();
    let combine = |a: usize, p: &G::Value, q: &G::Value| match dir {
        Direction::Down => target.meet(a, p, q),
        Direction::Up => target.join(a, p, q),
    };
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued: Vec<Vec<bool>> = x.iter().map(|comp| vec![true; comp.len()]).collect();
    for (a, comp) in x.iter().enumerate() {
        queue.extend((0..comp.len()).map(|y| (a, y)));
    }
    let update = |x: &mut Table<G>,
                  queue: &mut VecDeque<(usize, usize)>,
                  queued: &mut Vec<Vec<bool>>,
                  a: usize,
                  y: usize,
                  bound: &G::Value| {
        let v = combine(a, &x[a][y], bound);
        if v != x[a][y] {
            x[a][y] = v;
            if !queued[a][y] {
                queued[a][y] = true;
                queue.push_back((a, y));
            }
        }
    };
    while let Some((a, y)) = queue.pop_front() {
        queued[a][y] = false;
        let here = x[a][y].clone();
        for &z in &followers[a][y] {
            update(&mut x, &mut queue, &mut queued, a, z, &here);
        }
        for &f in &outgoing[a] {
            let b = cat.morphism(f).target;
            let bound = target.apply(f, &here);
            update(&mut x, &mut queue, &mut queued, b, source.apply(f, y), &bound);
        }
        for &f in &incoming[a] {
            let s = cat.morphism(f).source;
            if preimages[f][y].is_empty() {
                continue;
            }
            let adjoint = match dir {
                Direction::Down => target.right_adjoint(f, &here)?,
                Direction::Up => target.left_adjoint(f, &here)?,
            };
            let bound = adjoint.ok_or_else(|| {
                TwoCatError::Nonexistence(format!(
                    "no value at {} satisfies G({})(-) {} {}",
                    cat.object_name(s),
                    morphism_name(&cat, f),
                    if dir == Direction::Down { "≤" } else { "≥" },
                    target.render(a, &here)
                ))
            })?;
            for &e in &preimages[f][y] {
                update(&mut x, &mut queue, &mut queued, s, e, &bound);
            }
        }
    }
    Ok(x)
}

/// Largest monotone family below `start` satisfying `c`.
pub(crate) fn greatest_below<G: ValueFunctor>(
    source: &PosetFunctor,
    target: &G,
    start: Table<G>,
    c: &Constraints,
) -> Result<Table<G>, TwoCatError> {
    propagate(source, target, start, c, Direction::Down)
}

/// Least monotone family above `start` satisfying `c`.
pub(crate) fn least_above<G: ValueFunctor>(
    source: &PosetFunctor,
    target: &G,
    start: Table<G>,
    c: &Constraints,
) -> Result<Table<G>, TwoCatError> {
    propagate(source, target, start, c, Direction::Up)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub mode: CandidateMode,
    pub lax_checked: usize,
    pub colax_checked: usize,
    /// The closure of every checked lax transformation is strict.
    pub condition_lax: bool,
    /// The kernel of every checked colax transformation is strict.
    pub condition_colax: bool,
    pub witness_lax: Option<String>,
    pub witness_colax: Option<String>,
}

impl StrictnessReport {
    pub fn agree(&self) -> bool {
        self.condition_lax == self.condition_colax
    }

    pub fn holds(&self) -> bool {
        self.condition_lax && self.condition_colax
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaIndependenceReport {
    pub precondition: StrictnessReport,
    pub checked: usize,
    pub equal: bool,
    pub witness: Option<String>,
}

impl<G: ValueFunctor> Space<G> {
    fn require_fixpoints(&self) -> Result<(), TwoCatError> {
        if self.target().supports_fixpoints() {
            Ok(())
        } else {
            Err(TwoCatError::BackendUnsupported(
                "fixpoint constructions need an enumerable value backend",
            ))
        }
    }

    /// Largest transformation of `kind` below the family `t`.
    pub fn project_below(
        &self,
        t: &Transformation<G::Value>,
        kind: Kind,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.require_fixpoints()?;
        let c = Constraints::of_kind(kind, self.sigma(), self.category());
        greatest_below(self.source(), &**self.target(), t.components().to_vec(), &c)
            .map(Transformation::from_raw)
    }

    /// Least transformation of `kind` above the family `t`.
    pub fn project_above(
        &self,
        t: &Transformation<G::Value>,
        kind: Kind,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.require_fixpoints()?;
        let c = Constraints::of_kind(kind, self.sigma(), self.category());
        least_above(self.source(), &**self.target(), t.components().to_vec(), &c)
            .map(Transformation::from_raw)
    }

    /// The largest lax Σ-transformation below `t`.
    pub fn reflect_lax(
        &self,
        t: &Transformation<G::Value>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.project_below(t, Kind::Lax)
    }

    /// The least colax Σ-transformation above `t`.
    pub fn coreflect_colax(
        &self,
        t: &Transformation<G::Value>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.project_above(t, Kind::Colax)
    }

    /// The least colax Σ-transformation above the lax transformation `l`.
    pub fn closure_overline(
        &self,
        l: &Transformation<G::Value>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.require_kind(l, Kind::Lax)?;
        self.coreflect_colax(l)
    }

    /// The largest lax Σ-transformation below the colax transformation `s`.
    pub fn closure_underline(
        &self,
        s: &Transformation<G::Value>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.require_kind(s, Kind::Colax)?;
        self.reflect_lax(s)
    }

    /// Checks that the closure of every lax and the kernel of every colax
    /// Σ-transformation is strict, exhaustively or on samples.
    pub fn check_strictness_condition(
        &self,
        opts: &CheckOptions,
    ) -> Result<StrictnessReport, TwoCatError> {
        self.require_fixpoints()?;
        let lax = self.candidates(Kind::Lax, opts)?;
        let colax = self.candidates(Kind::Colax, opts)?;
        let mut witness_lax = None;
        for l in &lax.items {
            let o = self.coreflect_colax(l)?;
            if let Some(w) = self.classify(&o).lax_witness {
                witness_lax = Some(format!("closure of {{{}}} fails at {w}", self.render(l)));
                break;
            }
        }
        let mut witness_colax = None;
        for s in &colax.items {
            let u = self.reflect_lax(s)?;
            if let Some(w) = self.classify(&u).colax_witness {
                witness_colax = Some(format!("kernel of {{{}}} fails at {w}", self.render(s)));
                break;
            }
        }
        Ok(StrictnessReport {
            mode: lax.mode,
            lax_checked: lax.items.len(),
            colax_checked: colax.items.len(),
            condition_lax: witness_lax.is_none(),
            condition_colax: witness_colax.is_none(),
            witness_lax,
            witness_colax,
        })
    }

    /// The least strict upper bound of a family of strict transformations,
    /// computed as the closure of their pointwise join.
    pub fn join_strict(
        &self,
        family: &[Transformation<G::Value>],
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        for t in family {
            self.require_kind(t, Kind::Strict)?;
        }
        let j = self.pointwise_join(family)?;
        let out = self.closure_overline(&j)?;
        self.require_kind(&out, Kind::Strict)?;
        Ok(out)
    }

    /// Compares the closure computed with Σ against the closure computed with
    /// the empty class, for every given lax transformation. The strictness
    /// condition for the empty class is checked first.
    pub fn sigma_independence_check(
        &self,
        lambdas: &[Transformation<G::Value>],
        opts: &CheckOptions,
    ) -> Result<SigmaIndependenceReport, TwoCatError> {
        let empty = self.with_sigma(SigmaClass::empty(self.category()))?;
        let precondition = empty.check_strictness_condition(opts)?;
        if !precondition.holds() {
            return Err(TwoCatError::Hypothesis(
                "strictness condition for the empty class fails".into(),
            ));
        }
        let mut witness = None;
        for l in lambdas {
            let with = self.closure_overline(l)?;
            let without = empty.closure_overline(l)?;
            if with != without {
                witness = Some(format!(
                    "λ = {{{}}}: {{{}}} vs {{{}}}",
                    self.render(l),
                    self.render(&with),
                    self.render(&without)
                ));
                break;
            }
        }
        Ok(SigmaIndependenceReport {
            precondition,
            checked: lambdas.len(),
            equal: witness.is_none(),
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::order::FinitePoset;
    use crate::twocat::{Finite2Category, LatticeFunctor, PosetFunctor};
    use std::sync::Arc;

    /// Largest element of `{c in candidates : c <= bound}` by brute force.
    fn brute_max(s: &LSpace, cands: &[Transformation<usize>], bound: &Transformation<usize>) -> Transformation<usize> {
        let below: Vec<_> = cands.iter().filter(|c| s.leq(c, bound)).collect();
        below
            .iter()
            .find(|m| below.iter().all(|c| s.leq(c, m)))
            .map(|m| (*m).clone())
            .unwrap()
    }

    fn brute_min(s: &LSpace, cands: &[Transformation<usize>], bound: &Transformation<usize>) -> Transformation<usize> {
        let above: Vec<_> = cands.iter().filter(|c| s.leq(bound, c)).collect();
        above
            .iter()
            .find(|m| above.iter().all(|c| s.leq(m, c)))
            .map(|m| (*m).clone())
            .unwrap()
    }

    #[test]
    fn reflect_lax_examples() {
        let s = t0_space();
        let lax = t0(&s, [1, 1], [0, 1]);
        assert_eq!(s.reflect_lax(&lax).unwrap(), lax);
        let t = t0(&s, [0, 0], [0, 1]);
        assert_eq!(s.reflect_lax(&t).unwrap(), t0(&s, [0, 0], [0, 0]));
        assert_eq!(s.reflect_lax(&s.top()).unwrap(), s.top());
        assert!(s.classify(&s.top()).is_strict);
    }

    #[test]
    fn reflections_match_brute_force() {
        let s = t0_space();
        let lax = s.enumerate_kind(Kind::Lax).unwrap();
        let colax = s.enumerate_kind(Kind::Colax).unwrap();
        for t in all_t0(&s) {
            assert_eq!(s.reflect_lax(&t).unwrap(), brute_max(&s, &lax, &t));
            assert_eq!(s.coreflect_colax(&t).unwrap(), brute_min(&s, &colax, &t));
        }
    }

    #[test]
    fn closure_examples() {
        let s = t0_space();
        let id = t0(&s, [0, 1], [0, 1]);
        assert_eq!(s.closure_overline(&id).unwrap(), id);
        let l = t0(&s, [1, 1], [0, 1]);
        assert_eq!(s.closure_overline(&l).unwrap(), t0(&s, [1, 1], [1, 1]));
        let not_lax = t0(&s, [0, 0], [0, 1]);
        assert!(matches!(s.closure_overline(&not_lax), Err(TwoCatError::NotLax(_))));
    }

    #[test]
    fn adjunction_laws_on_t0() {
        let s = t0_space();
        let lax = s.enumerate_kind(Kind::Lax).unwrap();
        let colax = s.enumerate_kind(Kind::Colax).unwrap();
        for t in all_t0(&s) {
            let r = s.reflect_lax(&t).unwrap();
            let c = s.coreflect_colax(&t).unwrap();
            for l in &lax {
                assert_eq!(s.leq(l, &r), s.leq(l, &t));
            }
            for k in &colax {
                assert_eq!(s.leq(&c, k), s.leq(&t, k));
            }
        }
        for l in &lax {
            let o = s.closure_overline(l).unwrap();
            assert!(s.leq(l, &s.closure_underline(&o).unwrap()));
        }
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let s = t0_space();
        let lax = s.enumerate_kind(Kind::Lax).unwrap();
        let monad = |l: &Transformation<usize>| {
            s.closure_underline(&s.closure_overline(l).unwrap()).unwrap()
        };
        for l in &lax {
            let tl = monad(l);
            assert!(s.leq(l, &tl));
            assert_eq!(monad(&tl), tl);
            for l2 in &lax {
                if s.leq(l, l2) {
                    assert!(s.leq(&tl, &monad(l2)));
                }
            }
        }
    }

    #[test]
    fn strictness_condition_on_t0_agrees() {
        let s = t0_space();
        let r = s.check_strictness_condition(&CheckOptions::default()).unwrap();
        assert_eq!(r.mode, CandidateMode::Exhaustive);
        assert!(r.agree());
        assert_eq!(r.lax_checked, 6);
    }

    #[test]
    fn strictness_condition_single_object() {
        let cat = Arc::new(Finite2Category::single_object("*"));
        let f = Arc::new(chain_functor(&cat, 3));
        let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 2)).unwrap());
        let s = Space::new(f, g, SigmaClass::empty(&cat)).unwrap();
        let r = s.check_strictness_condition(&CheckOptions::default()).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn join_strict_examples() {
        let s = t0_space();
        let id = t0(&s, [0, 1], [0, 1]);
        let zero = t0(&s, [0, 0], [0, 0]);
        assert_eq!(s.join_strict(std::slice::from_ref(&id)).unwrap(), id);
        assert_eq!(s.join_strict(&[id.clone(), zero]).unwrap(), id);
    }

    /// Diamond-valued instance where the pointwise join of two strict
    /// transformations is lax but not strict.
    #[test]
    fn join_strict_on_diamond_instance() {
        let cat = t0_category();
        let c2 = Arc::new(FinitePoset::chain(1));
        let d = Arc::new(FinitePoset::diamond());
        let f = Arc::new(PosetFunctor::new(cat.clone(), vec![c2.clone(), c2], vec![vec![0]; 3]).unwrap());
        // G f sends a, b ↦ a and so does not preserve a ∨ b
        let g = Arc::new(
            LatticeFunctor::new(
                PosetFunctor::new(
                    cat.clone(),
                    vec![d.clone(), d],
                    vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![0, 1, 1, 3]],
                )
                .unwrap(),
            )
            .unwrap(),
        );
        let s = Space::new(f, g, SigmaClass::empty(&cat)).unwrap();
        let strict = s.enumerate_kind(Kind::Strict).unwrap();
        let t1 = s.family(vec![vec![1], vec![1]]).unwrap();
        let t2 = s.family(vec![vec![2], vec![1]]).unwrap();
        assert!(strict.contains(&t1) && strict.contains(&t2));
        let pj = s.pointwise_join(&[t1.clone(), t2.clone()]).unwrap();
        assert!(!s.classify(&pj).is_strict);
        let j = s.join_strict(&[t1.clone(), t2.clone()]).unwrap();
        let upper: Vec<_> = strict
            .iter()
            .filter(|u| s.leq(&t1, u) && s.leq(&t2, u))
            .collect();
        assert!(upper.iter().all(|u| s.leq(&j, u)));
        assert!(s.leq(&pj, &j) && j != pj);
    }

    #[test]
    fn sigma_independence_trivial_cases() {
        let s = t0_space();
        let lax = s.enumerate_kind(Kind::Lax).unwrap();
        let r = s.sigma_independence_check(&lax, &CheckOptions::default()).unwrap();
        assert!(r.equal);
        let cat = Arc::new(Finite2Category::single_object("*"));
        let f = Arc::new(chain_functor(&cat, 2));
        let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 3)).unwrap());
        let s = Space::new(f, g, SigmaClass::all(&cat)).unwrap();
        let lax = s.enumerate_kind(Kind::Lax).unwrap();
        assert!(s.sigma_independence_check(&lax, &CheckOptions::default()).unwrap().equal);
    }
}
