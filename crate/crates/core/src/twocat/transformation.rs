//! Transformations, their classification and pointwise lattice operations.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{Finite2Category, SigmaClass};
use super::functor::{PosetFunctor, ValueFunctor};
use super::TwoCatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    General,
    Lax,
    Colax,
    Strict,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::General => "general",
            Kind::Lax => "lax",
            Kind::Colax => "colax",
            Kind::Strict => "strict",
        })
    }
}

/// A morphism `f: A → B` and an element `x ∈ FA` at which a defining
/// (in)equality fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub morphism: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): G(f)τ(x) = {} vs τ(F(f)x) = {}",
            self.morphism, self.element, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KindReport {
    pub is_general: bool,
    pub is_lax: bool,
    pub is_colax: bool,
    pub is_strict: bool,
    pub sigma_witness: Option<Witness>,
    pub lax_witness: Option<Witness>,
    pub colax_witness: Option<Witness>,
}

impl KindReport {
    pub fn is(&self, kind: Kind) -> bool {
        match kind {
            Kind::General => self.is_general,
            Kind::Lax => self.is_lax,
            Kind::Colax => self.is_colax,
            Kind::Strict => self.is_strict,
        }
    }
}

/// Component tables `τ_A: FA → GA`, indexed by object and element of `FA`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation<V> {
    components: Vec<Vec<V>>,
}

impl<V> Transformation<V> {
    pub(crate) fn from_raw(components: Vec<Vec<V>>) -> Self {
        Transformation { components }
    }

    pub fn component(&self, a: usize) -> &[V] {
        &self.components[a]
    }

    pub fn components(&self) -> &[Vec<V>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Vec<V>> {
        self.components
    }

    #[inline]
    pub fn value(&self, a: usize, x: usize) -> &V {
        &self.components[a][x]
    }
}

/// The data shared by all transformations `F → G` checked against `Σ`.
#[derive(Debug)]
pub struct Space<G: ValueFunctor> {
    source: Arc<PosetFunctor>,
    target: Arc<G>,
    sigma: SigmaClass,
}

impl<G: ValueFunctor> Clone for Space<G> {
    fn clone(&self) -> Self {
        Space {
            source: self.source.clone(),
            target: self.target.clone(),
            sigma: self.sigma.clone(),
        }
    }
}

pub(crate) type Table<G> = Vec<Vec<<G as ValueFunctor>::Value>>;

impl<G: ValueFunctor> Space<G> {
    pub fn new(
        source: Arc<PosetFunctor>,
        target: Arc<G>,
        sigma: SigmaClass,
    ) -> Result<Self, TwoCatError> {
        if **source.category() != **target.category() {
            return Err(TwoCatError::Shape("F and G live on different categories".into()));
        }
        if sigma.universe() != source.category().morphism_count() {
            return Err(TwoCatError::Shape("Σ does not match the category".into()));
        }
        Ok(Space {
            source,
            target,
            sigma,
        })
    }

    pub fn with_sigma(&self, sigma: SigmaClass) -> Result<Self, TwoCatError> {
        Space::new(self.source.clone(), self.target.clone(), sigma)
    }

    /// The same target and Σ over a different source functor.
    pub fn with_source(&self, source: Arc<PosetFunctor>) -> Result<Self, TwoCatError> {
        Space::new(source, self.target.clone(), self.sigma.clone())
    }

    pub fn source(&self) -> &Arc<PosetFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<G> {
        &self.target
    }

    pub fn sigma(&self) -> &SigmaClass {
        &self.sigma
    }

    pub fn category(&self) -> &Arc<Finite2Category> {
        self.source.category()
    }

    fn element_label(&self, a: usize, x: usize) -> String {
        format!(
            "{}@{}",
            self.source.poset(a).label(x),
            self.category().object_name(a)
        )
    }

    /// Validates shape, membership and monotonicity; no naturality is required.
    pub fn family(&self, components: Table<G>) -> Result<Transformation<G::Value>, TwoCatError> {
        let cat = self.category();
        if components.len() != cat.object_count() {
            return Err(TwoCatError::Shape(format!(
                "{} components for {} objects",
                components.len(),
                cat.object_count()
            )));
        }
        for (a, comp) in components.iter().enumerate() {
            let fa = self.source.poset(a);
            if comp.len() != fa.len() {
                return Err(TwoCatError::Shape(format!(
                    "component at {} has {} entries, F{} has {}",
                    cat.object_name(a),
                    comp.len(),
                    cat.object_name(a),
                    fa.len()
                )));
            }
            if let Some(v) = comp.iter().find(|v| !self.target.contains(a, v)) {
                return Err(TwoCatError::Shape(format!(
                    "value {v:?} is not an element of G{}",
                    cat.object_name(a)
                )));
            }
            for x in 0..fa.len() {
                for y in 0..fa.len() {
                    if fa.leq(x, y) && !self.target.leq(a, &comp[x], &comp[y]) {
                        return Err(TwoCatError::NotMonotone {
                            object: cat.object_name(a).to_string(),
                            x: fa.label(x).to_string(),
                            y: fa.label(y).to_string(),
                        });
                    }
                }
            }
        }
        Ok(Transformation { components })
    }

    /// Like [`Self::family`] and additionally enforces the Σ-law.
    pub fn sigma_transformation(
        &self,
        components: Table<G>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        let t = self.family(components)?;
        if let Some(w) = self.sigma_witness(&t) {
            return Err(TwoCatError::SigmaLaw {
                morphism: w.morphism,
                element: w.element,
            });
        }
        Ok(t)
    }

    /// The constant transformation at the top of every `GA`.
    pub fn top(&self) -> Transformation<G::Value> {
        self.constant(|a| self.target.top(a))
    }

    pub fn bottom(&self) -> Transformation<G::Value> {
        self.constant(|a| self.target.bottom(a))
    }

    fn constant(&self, value: impl Fn(usize) -> G::Value) -> Transformation<G::Value> {
        Transformation {
            components: (0..self.category().object_count())
                .map(|a| vec![value(a); self.source.size(a)])
                .collect(),
        }
    }

    pub fn leq(&self, s: &Transformation<G::Value>, t: &Transformation<G::Value>) -> bool {
        s.components.iter().enumerate().all(|(a, comp)| {
            comp.iter()
                .zip(&t.components[a])
                .all(|(x, y)| self.target.leq(a, x, y))
        })
    }

    fn witness(
        &self,
        f: usize,
        x: usize,
        lhs: &G::Value,
        rhs: &G::Value,
    ) -> Witness {
        let m = self.category().morphism(f);
        Witness {
            morphism: m.name.clone(),
            element: self.element_label(m.source, x),
            lhs: self.target.render(m.target, lhs),
            rhs: self.target.render(m.target, rhs),
        }
    }

    /// Compares `Gf(τ_A x)` with `τ_B(Ff x)` for the morphisms selected by
    /// `select` and returns the first pair failing `ok(lhs, rhs)`.
    fn find_violation(
        &self,
        t: &Transformation<G::Value>,
        select: impl Fn(usize) -> bool,
        ok: impl Fn(usize, &G::Value, &G::Value) -> bool,
    ) -> Option<Witness> {
        let cat = self.category();
        for f in 0..cat.morphism_count() {
            if cat.is_identity(f) || !select(f) {
                continue;
            }
            let m = cat.morphism(f);
            for x in 0..self.source.size(m.source) {
                let lhs = self.target.apply(f, &t.components[m.source][x]);
                let rhs = &t.components[m.target][self.source.apply(f, x)];
                if !ok(m.target, &lhs, rhs) {
                    return Some(self.witness(f, x, &lhs, rhs));
                }
            }
        }
        None
    }

    pub fn sigma_witness(&self, t: &Transformation<G::Value>) -> Option<Witness> {
        self.find_violation(t, |f| self.sigma.contains(f), |_, l, r| l == r)
    }

    pub fn classify(&self, t: &Transformation<G::Value>) -> KindReport {
        if let Some(w) = self.sigma_witness(t) {
            return KindReport {
                is_general: false,
                is_lax: false,
                is_colax: false,
                is_strict: false,
                sigma_witness: Some(w.clone()),
                lax_witness: Some(w.clone()),
                colax_witness: Some(w),
            };
        }
        let lax_witness = self.find_violation(t, |_| true, |b, l, r| self.target.leq(b, r, l));
        let colax_witness = self.find_violation(t, |_| true, |b, l, r| self.target.leq(b, l, r));
        KindReport {
            is_general: true,
            is_lax: lax_witness.is_none(),
            is_colax: colax_witness.is_none(),
            is_strict: lax_witness.is_none() && colax_witness.is_none(),
            sigma_witness: None,
            lax_witness,
            colax_witness,
        }
    }

    pub fn is_kind(&self, t: &Transformation<G::Value>, kind: Kind) -> bool {
        match kind {
            Kind::General => self.sigma_witness(t).is_none(),
            Kind::Lax => self.sigma_witness(t).is_none() && self.classify(t).is_lax,
            Kind::Colax => self.sigma_witness(t).is_none() && self.classify(t).is_colax,
            Kind::Strict => self.classify(t).is_strict,
        }
    }

    pub(crate) fn require_kind(
        &self,
        t: &Transformation<G::Value>,
        kind: Kind,
    ) -> Result<(), TwoCatError> {
        let report = self.classify(t);
        if report.is(kind) {
            return Ok(());
        }
        let detail = |w: &Option<Witness>| w.as_ref().map_or_else(String::new, |w| w.to_string());
        Err(match kind {
            Kind::General => TwoCatError::SigmaLaw {
                morphism: report.sigma_witness.as_ref().map_or_else(String::new, |w| w.morphism.clone()),
                element: report.sigma_witness.as_ref().map_or_else(String::new, |w| w.element.clone()),
            },
            Kind::Lax => TwoCatError::NotLax(detail(&report.lax_witness)),
            Kind::Colax => TwoCatError::NotColax(detail(&report.colax_witness)),
            Kind::Strict => TwoCatError::NotStrict(detail(
                &report.lax_witness.or(report.colax_witness),
            )),
        })
    }

    /// Checks that `Gf` preserves binary joins for every `f ∈ Σ`.
    pub fn check_sigma_joins(&self) -> Result<(), TwoCatError> {
        for f in self.sigma.members() {
            if let Some((x, y)) = self.target.binary_join_witness(f)? {
                let a = self.category().morphism(f).source;
                return Err(TwoCatError::Hypothesis(format!(
                    "G({}) does not preserve the join of {} and {}",
                    self.category().morphism(f).name,
                    self.target.render(a, &x),
                    self.target.render(a, &y)
                )));
            }
        }
        Ok(())
    }

    /// Checks that `Gf` preserves binary meets for every `f ∈ Σ`.
    pub fn check_sigma_meets(&self) -> Result<(), TwoCatError> {
        for f in self.sigma.members() {
            if let Some((x, y)) = self.target.binary_meet_witness(f)? {
                let a = self.category().morphism(f).source;
                return Err(TwoCatError::Hypothesis(format!(
                    "G({}) does not preserve the meet of {} and {}",
                    self.category().morphism(f).name,
                    self.target.render(a, &x),
                    self.target.render(a, &y)
                )));
            }
        }
        Ok(())
    }

    fn combine(
        &self,
        family: &[Transformation<G::Value>],
        op: impl Fn(usize, &G::Value, &G::Value) -> G::Value,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        let (first, rest) = family
            .split_first()
            .ok_or_else(|| TwoCatError::Input("empty family".into()))?;
        let mut out = first.clone();
        for t in rest {
            for (a, comp) in out.components.iter_mut().enumerate() {
                for (x, v) in comp.iter_mut().enumerate() {
                    *v = op(a, v, &t.components[a][x]);
                }
            }
        }
        Ok(out)
    }

    pub fn pointwise_join(
        &self,
        family: &[Transformation<G::Value>],
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.check_sigma_joins()?;
        let out = self.combine(family, |a, x, y| self.target.join(a, x, y))?;
        self.sigma_transformation(out.components)
    }

    pub fn pointwise_meet(
        &self,
        family: &[Transformation<G::Value>],
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        self.check_sigma_meets()?;
        let out = self.combine(family, |a, x, y| self.target.meet(a, x, y))?;
        self.sigma_transformation(out.components)
    }

    pub fn render(&self, t: &Transformation<G::Value>) -> String {
        let cat = self.category();
        let parts: Vec<String> = (0..cat.object_count())
            .map(|a| {
                let vals: Vec<String> = t.components[a]
                    .iter()
                    .enumerate()
                    .map(|(x, v)| {
                        format!("{}↦{}", self.source.poset(a).label(x), self.target.render(a, v))
                    })
                    .collect();
                format!("{}: {{{}}}", cat.object_name(a), vals.join(", "))
            })
            .collect();
        parts.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn identity_is_strict() {
        let s = t0_space();
        let r = s.classify(&t0(&s, [0, 1], [0, 1]));
        assert!(r.is_strict && r.is_lax && r.is_colax && r.is_general);
    }

    #[test]
    fn const_one_is_lax_not_colax() {
        let s = t0_space();
        let r = s.classify(&t0(&s, [1, 1], [0, 1]));
        assert!(r.is_lax && !r.is_colax && !r.is_strict);
        let w = r.colax_witness.unwrap();
        assert_eq!(w.morphism, "f");
        assert_eq!(w.element, "0@A");
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "0"));
    }

    #[test]
    fn const_zero_is_colax_not_lax() {
        let s = t0_space();
        let r = s.classify(&t0(&s, [0, 0], [0, 1]));
        assert!(r.is_colax && !r.is_lax);
    }

    #[test]
    fn sigma_failure_makes_everything_false() {
        let s = t0_space_sigma_all();
        let r = s.classify(&t0(&s, [1, 1], [0, 1]));
        assert!(!r.is_general && !r.is_lax && !r.is_colax && !r.is_strict);
        assert!(r.sigma_witness.is_some());
        assert!(s.sigma_transformation(vec![vec![1, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn non_monotone_component_rejected() {
        let s = t0_space();
        assert!(matches!(
            s.family(vec![vec![1, 0], vec![0, 1]]),
            Err(TwoCatError::NotMonotone { .. })
        ));
        assert!(matches!(
            s.family(vec![vec![0, 1]]),
            Err(TwoCatError::Shape(_))
        ));
    }

    #[test]
    fn pointwise_join_on_t0() {
        let s = t0_space();
        let a = t0(&s, [0, 0], [0, 1]);
        let b = t0(&s, [1, 1], [0, 0]);
        let j = s.pointwise_join(&[a.clone(), b]).unwrap();
        assert_eq!(j, t0(&s, [1, 1], [0, 1]));
        assert_eq!(s.pointwise_join(std::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn meet_with_top_is_neutral() {
        let s = t0_space();
        let a = t0(&s, [0, 1], [1, 1]);
        assert_eq!(s.pointwise_meet(&[a.clone(), s.top()]).unwrap(), a);
    }

    #[test]
    fn kind_report_coherence_on_all_t0_families() {
        let s = t0_space();
        for t in all_t0(&s) {
            let r = s.classify(&t);
            assert_eq!(r.is_strict, r.is_lax && r.is_colax);
        }
    }

    #[test]
    fn join_of_lax_is_lax() {
        let s = t0_space();
        let lax: Vec<_> = all_t0(&s).into_iter().filter(|t| s.classify(t).is_lax).collect();
        for a in &lax {
            for b in &lax {
                let j = s.pointwise_join(&[a.clone(), b.clone()]).unwrap();
                assert!(s.classify(&j).is_lax);
            }
        }
    }
}
