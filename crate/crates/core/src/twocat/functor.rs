//! Poset-valued strict 2-functors and the value functors used as codomains.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use crate::ext::ExtValue;
use crate::order::{FiniteLattice, FinitePoset, MonotoneMap};

use super::category::Finite2Category;
use super::TwoCatError;

/// A strict 2-functor from a finite 2-category into finite posets.
#[derive(Debug, Clone)]
pub struct PosetFunctor {
    category: Arc<Finite2Category>,
    objects: Vec<Arc<FinitePoset>>,
    maps: Vec<MonotoneMap>,
}

impl PosetFunctor {
    /// `tables[f]` gives the action of morphism `f` on element indices.
    pub fn new(
        category: Arc<Finite2Category>,
        objects: Vec<Arc<FinitePoset>>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, TwoCatError> {
        if objects.len() != category.object_count() {
            return Err(TwoCatError::Shape(format!(
                "functor assigns {} posets to {} objects",
                objects.len(),
                category.object_count()
            )));
        }
        if tables.len() != category.morphism_count() {
            return Err(TwoCatError::Shape(format!(
                "functor assigns {} maps to {} morphisms",
                tables.len(),
                category.morphism_count()
            )));
        }
        let mut maps = Vec::with_capacity(tables.len());
        for (f, table) in tables.into_iter().enumerate() {
            let m = category.morphism(f);
            let map = MonotoneMap::new(objects[m.source].clone(), objects[m.target].clone(), table)
                .map_err(|e| TwoCatError::Functor(format!("action of {}: {e}", m.name)))?;
            maps.push(map);
        }
        let functor = PosetFunctor {
            category,
            objects,
            maps,
        };
        functor.validate()?;
        Ok(functor)
    }

    fn validate(&self) -> Result<(), TwoCatError> {
        let cat = &self.category;
        for a in 0..cat.object_count() {
            let id = cat.identity(a);
            if self.maps[id].table().iter().enumerate().any(|(x, &y)| x != y) {
                return Err(TwoCatError::Functor(format!(
                    "identity of {} is not sent to the identity",
                    cat.object_name(a)
                )));
            }
        }
        for g in 0..cat.morphism_count() {
            for f in 0..cat.morphism_count() {
                let Some(gf) = cat.compose(g, f) else { continue };
                let src = &self.objects[cat.morphism(f).source];
                if (0..src.len()).any(|x| self.apply(gf, x) != self.apply(g, self.apply(f, x))) {
                    return Err(TwoCatError::Functor(format!(
                        "composition {} ∘ {} is not preserved",
                        cat.morphism(g).name,
                        cat.morphism(f).name
                    )));
                }
            }
        }
        for f in 0..cat.morphism_count() {
            for g in 0..cat.morphism_count() {
                if f != g && cat.cell(f, g) && !self.maps[f].pointwise_leq(&self.maps[g]) {
                    return Err(TwoCatError::Functor(format!(
                        "2-cell {} ⇒ {} is not sent to a pointwise inequality",
                        cat.morphism(f).name,
                        cat.morphism(g).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &Arc<Finite2Category> {
        &self.category
    }

    pub fn poset(&self, a: usize) -> &Arc<FinitePoset> {
        &self.objects[a]
    }

    pub fn size(&self, a: usize) -> usize {
        self.objects[a].len()
    }

    #[inline]
    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.maps[f].apply(x)
    }

    pub fn map(&self, f: usize) -> &MonotoneMap {
        &self.maps[f]
    }
}

/// The codomain functor `G` of a transformation. Each `GA` is a complete
/// lattice; the element type is chosen by the implementation.
///
/// Enumerable backends expose their elements, which enables fixpoint
/// constructions and exhaustive verification. Formula-only backends support
/// classification and the closed formulas only.
pub trait ValueFunctor {
    type Value: Clone + Eq + Ord + Hash + Debug;

    fn category(&self) -> &Arc<Finite2Category>;
    fn contains(&self, a: usize, v: &Self::Value) -> bool;
    fn leq(&self, a: usize, x: &Self::Value, y: &Self::Value) -> bool;
    fn join(&self, a: usize, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn meet(&self, a: usize, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn bottom(&self, a: usize) -> Self::Value;
    fn top(&self, a: usize) -> Self::Value;
    fn apply(&self, f: usize, v: &Self::Value) -> Self::Value;
    fn render(&self, a: usize, v: &Self::Value) -> String;

    /// Number of elements of `GA`, if the backend is enumerable.
    fn element_count(&self, a: usize) -> Option<u128>;

    /// All elements of `GA`, if enumerable.
    fn elements(&self, a: usize) -> Option<Vec<Self::Value>>;

    fn random_element<R: Rng + ?Sized>(&self, a: usize, rng: &mut R) -> Option<Self::Value> {
        let all = self.elements(a)?;
        Some(all[rng.gen_range(0..all.len())].clone())
    }

    fn supports_fixpoints(&self) -> bool {
        (0..self.category().object_count()).all(|a| self.element_count(a).is_some())
    }

    /// The largest `z` with `Gf(z) ≤ w`. `Ok(None)` certifies that no `z`
    /// satisfies the inequality.
    fn right_adjoint(&self, f: usize, w: &Self::Value) -> Result<Option<Self::Value>, TwoCatError> {
        let src = self.category().morphism(f).source;
        let tgt = self.category().morphism(f).target;
        let elems = self
            .elements(src)
            .ok_or(TwoCatError::BackendUnsupported("adjoint search needs enumerable values"))?;
        let mut best: Option<Self::Value> = None;
        for z in elems.iter().filter(|z| self.leq(tgt, &self.apply(f, z), w)) {
            best = Some(match best {
                None => z.clone(),
                Some(b) => self.join(src, &b, z),
            });
        }
        match best {
            Some(b) if !self.leq(tgt, &self.apply(f, &b), w) => Err(TwoCatError::Hypothesis(
                format!(
                    "G({}) does not preserve joins: no largest preimage below {}",
                    self.category().morphism(f).name,
                    self.render(tgt, w)
                ),
            )),
            other => Ok(other),
        }
    }

    /// The least `z` with `Gf(z) ≥ w`. `Ok(None)` certifies that no `z`
    /// satisfies the inequality.
    fn left_adjoint(&self, f: usize, w: &Self::Value) -> Result<Option<Self::Value>, TwoCatError> {
        let src = self.category().morphism(f).source;
        let tgt = self.category().morphism(f).target;
        let elems = self
            .elements(src)
            .ok_or(TwoCatError::BackendUnsupported("adjoint search needs enumerable values"))?;
        let mut best: Option<Self::Value> = None;
        for z in elems.iter().filter(|z| self.leq(tgt, w, &self.apply(f, z))) {
            best = Some(match best {
                None => z.clone(),
                Some(b) => self.meet(src, &b, z),
            });
        }
        match best {
            Some(b) if !self.leq(tgt, w, &self.apply(f, &b)) => Err(TwoCatError::Hypothesis(
                format!(
                    "G({}) does not preserve meets: no least preimage above {}",
                    self.category().morphism(f).name,
                    self.render(tgt, w)
                ),
            )),
            other => Ok(other),
        }
    }

    /// A pair whose binary join is not preserved by `Gf`, if any.
    fn binary_join_witness(
        &self,
        f: usize,
    ) -> Result<Option<(Self::Value, Self::Value)>, TwoCatError> {
        let src = self.category().morphism(f).source;
        let tgt = self.category().morphism(f).target;
        let elems = self
            .elements(src)
            .ok_or(TwoCatError::BackendUnsupported("join check needs enumerable values"))?;
        for (i, x) in elems.iter().enumerate() {
            for y in &elems[i + 1..] {
                let lhs = self.apply(f, &self.join(src, x, y));
                let rhs = self.join(tgt, &self.apply(f, x), &self.apply(f, y));
                if lhs != rhs {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }

    /// A pair whose binary meet is not preserved by `Gf`, if any.
    fn binary_meet_witness(
        &self,
        f: usize,
    ) -> Result<Option<(Self::Value, Self::Value)>, TwoCatError> {
        let src = self.category().morphism(f).source;
        let tgt = self.category().morphism(f).target;
        let elems = self
            .elements(src)
            .ok_or(TwoCatError::BackendUnsupported("meet check needs enumerable values"))?;
        for (i, x) in elems.iter().enumerate() {
            for y in &elems[i + 1..] {
                let lhs = self.apply(f, &self.meet(src, x, y));
                let rhs = self.meet(tgt, &self.apply(f, x), &self.apply(f, y));
                if lhs != rhs {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }
}

/// A poset functor whose values are finite lattices; elements are indices.
#[derive(Debug, Clone)]
pub struct LatticeFunctor {
    functor: PosetFunctor,
    lattices: Vec<Arc<FiniteLattice>>,
}

impl LatticeFunctor {
    pub fn new(functor: PosetFunctor) -> Result<Self, TwoCatError> {
        let lattices = functor
            .objects
            .iter()
            .map(|p| FiniteLattice::from_poset(p.clone()).map(Arc::new))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TwoCatError::NotLattice(e.to_string()))?;
        Ok(LatticeFunctor { functor, lattices })
    }

    pub fn functor(&self) -> &PosetFunctor {
        &self.functor
    }

    pub fn lattice(&self, a: usize) -> &FiniteLattice {
        &self.lattices[a]
    }
}

impl ValueFunctor for LatticeFunctor {
    type Value = usize;

    fn category(&self) -> &Arc<Finite2Category> {
        &self.functor.category
    }

    fn contains(&self, a: usize, v: &usize) -> bool {
        *v < self.lattices[a].len()
    }

    fn leq(&self, a: usize, x: &usize, y: &usize) -> bool {
        self.lattices[a].leq(*x, *y)
    }

    fn join(&self, a: usize, x: &usize, y: &usize) -> usize {
        self.lattices[a].join2(*x, *y)
    }

    fn meet(&self, a: usize, x: &usize, y: &usize) -> usize {
        self.lattices[a].meet2(*x, *y)
    }

    fn bottom(&self, a: usize) -> usize {
        self.lattices[a].bottom()
    }

    fn top(&self, a: usize) -> usize {
        self.lattices[a].top()
    }

    fn apply(&self, f: usize, v: &usize) -> usize {
        self.functor.apply(f, *v)
    }

    fn render(&self, a: usize, v: &usize) -> String {
        self.functor.objects[a].label(*v).to_string()
    }

    fn element_count(&self, a: usize) -> Option<u128> {
        Some(self.lattices[a].len() as u128)
    }

    fn elements(&self, a: usize) -> Option<Vec<usize>> {
        Some((0..self.lattices[a].len()).collect())
    }
}

/// `GA = [0,∞]^{A}` with `Gf` summing over fibres of a partial map.
///
/// With a cap `N` the values are restricted to `{0, …, N, ∞}` and sums above
/// `N` saturate to `∞`; this is again a functor and makes every `GA` finite.
#[derive(Debug, Clone)]
pub struct WeightFunctor {
    category: Arc<Finite2Category>,
    arities: Vec<usize>,
    maps: Vec<Vec<Option<usize>>>,
    cap: Option<u64>,
}

/// Enumeration above this many elements per object is refused.
const WEIGHT_ENUMERATION_LIMIT: u128 = 1 << 20;

impl WeightFunctor {
    /// `maps[f][a]` is the image of index `a` under the partial map of `f`.
    pub fn new(
        category: Arc<Finite2Category>,
        arities: Vec<usize>,
        maps: Vec<Vec<Option<usize>>>,
        cap: Option<u64>,
    ) -> Result<Self, TwoCatError> {
        if arities.len() != category.object_count() || maps.len() != category.morphism_count() {
            return Err(TwoCatError::Shape("weight functor data does not match the category".into()));
        }
        for (f, map) in maps.iter().enumerate() {
            let m = category.morphism(f);
            if map.len() != arities[m.source]
                || map.iter().flatten().any(|&b| b >= arities[m.target])
            {
                return Err(TwoCatError::Shape(format!(
                    "index map of {} has the wrong type",
                    m.name
                )));
            }
        }
        Ok(WeightFunctor {
            category,
            arities,
            maps,
            cap,
        })
    }

    pub fn cap(&self) -> Option<u64> {
        self.cap
    }

    pub fn arity(&self, a: usize) -> usize {
        self.arities[a]
    }

    pub fn index_map(&self, f: usize) -> &[Option<usize>] {
        &self.maps[f]
    }

    fn saturate(&self, v: ExtValue) -> ExtValue {
        match self.cap {
            Some(n) if v > ExtValue::from_integer(n) => ExtValue::inf(),
            _ => v,
        }
    }

    fn levels(&self) -> Option<Vec<ExtValue>> {
        let n = self.cap?;
        let mut v: Vec<ExtValue> = (0..=n).map(ExtValue::from_integer).collect();
        v.push(ExtValue::inf());
        Some(v)
    }

    fn is_injective(&self, f: usize) -> bool {
        let mut seen = vec![false; self.arities[self.category.morphism(f).target]];
        self.maps[f].iter().flatten().all(|&b| !std::mem::replace(&mut seen[b], true))
    }
}

impl ValueFunctor for WeightFunctor {
    type Value = Vec<ExtValue>;

    fn category(&self) -> &Arc<Finite2Category> {
        &self.category
    }

    fn contains(&self, a: usize, v: &Vec<ExtValue>) -> bool {
        v.len() == self.arities[a]
            && match self.cap {
                None => true,
                Some(n) => v.iter().all(|x| {
                    x.is_infinite()
                        || (x.as_rational().is_some_and(|r| r.is_integer())
                            && *x <= ExtValue::from_integer(n))
                }),
            }
    }

    fn leq(&self, _a: usize, x: &Vec<ExtValue>, y: &Vec<ExtValue>) -> bool {
        x.iter().zip(y).all(|(p, q)| p <= q)
    }

    fn join(&self, _a: usize, x: &Vec<ExtValue>, y: &Vec<ExtValue>) -> Vec<ExtValue> {
        x.iter().zip(y).map(|(p, q)| p.clone().max(q.clone())).collect()
    }

    fn meet(&self, _a: usize, x: &Vec<ExtValue>, y: &Vec<ExtValue>) -> Vec<ExtValue> {
        x.iter().zip(y).map(|(p, q)| p.clone().min(q.clone())).collect()
    }

    fn bottom(&self, a: usize) -> Vec<ExtValue> {
        vec![ExtValue::zero(); self.arities[a]]
    }

    fn top(&self, a: usize) -> Vec<ExtValue> {
        vec![ExtValue::inf(); self.arities[a]]
    }

    fn apply(&self, f: usize, v: &Vec<ExtValue>) -> Vec<ExtValue> {
        let mut out = vec![ExtValue::zero(); self.arities[self.category.morphism(f).target]];
        for (a, b) in self.maps[f].iter().enumerate() {
            if let Some(b) = *b {
                out[b] += &v[a];
            }
        }
        out.into_iter().map(|x| self.saturate(x)).collect()
    }

    fn render(&self, _a: usize, v: &Vec<ExtValue>) -> String {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn element_count(&self, a: usize) -> Option<u128> {
        let levels = self.cap? as u128 + 2;
        levels.checked_pow(self.arities[a] as u32)
    }

    fn elements(&self, a: usize) -> Option<Vec<Vec<ExtValue>>> {
        if self.element_count(a)? > WEIGHT_ENUMERATION_LIMIT {
            return None;
        }
        let levels = self.levels()?;
        let mut out = vec![Vec::new()];
        for _ in 0..self.arities[a] {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    levels.iter().map(move |l| {
                        let mut p = prefix.clone();
                        p.push(l.clone());
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    fn random_element<R: Rng + ?Sized>(&self, a: usize, rng: &mut R) -> Option<Vec<ExtValue>> {
        let n = self.cap?;
        Some(
            (0..self.arities[a])
                .map(|_| {
                    let k = rng.gen_range(0..=n + 1);
                    if k > n {
                        ExtValue::inf()
                    } else {
                        ExtValue::from_integer(k)
                    }
                })
                .collect(),
        )
    }

    fn supports_fixpoints(&self) -> bool {
        self.cap.is_some()
    }

    fn right_adjoint(
        &self,
        f: usize,
        w: &Vec<ExtValue>,
    ) -> Result<Option<Vec<ExtValue>>, TwoCatError> {
        if !self.is_injective(f) {
            return Err(TwoCatError::Hypothesis(format!(
                "G({}) sums over a fibre of size > 1 and has no right adjoint",
                self.category.morphism(f).name
            )));
        }
        Ok(Some(
            self.maps[f]
                .iter()
                .map(|b| b.map_or_else(ExtValue::inf, |b| w[b].clone()))
                .collect(),
        ))
    }

    fn left_adjoint(
        &self,
        f: usize,
        w: &Vec<ExtValue>,
    ) -> Result<Option<Vec<ExtValue>>, TwoCatError> {
        if !self.is_injective(f) {
            return Err(TwoCatError::Hypothesis(format!(
                "G({}) sums over a fibre of size > 1 and has no left adjoint",
                self.category.morphism(f).name
            )));
        }
        let mut hit = vec![false; w.len()];
        for b in self.maps[f].iter().flatten() {
            hit[*b] = true;
        }
        if w.iter().zip(&hit).any(|(x, &h)| !h && !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(
            self.maps[f]
                .iter()
                .map(|b| b.map_or_else(ExtValue::zero, |b| w[b].clone()))
                .collect(),
        ))
    }

    fn binary_join_witness(
        &self,
        f: usize,
    ) -> Result<Option<(Vec<ExtValue>, Vec<ExtValue>)>, TwoCatError> {
        let src = self.arities[self.category.morphism(f).source];
        for a in 0..src {
            for a2 in (a + 1)..src {
                if self.maps[f][a].is_some() && self.maps[f][a] == self.maps[f][a2] {
                    let mut x = vec![ExtValue::zero(); src];
                    let mut y = x.clone();
                    x[a] = ExtValue::one();
                    y[a2] = ExtValue::one();
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    fn binary_meet_witness(
        &self,
        f: usize,
    ) -> Result<Option<(Vec<ExtValue>, Vec<ExtValue>)>, TwoCatError> {
        let src = self.arities[self.category.morphism(f).source];
        for a in 0..src {
            for a2 in (a + 1)..src {
                if self.maps[f][a].is_some() && self.maps[f][a] == self.maps[f][a2] {
                    let mut x = vec![ExtValue::zero(); src];
                    let mut y = x.clone();
                    x[a] = ExtValue::one();
                    y[a2] = ExtValue::one();
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }
}

/// A strict transformation between poset functors, used as the extension
/// direction `ι: F → H`.
#[derive(Debug, Clone)]
pub struct PosetTransformation {
    components: Vec<Vec<usize>>,
}

impl PosetTransformation {
    pub fn new(
        source: &PosetFunctor,
        target: &PosetFunctor,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, TwoCatError> {
        let cat = source.category();
        if !Arc::ptr_eq(cat, target.category()) && **cat != **target.category() {
            return Err(TwoCatError::Shape("functors live on different categories".into()));
        }
        if components.len() != cat.object_count() {
            return Err(TwoCatError::Shape("one component per object required".into()));
        }
        for (a, table) in components.iter().enumerate() {
            MonotoneMap::new(source.poset(a).clone(), target.poset(a).clone(), table.clone())
                .map_err(|e| {
                    TwoCatError::Shape(format!("component at {}: {e}", cat.object_name(a)))
                })?;
        }
        for f in 0..cat.morphism_count() {
            let m = cat.morphism(f);
            for x in 0..source.size(m.source) {
                if target.apply(f, components[m.source][x]) != components[m.target][source.apply(f, x)] {
                    return Err(TwoCatError::NotStrict(format!(
                        "ι is not natural at ({}, {x})",
                        m.name
                    )));
                }
            }
        }
        Ok(PosetTransformation { components })
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.components[a][x]
    }

    pub fn component(&self, a: usize) -> &[usize] {
        &self.components[a]
    }
}
