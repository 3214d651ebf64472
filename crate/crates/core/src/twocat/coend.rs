//! Lax, colax and plain coends of a poset functor, realized as preorders on
//! pairs `(g: B → A, y ∈ FB)`, and the transport of transformations along them.

use serde::{Deserialize, Serialize};

use crate::order::FinitePreorder;

use super::functor::{PosetFunctor, ValueFunctor};
use super::transformation::{Kind, Space, Transformation};
use super::TwoCatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoendVariant {
    /// `(g1,y1) ⪯ (g2,y2)` iff some `s: B2 → B1` has `g1∘s ≤ g2` and `y1 ≤ Fs(y2)`.
    Sharp,
    /// `(g1,y1) ⪯ (g2,y2)` iff some `s: B1 → B2` has `g1 ≤ g2∘s` and `Fs(y1) ≤ y2`.
    Flat,
    /// Only equal pairs are related.
    SharpFlat,
}

impl CoendVariant {
    /// The kind of transformation that corresponds to strict ones on the coend.
    pub fn kind(self) -> Kind {
        match self {
            CoendVariant::Sharp => Kind::Lax,
            CoendVariant::Flat => Kind::Colax,
            CoendVariant::SharpFlat => Kind::General,
        }
    }
}

/// The coend at one object `A`.
#[derive(Debug, Clone)]
pub struct CoendCategory {
    pub object: usize,
    pub variant: CoendVariant,
    /// Pairs `(g, y)` with `g: B → A` a morphism index and `y ∈ FB`.
    pub elements: Vec<(usize, usize)>,
    pub order: FinitePreorder,
}

impl CoendCategory {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: usize, y: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == (g, y))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.leq(i, j)
    }

    /// The counit `(g, y) ↦ Fg(y)` into `FA`.
    pub fn counit(&self, f: &PosetFunctor, i: usize) -> usize {
        let (g, y) = self.elements[i];
        f.apply(g, y)
    }

    /// The unit insertion `x ↦ (1_A, x)`.
    pub fn unit(&self, f: &PosetFunctor, x: usize) -> usize {
        self.index_of(f.category().identity(self.object), x)
            .expect("identity pairs are always present")
    }
}

pub fn build_coend(
    f: &PosetFunctor,
    object: usize,
    variant: CoendVariant,
) -> Result<CoendCategory, TwoCatError> {
    let cat = f.category();
    if object >= cat.object_count() {
        return Err(TwoCatError::UnknownObject(object.to_string()));
    }
    let elements: Vec<(usize, usize)> = cat
        .arrows_into(object)
        .iter()
        .flat_map(|&g| (0..f.size(cat.morphism(g).source)).map(move |y| (g, y)))
        .collect();
    let n = elements.len();
    let related = |(g1, y1): (usize, usize), (g2, y2): (usize, usize)| -> bool {
        let b1 = cat.morphism(g1).source;
        let b2 = cat.morphism(g2).source;
        match variant {
            CoendVariant::Sharp => cat.hom(b2, b1).iter().any(|&s| {
                cat.compose(g1, s).is_some_and(|g1s| cat.cell(g1s, g2))
                    && f.poset(b1).leq(y1, f.apply(s, y2))
            }),
            CoendVariant::Flat => cat.hom(b1, b2).iter().any(|&s| {
                cat.compose(g2, s).is_some_and(|g2s| cat.cell(g1, g2s))
                    && f.poset(b2).leq(f.apply(s, y1), y2)
            }),
            CoendVariant::SharpFlat => (g1, y1) == (g2, y2),
        }
    };
    let leq = (0..n)
        .map(|i| (0..n).map(|j| related(elements[i], elements[j])).collect())
        .collect();
    let order = FinitePreorder::new(leq)
        .map_err(|e| TwoCatError::Functor(format!("coend relation is not a preorder: {e}")))?;
    Ok(CoendCategory {
        object,
        variant,
        elements,
        order,
    })
}

/// A transformation out of a coend functor; components indexed by object and
/// coend element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoendTransformation<V> {
    pub variant: CoendVariant,
    pub components: Vec<Vec<V>>,
}

impl<G: ValueFunctor> Space<G> {
    pub fn coends(&self, variant: CoendVariant) -> Result<Vec<CoendCategory>, TwoCatError> {
        (0..self.category().object_count())
            .map(|a| build_coend(self.source(), a, variant))
            .collect()
    }

    /// Validates a transformation out of the coend: monotone on each coend
    /// preorder and strictly natural for the action `h ↦ (h∘g, y)`.
    pub fn coend_transformation(
        &self,
        variant: CoendVariant,
        components: Vec<Vec<G::Value>>,
    ) -> Result<CoendTransformation<G::Value>, TwoCatError> {
        let cat = self.category();
        let coends = self.coends(variant)?;
        if components.len() != coends.len()
            || components.iter().zip(&coends).any(|(c, k)| c.len() != k.len())
        {
            return Err(TwoCatError::Shape("coend transformation has the wrong shape".into()));
        }
        for (a, k) in coends.iter().enumerate() {
            for i in 0..k.len() {
                for j in 0..k.len() {
                    if k.leq(i, j) && !self.target().leq(a, &components[a][i], &components[a][j]) {
                        return Err(TwoCatError::NotMonotone {
                            object: cat.object_name(a).to_string(),
                            x: format!("{:?}", k.elements[i]),
                            y: format!("{:?}", k.elements[j]),
                        });
                    }
                }
            }
        }
        for h in 0..cat.morphism_count() {
            let (a, a2) = (cat.morphism(h).source, cat.morphism(h).target);
            for (i, &(g, y)) in coends[a].elements.iter().enumerate() {
                let hg = cat.compose(h, g).expect("g ends at the source of h");
                let j = coends[a2].index_of(hg, y).expect("composite pair present");
                if self.target().apply(h, &components[a][i]) != components[a2][j] {
                    return Err(TwoCatError::NotStrict(format!(
                        "coend transformation is not natural at ({}, {:?})",
                        cat.morphism(h).name,
                        (g, y)
                    )));
                }
            }
        }
        Ok(CoendTransformation {
            variant,
            components,
        })
    }

    /// `τ_A(g, y) = Gg(λ_B(y))`. The input must be lax, colax or a
    /// Σ-transformation according to the variant.
    pub fn transport_to_coend(
        &self,
        t: &Transformation<G::Value>,
        variant: CoendVariant,
    ) -> Result<CoendTransformation<G::Value>, TwoCatError> {
        self.require_kind(t, variant.kind())?;
        let cat = self.category();
        let components = self
            .coends(variant)?
            .iter()
            .map(|k| {
                k.elements
                    .iter()
                    .map(|&(g, y)| {
                        self.target()
                            .apply(g, t.value(cat.morphism(g).source, y))
                    })
                    .collect()
            })
            .collect();
        self.coend_transformation(variant, components)
    }

    /// `λ_A(x) = τ_A(1_A, x)`; the result must have the variant's kind.
    pub fn transport_from_coend(
        &self,
        t: &CoendTransformation<G::Value>,
    ) -> Result<Transformation<G::Value>, TwoCatError> {
        let coends = self.coends(t.variant)?;
        let components = coends
            .iter()
            .enumerate()
            .map(|(a, k)| {
                (0..self.source().size(a))
                    .map(|x| t.components[a][k.unit(self.source(), x)].clone())
                    .collect()
            })
            .collect();
        let out = self.family(components)?;
        self.require_kind(&out, t.variant.kind())?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::twocat::{Finite2Category, LatticeFunctor, SigmaClass};
    use std::sync::Arc;

    #[test]
    fn single_object_sharp_coend() {
        let cat = Arc::new(Finite2Category::single_object("*"));
        let f = chain_functor(&cat, 2);
        let k = build_coend(&f, 0, CoendVariant::Sharp).unwrap();
        assert_eq!(k.elements, vec![(0, 0), (0, 1)]);
        assert!(k.leq(0, 1) && !k.leq(1, 0));
        for x in 0..2 {
            assert_eq!(k.counit(&f, k.unit(&f, x)), x);
        }
    }

    /// Brute-force oracle for the sharp relation on T0 at B.
    #[test]
    fn t0_sharp_coend_at_b() {
        let s = t0_space();
        let f = s.source();
        let k = build_coend(f, 1, CoendVariant::Sharp).unwrap();
        // morphisms into B: id_B (1) and f (2)
        assert_eq!(k.elements, vec![(1, 0), (1, 1), (2, 0), (2, 1)]);
        // (g1,y1) ⪯ (g2,y2) needs s: B2 → B1. From (f, y1) to (id_B, y2) that
        // would need s: B → A, which does not exist.
        assert!(!k.leq(2, 0) && !k.leq(3, 1));
        // From (id_B, y1) to (f, y2): s = f with id∘f = f and y1 ≤ y2.
        assert!(k.leq(0, 2) && k.leq(0, 3) && k.leq(1, 3) && !k.leq(1, 2));
        assert!(k.leq(2, 3) && !k.leq(3, 2));
        let flat = build_coend(f, 1, CoendVariant::Flat).unwrap();
        assert!(flat.leq(2, 0) && !flat.leq(0, 2));
        let plain = build_coend(f, 1, CoendVariant::SharpFlat).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| plain.leq(i, j) == (i == j))));
    }

    #[test]
    fn transport_round_trips_on_t0() {
        let s = t0_space();
        for (variant, kind) in [
            (CoendVariant::Sharp, Kind::Lax),
            (CoendVariant::Flat, Kind::Colax),
            (CoendVariant::SharpFlat, Kind::General),
        ] {
            for t in s.enumerate_kind(kind).unwrap() {
                let c = s.transport_to_coend(&t, variant).unwrap();
                assert_eq!(s.transport_from_coend(&c).unwrap(), t);
            }
        }
    }

    #[test]
    fn transport_rejects_wrong_kind() {
        let s = t0_space();
        let colax_only = t0(&s, [0, 0], [0, 1]);
        assert!(matches!(
            s.transport_to_coend(&colax_only, CoendVariant::Sharp),
            Err(TwoCatError::NotLax(_))
        ));
    }

    #[test]
    fn non_monotone_coend_table_rejected() {
        let s = t0_space();
        // at A: elements (id_A,0),(id_A,1); at B: (id_B,0),(id_B,1),(f,0),(f,1)
        let bad = vec![vec![1, 0], vec![1, 0, 1, 0]];
        assert!(matches!(
            s.coend_transformation(CoendVariant::Sharp, bad),
            Err(TwoCatError::NotMonotone { .. })
        ));
    }

    #[test]
    fn single_object_transport_is_identity_on_values() {
        let cat = Arc::new(Finite2Category::single_object("*"));
        let f = Arc::new(chain_functor(&cat, 2));
        let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 2)).unwrap());
        let s = Space::new(f, g, SigmaClass::empty(&cat)).unwrap();
        let l = s.family(vec![vec![0, 1]]).unwrap();
        let c = s.transport_to_coend(&l, CoendVariant::Sharp).unwrap();
        assert_eq!(c.components, vec![vec![0, 1]]);
    }
}
