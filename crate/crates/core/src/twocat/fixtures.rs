//! Small instances shared by unit tests.

use std::sync::Arc;

use crate::order::FinitePoset;

use super::category::{Finite2Category, SigmaClass};
use super::functor::{LatticeFunctor, PosetFunctor, PosetTransformation};
use super::transformation::{Space, Transformation};

pub type LSpace = Space<LatticeFunctor>;

/// Objects A, B with one arrow f: A → B; every value poset is the chain 0 < 1
/// and F, G act by identities.
pub fn t0_category() -> Arc<Finite2Category> {
    Arc::new(
        Finite2Category::new(vec!["A".into(), "B".into()], vec![("f".into(), 0, 1)], &[], &[])
            .unwrap(),
    )
}

pub fn chain_functor(cat: &Arc<Finite2Category>, n: usize) -> PosetFunctor {
    let p = Arc::new(FinitePoset::chain(n));
    PosetFunctor::new(
        cat.clone(),
        vec![p; cat.object_count()],
        vec![(0..n).collect(); cat.morphism_count()],
    )
    .unwrap()
}

pub fn t0_space_with(sigma: impl Fn(&Finite2Category) -> SigmaClass) -> LSpace {
    let cat = t0_category();
    let f = Arc::new(chain_functor(&cat, 2));
    let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 2)).unwrap());
    Space::new(f, g, sigma(&cat)).unwrap()
}

pub fn t0_space() -> LSpace {
    t0_space_with(SigmaClass::empty)
}

pub fn t0_space_sigma_all() -> LSpace {
    t0_space_with(SigmaClass::all)
}

pub fn t0(s: &LSpace, a: [usize; 2], b: [usize; 2]) -> Transformation<usize> {
    s.family(vec![a.to_vec(), b.to_vec()]).unwrap()
}

/// All 9 pairs of monotone self-maps of the chain 0 < 1.
pub fn all_t0(s: &LSpace) -> Vec<Transformation<usize>> {
    let maps = [[0, 0], [0, 1], [1, 1]];
    maps.iter()
        .flat_map(|a| maps.iter().map(move |b| (a, b)))
        .map(|(a, b)| t0(s, *a, *b))
        .collect()
}

/// A single object; F = chain 2, H = chain 3 with ι(0)=0, ι(1)=2; G = chain 3.
pub struct E0 {
    pub src: LSpace,
    pub dst: LSpace,
    pub iota: PosetTransformation,
}

pub fn e0() -> E0 {
    let cat = Arc::new(Finite2Category::single_object("*"));
    let f = Arc::new(chain_functor(&cat, 2));
    let h = Arc::new(chain_functor(&cat, 3));
    let g = Arc::new(LatticeFunctor::new(chain_functor(&cat, 3)).unwrap());
    let iota = PosetTransformation::new(&f, &h, vec![vec![0, 2]]).unwrap();
    E0 {
        src: Space::new(f, g.clone(), SigmaClass::empty(&cat)).unwrap(),
        dst: Space::new(h, g, SigmaClass::empty(&cat)).unwrap(),
        iota,
    }
}
