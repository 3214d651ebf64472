//! Seeded random finite instances: functors on short chains of objects, value
//! lattices, sub-functor inclusions and diagrams.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::order::{FiniteLattice, FinitePoset, FinitePreorder};

use super::category::{Finite2Category, SigmaClass};
use super::functor::{LatticeFunctor, PosetFunctor, PosetTransformation};
use super::transformation::Space;

/// A small poset for functor values.
pub fn random_poset<R: Rng>(rng: &mut R) -> FinitePoset {
    match rng.gen_range(0..5) {
        0 => FinitePoset::chain(1),
        1 => FinitePoset::chain(2),
        2 => FinitePoset::chain(3),
        3 => FinitePoset::discrete(2),
        _ => FinitePoset::from_pairs(["a", "b", "c"].map(String::from).to_vec(), &[(0, 2), (1, 2)])
            .expect("a V is a poset"),
    }
}

/// A lattice with at most four elements.
pub fn random_small_lattice<R: Rng>(rng: &mut R) -> FinitePoset {
    match rng.gen_range(0..3) {
        0 => FinitePoset::chain(2),
        1 => FinitePoset::chain(3),
        _ => FinitePoset::diamond(),
    }
}

/// A chain, the diamond, or the down-sets of a random poset on up to three points.
pub fn random_lattice<R: Rng>(rng: &mut R) -> FiniteLattice {
    match rng.gen_range(0..4) {
        0 => FiniteLattice::chain(rng.gen_range(1..5)),
        1 => FiniteLattice::diamond(),
        _ => {
            let n = rng.gen_range(1..4);
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.4)).collect();
            let labels = (0..n).map(|i| i.to_string()).collect();
            FiniteLattice::downsets(&FinitePoset::from_pairs(labels, &pairs).expect("forward pairs are acyclic"))
        }
    }
}

/// A preorder on `n` points generated by random pairs, cycles allowed.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize) -> FinitePreorder {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && rng.gen_bool(0.25))
        .collect();
    FinitePreorder::generated(n, &pairs).expect("pairs are in range")
}

fn is_monotone(p: &FinitePreorder, q: &FinitePreorder, table: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..p.len()).all(|y| !p.leq(x, y) || q.leq(table[x], table[y])))
}

/// A random monotone map by rejection, falling back to a constant map.
pub fn random_monotone<R: Rng>(rng: &mut R, p: &FinitePreorder, q: &FinitePreorder) -> Vec<usize> {
    assert!(!q.is_empty() || p.is_empty(), "no map into the empty preorder");
    for _ in 0..64 {
        let table: Vec<usize> = (0..p.len()).map(|_| rng.gen_range(0..q.len())).collect();
        if is_monotone(p, q, &table) {
            return table;
        }
    }
    vec![rng.gen_range(0..q.len().max(1)); p.len()]
}

/// A monotone diagram `D → L`: random values closed upwards by joins.
pub fn random_diagram<R: Rng>(rng: &mut R, d: &FinitePreorder, lattice: &FiniteLattice) -> Vec<usize> {
    let seeds: Vec<usize> = (0..d.len()).map(|_| rng.gen_range(0..lattice.len())).collect();
    (0..d.len())
        .map(|x| lattice.join_all((0..d.len()).filter(|&y| d.leq(y, x)).map(|y| seeds[y])))
        .collect()
}

/// The chain category `0 → 1 → … → n-1` with all composites.
fn chain_category(n: usize) -> Arc<Finite2Category> {
    let names: Vec<String> = ["A", "B", "C", "D"][..n].iter().map(|s| s.to_string()).collect();
    let order = FinitePreorder::generated(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("in range");
    Arc::new(Finite2Category::from_preorder(names, &order))
}

/// The functor on a chain category with the given values and generating maps
/// `steps[i]: P_i → P_{i+1}`.
fn chain_functor(cat: &Arc<Finite2Category>, objects: Vec<Arc<FinitePoset>>, steps: &[Vec<usize>]) -> PosetFunctor {
    let tables = cat
        .morphisms()
        .iter()
        .map(|m| {
            (0..objects[m.source].len())
                .map(|x| (m.source..m.target).fold(x, |y, i| steps[i][y]))
                .collect()
        })
        .collect();
    PosetFunctor::new(cat.clone(), objects, tables).expect("composites of generators form a functor")
}

fn random_chain_functor<R: Rng>(
    rng: &mut R,
    cat: &Arc<Finite2Category>,
    pick: impl Fn(&mut R) -> FinitePoset,
) -> PosetFunctor {
    let n = cat.object_count();
    let objects: Vec<Arc<FinitePoset>> = (0..n).map(|_| Arc::new(pick(rng))).collect();
    let steps: Vec<Vec<usize>> = (1..n)
        .map(|i| {
            if objects[i - 1] == objects[i] && rng.gen_bool(0.5) {
                (0..objects[i].len()).collect()
            } else {
                random_monotone(rng, objects[i - 1].preorder(), objects[i].preorder())
            }
        })
        .collect();
    chain_functor(cat, objects, &steps)
}

fn random_sigma<R: Rng>(rng: &mut R, cat: &Finite2Category) -> SigmaClass {
    if rng.gen_bool(0.5) {
        SigmaClass::empty(cat)
    } else {
        SigmaClass::all(cat)
    }
}

/// `F → G` over a chain of one to three objects, with Σ empty or everything.
pub fn random_space<R: Rng>(rng: &mut R) -> Space<LatticeFunctor> {
    let cat = chain_category(rng.gen_range(1..4));
    let f = random_chain_functor(rng, &cat, |r| random_poset(r));
    let g = random_chain_functor(rng, &cat, |r| random_small_lattice(r));
    let sigma = random_sigma(rng, &cat);
    Space::new(Arc::new(f), Arc::new(LatticeFunctor::new(g).expect("values are lattices")), sigma)
        .expect("shapes match")
}

/// An inclusion of a sub-functor `F ⊆ H`, which is an order embedding at
/// every object, with both spaces sharing the target and Σ.
pub struct KanInstance {
    pub source: Space<LatticeFunctor>,
    pub target: Space<LatticeFunctor>,
    pub iota: PosetTransformation,
}

pub fn random_kan_instance<R: Rng>(rng: &mut R) -> KanInstance {
    let cat = chain_category(rng.gen_range(1..3));
    let n = cat.object_count();
    let h = random_chain_functor(rng, &cat, |r| random_poset(r));
    let g = Arc::new(LatticeFunctor::new(random_chain_functor(rng, &cat, |r| random_small_lattice(r))).expect("lattices"));

    // random nonempty subsets, closed forward along the generators
    let mut keep: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            let size = h.size(a);
            let mut v: Vec<bool> = (0..size).map(|_| rng.gen_bool(0.5)).collect();
            let forced = *(0..size).collect::<Vec<_>>().choose(rng).expect("nonempty poset");
            v[forced] = true;
            v
        })
        .collect();
    for a in 1..n {
        let step = cat.hom(a - 1, a)[0];
        for x in 0..h.size(a - 1) {
            if keep[a - 1][x] {
                keep[a][h.apply(step, x)] = true;
            }
        }
    }
    let members: Vec<Vec<usize>> = keep.iter().map(|k| (0..k.len()).filter(|&x| k[x]).collect()).collect();
    let objects: Vec<Arc<FinitePoset>> = (0..n)
        .map(|a| {
            let p = h.poset(a);
            let m = &members[a];
            let labels = m.iter().map(|&x| p.label(x).to_string()).collect();
            let leq = m.iter().map(|&x| m.iter().map(|&y| p.leq(x, y)).collect()).collect();
            Arc::new(FinitePoset::new(labels, leq).expect("induced order"))
        })
        .collect();
    let steps: Vec<Vec<usize>> = (1..n)
        .map(|a| {
            let step = cat.hom(a - 1, a)[0];
            members[a - 1]
                .iter()
                .map(|&x| members[a].binary_search(&h.apply(step, x)).expect("closed forward"))
                .collect()
        })
        .collect();
    let f = Arc::new(chain_functor(&cat, objects, &steps));
    let h = Arc::new(h);
    let iota = PosetTransformation::new(&f, &h, members).expect("inclusion is natural");
    let sigma = SigmaClass::empty(&cat);
    KanInstance {
        source: Space::new(f, g.clone(), sigma.clone()).expect("shapes match"),
        target: Space::new(h, g, sigma).expect("shapes match"),
        iota,
    }
}
