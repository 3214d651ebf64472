//! Set functions as transformations between functors on finite index sets.
//!
//! Objects are the sets `k = {0, …, k−1}` for `k ≤ K`. In the `Part` variant
//! morphisms are partial maps, ordered by extension of the domain, and `F_B k`
//! is the set of `k`-indexed families of pairwise disjoint algebra elements,
//! ordered pointwise by inclusion. In the `Set` variant morphisms are total
//! maps and `F_B k` consists of the `k`-indexed partitions of the ground set.
//! Both send a map `f` to the union over fibres. `G k = [0,∞]^k` sums over
//! fibres, and Σ is the class of injective maps.
//!
//! A family is stored as the assignment atom ↦ index (or `None` when the atom
//! lies in no member).
//!
//! The kind of an encoded table is classified faithfully once the truncation
//! is large enough: `K ≥ 2` for partial maps (binary merges give
//! subadditivity and superadditivity) and `K ≥ 3` for total maps (a
//! three-block partition is needed to see two disjoint sets that do not
//! cover the ground set).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ext::ExtValue;
use crate::order::FinitePoset;
use crate::twocat::{
    Finite2Category, Kind, Morphism, PosetFunctor, SigmaClass, Space, Transformation, ValueFunctor,
    WeightFunctor,
};

use super::algebra::{AtomSet, SetAlgebra};
use super::table::{MeasureKind, MeasureTable};
use super::MeasureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Part,
    Set,
}

type IndexMap = Vec<Option<usize>>;

#[derive(Debug, Clone)]
pub struct TruncatedIndexCategory {
    variant: Variant,
    bound: usize,
    category: Arc<Finite2Category>,
    maps: Vec<IndexMap>,
    sigma: SigmaClass,
}

fn all_maps(k: usize, l: usize, partial: bool) -> Vec<IndexMap> {
    let choices: Vec<Option<usize>> = partial
        .then_some(None)
        .into_iter()
        .chain((0..l).map(Some))
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: IndexMap| {
                choices.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn map_name(k: usize, l: usize, map: &IndexMap) -> String {
    let parts: Vec<String> = map
        .iter()
        .map(|b| b.map_or_else(|| "_".to_string(), |b| b.to_string()))
        .collect();
    format!("{k}→{l}[{}]", parts.join(","))
}

impl TruncatedIndexCategory {
    pub fn new(variant: Variant, bound: usize) -> Result<Self, MeasureError> {
        if bound > 4 {
            return Err(MeasureError::TooLarge(format!("truncation bound {bound} exceeds 4")));
        }
        let partial = variant == Variant::Part;
        let mut morphisms = Vec::new();
        let mut maps = Vec::new();
        let mut identities = vec![0; bound + 1];
        let mut index: HashMap<(usize, usize, IndexMap), usize> = HashMap::new();
        for k in 0..=bound {
            for l in 0..=bound {
                for map in all_maps(k, l, partial) {
                    if k == l && map.iter().enumerate().all(|(a, b)| *b == Some(a)) {
                        identities[k] = morphisms.len();
                    }
                    index.insert((k, l, map.clone()), morphisms.len());
                    morphisms.push(Morphism {
                        name: map_name(k, l, &map),
                        source: k,
                        target: l,
                    });
                    maps.push(map);
                }
            }
        }
        let compose = |g: usize, f: usize| {
            let h: IndexMap = maps[f].iter().map(|b| b.and_then(|b| maps[g][b])).collect();
            index[&(morphisms[f].source, morphisms[g].target, h)]
        };
        let cell = |f: usize, g: usize| {
            partial && maps[f].iter().zip(&maps[g]).all(|(x, y)| x.is_none() || x == y)
        };
        let objects = (0..=bound).map(|k| k.to_string()).collect();
        let category = Finite2Category::build(objects, morphisms.clone(), identities, compose, cell)?;
        let sigma = SigmaClass::from_predicate(&category, |f| {
            let mut seen = vec![false; category.morphism(f).target];
            maps[f].iter().flatten().all(|&b| !std::mem::replace(&mut seen[b], true))
        });
        Ok(TruncatedIndexCategory {
            variant,
            bound,
            category: Arc::new(category),
            maps,
            sigma,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn category(&self) -> &Arc<Finite2Category> {
        &self.category
    }

    pub fn sigma(&self) -> &SigmaClass {
        &self.sigma
    }

    pub fn index_map(&self, f: usize) -> &IndexMap {
        &self.maps[f]
    }
}

/// The functors `F_B` and `G` over a truncation, for one algebra.
#[derive(Clone)]
pub struct MeasureEncoding {
    algebra: SetAlgebra,
    trunc: Arc<TruncatedIndexCategory>,
    /// Per object: the families, as atom assignments, in element order.
    families: Vec<Vec<IndexMap>>,
    lookup: Vec<HashMap<IndexMap, usize>>,
    space: Space<WeightFunctor>,
}

impl MeasureEncoding {
    /// `cap` bounds the weights (see [`WeightFunctor`]); `None` gives the
    /// formula-only backend with arbitrary extended reals.
    pub fn new(
        algebra: SetAlgebra,
        variant: Variant,
        bound: usize,
        cap: Option<u64>,
    ) -> Result<Self, MeasureError> {
        let min_bound = match variant {
            Variant::Part => 1,
            Variant::Set => 2,
        };
        if bound < min_bound {
            return Err(MeasureError::Input(format!(
                "the {variant:?} encoding needs a truncation bound of at least {min_bound}"
            )));
        }
        let trunc = Arc::new(TruncatedIndexCategory::new(variant, bound)?);
        Self::with_truncation(algebra, trunc, cap)
    }

    pub fn with_truncation(
        algebra: SetAlgebra,
        trunc: Arc<TruncatedIndexCategory>,
        cap: Option<u64>,
    ) -> Result<Self, MeasureError> {
        let atoms = algebra.atom_count();
        let partial = trunc.variant == Variant::Part;
        let cat = trunc.category.clone();
        let families: Vec<Vec<IndexMap>> = (0..=trunc.bound).map(|k| all_maps(atoms, k, partial)).collect();
        if families.iter().map(Vec::len).max().unwrap_or(0) > 4096 {
            return Err(MeasureError::TooLarge("more than 4096 families per index set".into()));
        }
        let lookup: Vec<HashMap<IndexMap, usize>> = families
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
            .collect();
        let posets = families
            .iter()
            .map(|fs| {
                let labels = fs.iter().map(|x| family_label(&algebra, x)).collect();
                let leq = fs
                    .iter()
                    .map(|x| {
                        fs.iter()
                            .map(|y| x.iter().zip(y).all(|(p, q)| p.is_none() || p == q))
                            .collect()
                    })
                    .collect();
                FinitePoset::new(labels, leq)
                    .map(Arc::new)
                    .map_err(|e| MeasureError::Input(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tables = (0..cat.morphism_count())
            .map(|f| {
                let m = cat.morphism(f);
                families[m.source]
                    .iter()
                    .map(|x| {
                        let image: IndexMap = x.iter().map(|a| a.and_then(|a| trunc.maps[f][a])).collect();
                        lookup[m.target][&image]
                    })
                    .collect()
            })
            .collect();
        let source = Arc::new(PosetFunctor::new(cat.clone(), posets, tables)?);
        let target = Arc::new(WeightFunctor::new(
            cat.clone(),
            (0..=trunc.bound).collect(),
            trunc.maps.clone(),
            cap,
        )?);
        let space = Space::new(source, target, trunc.sigma.clone())?;
        Ok(MeasureEncoding {
            algebra,
            trunc,
            families,
            lookup,
            space,
        })
    }

    pub fn space(&self) -> &Space<WeightFunctor> {
        &self.space
    }

    pub fn truncation(&self) -> &Arc<TruncatedIndexCategory> {
        &self.trunc
    }

    pub fn algebra(&self) -> &SetAlgebra {
        &self.algebra
    }

    /// The member of a family at index `a`.
    pub fn member(&self, x: &IndexMap, a: usize) -> AtomSet {
        x.iter()
            .enumerate()
            .filter(|(_, b)| **b == Some(a))
            .fold(0, |s, (t, _)| s | 1 << t)
    }

    /// `λ_k((B_a)_a) = (μ(B_a))_a`, checked against the declared kind.
    pub fn encode(&self, m: &MeasureTable) -> Result<Transformation<Vec<ExtValue>>, MeasureError> {
        if m.algebra() != &self.algebra {
            return Err(MeasureError::MixedAlgebras);
        }
        let components = self
            .families
            .iter()
            .enumerate()
            .map(|(k, fs)| {
                fs.iter()
                    .map(|x| (0..k).map(|a| m.value(self.member(x, a)).clone()).collect())
                    .collect()
            })
            .collect();
        let t = self.space.family(components)?;
        let required = match m.kind() {
            MeasureKind::Premeasure => Some(Kind::Strict),
            MeasureKind::Outer => Some(Kind::Lax),
            MeasureKind::Inner => Some(Kind::Colax),
            MeasureKind::General => None,
        };
        if let Some(kind) = required {
            let report = self.space.classify(&t);
            if !report.is(kind) {
                let witness = report
                    .sigma_witness
                    .or(report.lax_witness)
                    .or(report.colax_witness)
                    .map(|w| w.to_string())
                    .unwrap_or_default();
                return Err(MeasureError::WrongKind {
                    expected: m.kind(),
                    witness: format!("encoding is not {kind}: {witness}"),
                });
            }
        }
        Ok(t)
    }

    /// The family whose member at `index` is `s` and which is otherwise
    /// empty (`Part`) or the complement of `s` at the other index (`Set`).
    fn probe(&self, s: AtomSet) -> (usize, usize, usize) {
        let atoms = self.algebra.atom_count();
        let (k, index, x): (usize, usize, IndexMap) = match self.trunc.variant {
            Variant::Part => (1, 0, (0..atoms).map(|t| (s >> t & 1 == 1).then_some(0)).collect()),
            Variant::Set => (2, 1, (0..atoms).map(|t| Some((s >> t & 1) as usize)).collect()),
        };
        (k, self.lookup[k][&x], index)
    }

    /// `μ(B) = λ_1((B))_0` (`Part`) or `μ(B) = τ_2((B^c, B))_1` (`Set`). The
    /// kind is read off the classification of `t`.
    pub fn decode(&self, t: &Transformation<Vec<ExtValue>>) -> Result<MeasureTable, MeasureError> {
        let values: Vec<ExtValue> = self
            .algebra
            .elements()
            .map(|s| {
                let (k, x, index) = self.probe(s);
                t.value(k, x)[index].clone()
            })
            .collect();
        let report = self.space.classify(t);
        let kind = if report.is_strict {
            MeasureKind::Premeasure
        } else if self.trunc.variant == Variant::Set {
            MeasureKind::General
        } else if report.is_lax {
            MeasureKind::Outer
        } else if report.is_colax {
            MeasureKind::Inner
        } else {
            MeasureKind::General
        };
        match MeasureTable::new(self.algebra.clone(), values.clone(), kind) {
            Ok(m) => Ok(m),
            Err(MeasureError::EmptyNotZero { .. }) => {
                MeasureTable::new(self.algebra.clone(), values, MeasureKind::General)
            }
            Err(e) => Err(e),
        }
    }

    /// Largest finite value a capped backend must represent for `m`.
    pub fn required_cap(tables: &[&MeasureTable]) -> Option<u64> {
        let mut top: u64 = 1;
        for m in tables {
            for v in m.values() {
                if v.is_infinite() {
                    continue;
                }
                let r = v.as_rational()?;
                if !r.is_integer() {
                    return None;
                }
                top = top.max(num_traits::ToPrimitive::to_u64(r.numer())?);
            }
        }
        top.checked_mul(m_atoms(tables))
    }

    pub fn target(&self) -> &WeightFunctor {
        self.space.target()
    }

    pub fn supports_fixpoints(&self) -> bool {
        self.space.target().supports_fixpoints()
    }
}

fn m_atoms(tables: &[&MeasureTable]) -> u64 {
    tables.first().map_or(1, |m| m.algebra().atom_count().max(1) as u64)
}

fn family_label(alg: &SetAlgebra, x: &IndexMap) -> String {
    let k = x.iter().flatten().max().map_or(0, |m| m + 1);
    let members: Vec<String> = (0..k)
        .map(|a| {
            let s = x
                .iter()
                .enumerate()
                .filter(|(_, b)| **b == Some(a))
                .fold(0, |s, (t, _)| s | 1 << t);
            alg.key(s)
        })
        .collect();
    // trailing empty members are implied by the object; keep the raw
    // assignment to make labels unique
    let raw: Vec<String> = x.iter().map(|b| b.map_or_else(|| "_".into(), |b| b.to_string())).collect();
    format!("({})<{}>", members.join(","), raw.join(""))
}
