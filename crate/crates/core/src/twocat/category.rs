//! Finite strict 2-categories whose hom-categories are posets.

use std::fmt;

use crate::order::{FinitePoset, FinitePreorder};

use super::TwoCatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Objects and morphisms are addressed by index. The 2-cells are encoded as a
/// partial order on each hom-set.
#[derive(Clone, PartialEq, Eq)]
pub struct Finite2Category {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    into: Vec<Vec<usize>>,
    compose: Vec<Vec<Option<usize>>>,
    cell: Vec<Vec<bool>>,
}

impl Finite2Category {
    /// Builds and validates a category from total data. `compose(g, f)` is only
    /// called for composable pairs (`target(f) == source(g)`) and must return
    /// the index of `g ∘ f`. `cell(f, g)` encodes a 2-cell `f ⇒ g` and is only
    /// called for parallel morphisms.
    pub fn build(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
        cell: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, TwoCatError> {
        let n = objects.len();
        let m = morphisms.len();
        for (i, mor) in morphisms.iter().enumerate() {
            if mor.source >= n || mor.target >= n {
                return Err(TwoCatError::Category(format!(
                    "morphism {} ({i}) has an unknown endpoint",
                    mor.name
                )));
            }
        }
        if identities.len() != n {
            return Err(TwoCatError::Category("one identity per object required".into()));
        }
        for (a, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].source != a || morphisms[id].target != a {
                return Err(TwoCatError::Category(format!(
                    "identity of {} is not an endomorphism of it",
                    objects[a]
                )));
            }
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut into = vec![Vec::new(); n];
        for (i, mor) in morphisms.iter().enumerate() {
            hom[mor.source][mor.target].push(i);
            into[mor.target].push(i);
        }
        let mut table = vec![vec![None; m]; m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target != morphisms[g].source {
                    continue;
                }
                let h = compose(g, f);
                if h >= m
                    || morphisms[h].source != morphisms[f].source
                    || morphisms[h].target != morphisms[g].target
                {
                    return Err(TwoCatError::Category(format!(
                        "composite {} ∘ {} has the wrong type",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
                table[g][f] = Some(h);
            }
        }
        let mut leq = vec![vec![false; m]; m];
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].source == morphisms[g].source
                    && morphisms[f].target == morphisms[g].target
                {
                    leq[f][g] = f == g || cell(f, g);
                }
            }
        }
        let order = FinitePreorder::new(leq.clone()).map_err(|e| {
            TwoCatError::Category(format!("2-cells do not form a preorder: {e}"))
        })?;
        if let Some((a, b)) = order.is_antisymmetric() {
            return Err(TwoCatError::Category(format!(
                "2-cells are not antisymmetric between {} and {}",
                morphisms[a].name, morphisms[b].name
            )));
        }
        let cat = Finite2Category {
            objects,
            morphisms,
            identities,
            hom,
            into,
            compose: table,
            cell: leq,
        };
        cat.validate()?;
        Ok(cat)
    }

    /// Builds a category from non-identity morphisms and the composites of
    /// non-identity composable pairs. Identities are added as morphisms
    /// `0..objects.len()`, named `id_<object>`; the given morphisms follow.
    /// Composites are triples `(g, f, g∘f)` and 2-cells pairs `(f, g)` over
    /// these combined indices; 2-cells are closed reflexively and transitively.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        composites: &[(usize, usize, usize)],
        cells: &[(usize, usize)],
    ) -> Result<Self, TwoCatError> {
        let n = objects.len();
        let mut all: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(a, name)| Morphism {
                name: format!("id_{name}"),
                source: a,
                target: a,
            })
            .collect();
        all.extend(morphisms.into_iter().map(|(name, source, target)| Morphism {
            name,
            source,
            target,
        }));
        let m = all.len();
        let mut table = vec![vec![None; m]; m];
        for &(g, f, h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(TwoCatError::Category(format!(
                    "composite ({g}, {f}, {h}) references an unknown morphism"
                )));
            }
            table[g][f] = Some(h);
        }
        for g in 0..m {
            for f in 0..m {
                if all[f].target != all.get(g).map_or(usize::MAX, |x| x.source) {
                    continue;
                }
                if g < n {
                    table[g][f].get_or_insert(f);
                } else if f < n {
                    table[g][f].get_or_insert(g);
                } else if table[g][f].is_none() {
                    return Err(TwoCatError::Category(format!(
                        "missing composite {} ∘ {}",
                        all[g].name, all[f].name
                    )));
                }
            }
        }
        if all.iter().any(|x| x.source >= n || x.target >= n) {
            return Err(TwoCatError::Category("morphism endpoint out of range".into()));
        }
        let closure = FinitePreorder::generated(m, cells)
            .map_err(|e| TwoCatError::Category(format!("bad 2-cell: {e}")))?;
        Finite2Category::build(
            objects,
            all,
            (0..n).collect(),
            |g, f| table[g][f].expect("checked above"),
            |f, g| closure.leq(f, g),
        )
    }

    /// The thin category of a preorder: one morphism `a → b` iff `a ≤ b`.
    pub fn from_preorder(names: Vec<String>, order: &FinitePreorder) -> Self {
        let n = order.len();
        let mut morphisms = Vec::new();
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if order.leq(a, b) {
                    index[a][b] = morphisms.len();
                    if a == b {
                        identities[a] = morphisms.len();
                    }
                    morphisms.push(Morphism {
                        name: format!("{}<={}", names[a], names[b]),
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        Finite2Category::build(
            names,
            morphisms,
            identities,
            |g, f| index[ends[f].0][ends[g].1],
            |_, _| false,
        )
        .expect("thin categories are valid")
    }

    /// The category of a poset, convenience wrapper around [`Self::from_preorder`].
    pub fn from_poset(poset: &FinitePoset) -> Self {
        Finite2Category::from_preorder(poset.labels().to_vec(), poset.preorder())
    }

    /// One object and only its identity.
    pub fn single_object(name: &str) -> Self {
        Finite2Category::new(vec![name.to_string()], vec![], &[], &[]).expect("valid")
    }

    fn validate(&self) -> Result<(), TwoCatError> {
        let m = self.morphisms.len();
        for f in 0..m {
            let s = self.identities[self.morphisms[f].source];
            let t = self.identities[self.morphisms[f].target];
            if self.compose[f][s] != Some(f) || self.compose[t][f] != Some(f) {
                return Err(TwoCatError::Category(format!(
                    "identities are not units for {}",
                    self.morphisms[f].name
                )));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose[g][f] else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose[h][g] else { continue };
                    if self.compose[h][gf] != self.compose[hg][f] {
                        return Err(TwoCatError::Category(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        for f in 0..m {
            for f2 in 0..m {
                if !self.cell[f][f2] {
                    continue;
                }
                for g in 0..m {
                    for g2 in 0..m {
                        if !self.cell[g][g2] {
                            continue;
                        }
                        if let (Some(a), Some(b)) = (self.compose[g][f], self.compose[g2][f2]) {
                            if !self.cell[a][b] {
                                return Err(TwoCatError::Category(format!(
                                    "composition is not monotone: {} ∘ {} vs {} ∘ {}",
                                    self.morphisms[g].name,
                                    self.morphisms[f].name,
                                    self.morphisms[g2].name,
                                    self.morphisms[f2].name
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Result<usize, TwoCatError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| TwoCatError::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize, TwoCatError> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| TwoCatError::UnknownMorphism(name.to_string()))
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// All morphisms with target `a`.
    pub fn arrows_into(&self, a: usize) -> &[usize] {
        &self.into[a]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Whether there is a 2-cell `f ⇒ g`.
    pub fn cell(&self, f: usize, g: usize) -> bool {
        self.cell[f][g]
    }
}

impl fmt::Debug for Finite2Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Finite2Category")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| format!("{}: {} -> {}", m.name, m.source, m.target))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A class of morphisms with respect to which transformations are required to
/// be strictly natural. No closure properties are imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaClass {
    members: Vec<bool>,
}

impl SigmaClass {
    pub fn empty(cat: &Finite2Category) -> Self {
        SigmaClass {
            members: vec![false; cat.morphism_count()],
        }
    }

    pub fn all(cat: &Finite2Category) -> Self {
        SigmaClass {
            members: vec![true; cat.morphism_count()],
        }
    }

    pub fn from_indices(cat: &Finite2Category, members: &[usize]) -> Result<Self, TwoCatError> {
        let mut s = SigmaClass::empty(cat);
        for &f in members {
            if f >= cat.morphism_count() {
                return Err(TwoCatError::UnknownMorphism(f.to_string()));
            }
            s.members[f] = true;
        }
        Ok(s)
    }

    pub fn from_predicate(cat: &Finite2Category, pred: impl Fn(usize) -> bool) -> Self {
        SigmaClass {
            members: (0..cat.morphism_count()).map(pred).collect(),
        }
    }

    #[inline]
    pub fn contains(&self, f: usize) -> bool {
        self.members[f]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// Number of morphisms of the underlying category.
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    /// Whether the class contains all identities and is closed under composition.
    pub fn is_subcategory(&self, cat: &Finite2Category) -> bool {
        (0..cat.object_count()).all(|a| self.contains(cat.identity(a)))
            && self.members().all(|g| {
                self.members()
                    .all(|f| cat.compose(g, f).is_none_or(|h| self.contains(h)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t0() -> Finite2Category {
        Finite2Category::new(vec!["A".into(), "B".into()], vec![("f".into(), 0, 1)], &[], &[])
            .unwrap()
    }

    #[test]
    fn t0_structure() {
        let c = t0();
        assert_eq!(c.morphism_count(), 3);
        assert_eq!(c.hom(0, 1), &[2]);
        assert_eq!(c.compose(1, 2), Some(2));
        assert_eq!(c.compose(2, 0), Some(2));
        assert_eq!(c.compose(2, 2), None);
        assert!(c.is_identity(0) && !c.is_identity(2));
    }

    #[test]
    fn missing_composite_rejected() {
        let err = Finite2Category::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 2)],
            &[],
            &[],
        );
        assert!(matches!(err, Err(TwoCatError::Category(_))));
    }

    #[test]
    fn non_monotone_composition_rejected() {
        // f <= f2 : A -> B, g : B -> B with g∘f = f2 and g∘f2 = f breaks monotonicity
        let err = Finite2Category::new(
            vec!["A".into(), "B".into()],
            vec![("f".into(), 0, 1), ("f2".into(), 0, 1), ("g".into(), 1, 1)],
            &[(4, 2, 3), (4, 3, 2), (4, 4, 1)],
            &[(2, 3)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn thin_category_of_chain() {
        let c = Finite2Category::from_poset(&FinitePoset::chain(3));
        assert_eq!(c.morphism_count(), 6);
        let sigma = SigmaClass::all(&c);
        assert!(sigma.is_subcategory(&c));
        assert!(!SigmaClass::empty(&c).is_subcategory(&c));
    }
}
