//! Finite set algebras given by an atom partition of `{0, …, n−1}`.
//!
//! Algebra elements are unions of atoms and are represented by the bitmask of
//! the atoms they contain.

use serde::Serialize;

use super::{MeasureError, MAX_ATOMS};

/// Bitmask over atom indices.
pub type AtomSet = u64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetAlgebra {
    ground: usize,
    atoms: Vec<Vec<usize>>,
    #[serde(skip)]
    atom_of: Vec<usize>,
}

impl SetAlgebra {
    /// The algebra with the given atoms. Atoms are kept in the given order.
    pub fn from_atoms(ground: usize, atoms: Vec<Vec<usize>>) -> Result<Self, MeasureError> {
        if atoms.len() > 63 {
            return Err(MeasureError::TooManyAtoms(atoms.len()));
        }
        let mut atom_of = vec![usize::MAX; ground];
        for (i, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(MeasureError::NotAPartition(format!("atom {i} is empty")));
            }
            for &x in atom {
                if x >= ground {
                    return Err(MeasureError::NotInGround(x));
                }
                if atom_of[x] != usize::MAX {
                    return Err(MeasureError::NotAPartition(format!("{x} lies in two atoms")));
                }
                atom_of[x] = i;
            }
        }
        if let Some(x) = atom_of.iter().position(|&a| a == usize::MAX) {
            return Err(MeasureError::NotAPartition(format!("{x} lies in no atom")));
        }
        let atoms = atoms
            .into_iter()
            .map(|mut a| {
                a.sort_unstable();
                a
            })
            .collect();
        Ok(SetAlgebra {
            ground,
            atoms,
            atom_of,
        })
    }

    /// The power set of `{0, …, n−1}`.
    pub fn power_set(ground: usize) -> Self {
        SetAlgebra::from_atoms(ground, (0..ground).map(|x| vec![x]).collect())
            .expect("singletons partition the ground set")
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn element_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn full(&self) -> AtomSet {
        (1u64 << self.atoms.len()) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = AtomSet> {
        0..(1u64 << self.atoms.len())
    }

    pub fn complement(&self, s: AtomSet) -> AtomSet {
        self.full() & !s
    }

    /// The points of the ground set in `s`, sorted.
    pub fn points(&self, s: AtomSet) -> Vec<usize> {
        let mut out: Vec<usize> = atom_indices(s)
            .flat_map(|i| self.atoms[i].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The algebra element consisting of exactly these points.
    pub fn from_points(&self, points: &[usize]) -> Result<AtomSet, MeasureError> {
        let mut s = 0;
        for &x in points {
            if x >= self.ground {
                return Err(MeasureError::NotInGround(x));
            }
            s |= 1 << self.atom_of[x];
        }
        if self.points(s).len() != dedup_len(points) {
            return Err(MeasureError::NotInAlgebra(format!("{points:?}")));
        }
        Ok(s)
    }

    /// The atom-index key `{i,j,…}` used in tables and JSON.
    pub fn key(&self, s: AtomSet) -> String {
        let parts: Vec<String> = atom_indices(s).map(|i| i.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn parse_key(&self, key: &str) -> Result<AtomSet, MeasureError> {
        let bad = || MeasureError::Input(format!("bad atom-set key {key:?}"));
        let inner = key
            .trim()
            .strip_prefix('{')
            .and_then(|k| k.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut s = 0;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| bad())?;
            if i >= self.atoms.len() {
                return Err(bad());
            }
            s |= 1 << i;
        }
        Ok(s)
    }

    pub fn check_size(&self) -> Result<(), MeasureError> {
        if self.atoms.len() > MAX_ATOMS {
            Err(MeasureError::TooManyAtoms(self.atoms.len()))
        } else {
            Ok(())
        }
    }
}

fn dedup_len(points: &[usize]) -> usize {
    let mut p = points.to_vec();
    p.sort_unstable();
    p.dedup();
    p.len()
}

pub fn atom_indices(s: AtomSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

/// Nonempty proper submasks of `s`.
pub fn proper_submasks(s: AtomSet) -> impl Iterator<Item = AtomSet> {
    let mut t = s;
    std::iter::from_fn(move || {
        t = (t.wrapping_sub(1)) & s;
        (t != 0).then_some(t)
    })
}

/// The algebra generated by the given subsets: points with the same
/// membership pattern across all generators form an atom.
pub fn generate_algebra(ground: usize, generators: &[Vec<usize>]) -> Result<SetAlgebra, MeasureError> {
    let mut signature = vec![Vec::with_capacity(generators.len()); ground];
    for g in generators {
        let mut member = vec![false; ground];
        for &x in g {
            if x >= ground {
                return Err(MeasureError::NotInGround(x));
            }
            member[x] = true;
        }
        for (x, m) in member.into_iter().enumerate() {
            signature[x].push(m);
        }
    }
    let mut atoms: Vec<Vec<usize>> = Vec::new();
    let mut keys: Vec<&Vec<bool>> = Vec::new();
    for x in 0..ground {
        match keys.iter().position(|k| **k == signature[x]) {
            Some(i) => atoms[i].push(x),
            None => {
                keys.push(&signature[x]);
                atoms.push(vec![x]);
            }
        }
    }
    SetAlgebra::from_atoms(ground, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Closure of the generators under complement and union, as point sets.
    fn brute_force_algebra(ground: usize, generators: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
        let full: BTreeSet<usize> = (0..ground).collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = generators.iter().map(|g| g.iter().copied().collect()).collect();
        sets.insert(BTreeSet::new());
        loop {
            let mut next = sets.clone();
            for a in &sets {
                next.insert(full.difference(a).copied().collect());
                for b in &sets {
                    next.insert(a.union(b).copied().collect());
                }
            }
            if next == sets {
                return sets;
            }
            sets = next;
        }
    }

    fn as_point_sets(alg: &SetAlgebra) -> BTreeSet<BTreeSet<usize>> {
        alg.elements().map(|s| alg.points(s).into_iter().collect()).collect()
    }

    #[test]
    fn generated_example() {
        let alg = generate_algebra(4, &[vec![0], vec![0, 1]]).unwrap();
        assert_eq!(alg.atoms(), &[vec![0], vec![1], vec![2, 3]]);
        assert_eq!(alg.element_count(), 8);
        assert_eq!(as_point_sets(&alg), brute_force_algebra(4, &[vec![0], vec![0, 1]]));
    }

    #[test]
    fn trivial_and_discrete() {
        let alg = generate_algebra(3, &[]).unwrap();
        assert_eq!(alg.atoms(), &[vec![0, 1, 2]]);
        assert_eq!(alg.element_count(), 2);
        let alg = generate_algebra(3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(alg, SetAlgebra::power_set(3));
    }

    #[test]
    fn rejects_foreign_points() {
        assert_eq!(generate_algebra(2, &[vec![2]]), Err(MeasureError::NotInGround(2)));
        let alg = generate_algebra(4, &[vec![0, 1]]).unwrap();
        assert!(matches!(alg.from_points(&[0]), Err(MeasureError::NotInAlgebra(_))));
        assert_eq!(alg.from_points(&[1, 0]).unwrap(), 1);
    }

    #[test]
    fn keys_round_trip() {
        let alg = SetAlgebra::power_set(3);
        for s in alg.elements() {
            assert_eq!(alg.parse_key(&alg.key(s)).unwrap(), s);
        }
        assert_eq!(alg.key(0b101), "{0,2}");
        assert!(alg.parse_key("{3}").is_err());
    }

    #[test]
    fn submasks() {
        let subs: Vec<_> = proper_submasks(0b101).collect();
        assert_eq!(subs, vec![0b100, 0b001]);
        assert_eq!(proper_submasks(0b1).count(), 0);
    }

    proptest! {
        #[test]
        fn generated_algebra_matches_closure(
            ground in 1usize..6,
            gens in prop::collection::vec(prop::collection::vec(0usize..6, 0..4), 0..4),
        ) {
            let gens: Vec<Vec<usize>> = gens
                .into_iter()
                .map(|g| g.into_iter().filter(|&x| x < ground).collect())
                .collect();
            let alg = generate_algebra(ground, &gens).unwrap();
            prop_assert_eq!(as_point_sets(&alg), brute_force_algebra(ground, &gens));
            for g in &gens {
                prop_assert!(alg.from_points(g).is_ok());
            }
        }
    }
}
