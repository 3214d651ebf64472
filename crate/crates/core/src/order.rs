//! Finite posets, finite lattices and monotone maps.
//!
//! Elements are identified by their index `0..len()`. Labels are only used for
//! I/O and diagnostics.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation matrix has wrong shape (expected {expected}x{expected})")]
    Shape { expected: usize },
    #[error("element {0} is not in the poset (size {1})")]
    NotAnElement(usize, usize),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("poset has no {0} element")]
    NoBound(&'static str),
    #[error("map is not monotone: {0} <= {1} but image {2} is not <= {3}")]
    NotMonotone(usize, usize, usize, usize),
    #[error("map table has {got} entries, source has {expected} elements")]
    TableSize { got: usize, expected: usize },
    #[error("maps cannot be composed: target and source posets differ")]
    Incompatible,
}

/// A finite preorder given by its full relation matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    leq: Vec<Vec<bool>>,
}

impl FinitePreorder {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self, OrderError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(OrderError::Shape { expected: n });
        }
        for (a, row) in leq.iter().enumerate() {
            if !row[a] {
                return Err(OrderError::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(OrderError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(FinitePreorder { leq })
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn generated(n: usize, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n {
                return Err(OrderError::NotAnElement(a, n));
            }
            if b >= n {
                return Err(OrderError::NotAnElement(b, n));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(FinitePreorder { leq })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_antisymmetric(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.leq[a][b] && self.leq[b][a] {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

impl fmt::Debug for FinitePreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq[a][b])
            .collect();
        f.debug_struct("FinitePreorder")
            .field("len", &self.len())
            .field("strict_pairs", &pairs)
            .finish()
    }
}

/// A finite partially ordered set.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    order: FinitePreorder,
}

impl FinitePoset {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, OrderError> {
        if labels.len() != leq.len() {
            return Err(OrderError::Shape {
                expected: labels.len(),
            });
        }
        let order = FinitePreorder::new(leq)?;
        if let Some((a, b)) = order.is_antisymmetric() {
            return Err(OrderError::NotAntisymmetric(a, b));
        }
        Ok(FinitePoset { labels, order })
    }

    /// Poset generated by the given covering (or arbitrary) pairs.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let order = FinitePreorder::generated(labels.len(), pairs)?;
        if let Some((a, b)) = order.is_antisymmetric() {
            return Err(OrderError::NotAntisymmetric(a, b));
        }
        Ok(FinitePoset { labels, order })
    }

    /// `0 < 1 < ... < n-1`, labelled by the decimal index.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FinitePoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            order: FinitePreorder { leq },
        }
    }

    pub fn discrete(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        FinitePoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            order: FinitePreorder { leq },
        }
    }

    /// The diamond `bot < a, b < top` with elements `[bot, a, b, top]`.
    pub fn diamond() -> Self {
        FinitePoset::from_pairs(
            ["bot", "a", "b", "top"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .expect("diamond is a poset")
    }

    /// Product order on tuples; element `i` has mixed-radix digits over `factors`
    /// with the first factor least significant.
    pub fn product(factors: &[&FinitePoset]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
        let n: usize = sizes.iter().product();
        let digits = |mut i: usize| {
            sizes
                .iter()
                .map(|&s| {
                    let d = i % s;
                    i /= s;
                    d
                })
                .collect::<Vec<_>>()
        };
        let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let leq = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        factors
                            .iter()
                            .enumerate()
                            .all(|(k, p)| p.leq(all[a][k], all[b][k]))
                    })
                    .collect()
            })
            .collect();
        let labels = all
            .iter()
            .map(|d| {
                let parts: Vec<&str> = d
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| factors[k].label(x))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        FinitePoset {
            labels,
            order: FinitePreorder { leq },
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize, OrderError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| OrderError::UnknownLabel(label.to_string()))
    }

    pub fn preorder(&self) -> &FinitePreorder {
        &self.order
    }

    pub fn check_element(&self, a: usize) -> Result<(), OrderError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(OrderError::NotAnElement(a, self.len()))
        }
    }

    /// Least upper bound of `set`, if one exists.
    pub fn least_upper_bound(&self, set: &[usize]) -> Option<usize> {
        let ub: Vec<usize> = (0..self.len())
            .filter(|&c| set.iter().all(|&s| self.leq(s, c)))
            .collect();
        least_of(&ub, |a, b| self.leq(a, b))
    }

    /// Greatest lower bound of `set`, if one exists.
    pub fn greatest_lower_bound(&self, set: &[usize]) -> Option<usize> {
        let lb: Vec<usize> = (0..self.len())
            .filter(|&c| set.iter().all(|&s| self.leq(c, s)))
            .collect();
        least_of(&lb, |a, b| self.leq(b, a))
    }
}

fn least_of(candidates: &[usize], leq: impl Fn(usize, usize) -> bool) -> Option<usize> {
    let mut m = *candidates.first()?;
    for &c in candidates {
        if leq(c, m) {
            m = c;
        }
    }
    candidates.iter().all(|&c| leq(m, c)).then_some(m)
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq(a, b))
            .map(|(a, b)| (self.label(a), self.label(b)))
            .collect();
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("strict_pairs", &pairs)
            .finish()
    }
}

/// A finite (hence complete) lattice with precomputed binary join and meet tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Arc<FinitePoset>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    pub fn from_poset(poset: Arc<FinitePoset>) -> Result<Self, OrderError> {
        let n = poset.len();
        let bottom = poset
            .greatest_lower_bound(&(0..n).collect::<Vec<_>>())
            .ok_or(OrderError::NoBound("bottom"))?;
        let top = poset
            .least_upper_bound(&(0..n).collect::<Vec<_>>())
            .ok_or(OrderError::NoBound("top"))?;
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let j = poset
                    .least_upper_bound(&[a, b])
                    .ok_or(OrderError::NoJoin(a, b))?;
                let m = poset
                    .greatest_lower_bound(&[a, b])
                    .ok_or(OrderError::NoMeet(a, b))?;
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        Ok(FiniteLattice {
            poset,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn chain(n: usize) -> Self {
        assert!(n > 0, "the empty poset is not a lattice");
        FiniteLattice::from_poset(Arc::new(FinitePoset::chain(n))).expect("chains are lattices")
    }

    pub fn diamond() -> Self {
        FiniteLattice::from_poset(Arc::new(FinitePoset::diamond())).expect("diamond is a lattice")
    }

    /// The lattice of down-sets of `base`, ordered by inclusion.
    pub fn downsets(base: &FinitePoset) -> Self {
        let n = base.len();
        assert!(n <= 16, "down-set lattice enumeration limited to 16 generators");
        let is_down = |mask: u32| {
            (0..n).all(|b| {
                mask & (1 << b) == 0 || (0..n).all(|a| !base.leq(a, b) || mask & (1 << a) != 0)
            })
        };
        let sets: Vec<u32> = (0..(1u32 << n)).filter(|&m| is_down(m)).collect();
        let labels = sets
            .iter()
            .map(|&m| {
                let members: Vec<&str> = (0..n)
                    .filter(|&i| m & (1 << i) != 0)
                    .map(|i| base.label(i))
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let leq = sets
            .iter()
            .map(|&a| sets.iter().map(|&b| a & !b == 0).collect())
            .collect();
        let poset = FinitePoset::new(labels, leq).expect("inclusion order");
        FiniteLattice::from_poset(Arc::new(poset)).expect("down-sets form a lattice")
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    /// Join of an arbitrary finite family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join[acc][x])
    }

    /// Meet of an arbitrary finite family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet[acc][x])
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("poset", &self.poset)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

pub fn lattice_join(lattice: &FiniteLattice, set: &[usize]) -> Result<usize, OrderError> {
    for &s in set {
        lattice.poset.check_element(s)?;
    }
    Ok(lattice.join_all(set.iter().copied()))
}

pub fn lattice_meet(lattice: &FiniteLattice, set: &[usize]) -> Result<usize, OrderError> {
    for &s in set {
        lattice.poset.check_element(s)?;
    }
    Ok(lattice.meet_all(set.iter().copied()))
}

/// A monotone map between finite posets.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        table: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if table.len() != source.len() {
            return Err(OrderError::TableSize {
                got: table.len(),
                expected: source.len(),
            });
        }
        for &v in &table {
            target.check_element(v)?;
        }
        if let Some((a, b)) = monotonicity_witness(&source, &target, &table) {
            return Err(OrderError::NotMonotone(a, b, table[a], table[b]));
        }
        Ok(MonotoneMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(poset: Arc<FinitePoset>) -> Self {
        let table = (0..poset.len()).collect();
        MonotoneMap {
            source: poset.clone(),
            target: poset,
            table,
        }
    }

    pub fn constant(source: Arc<FinitePoset>, target: Arc<FinitePoset>, value: usize) -> Self {
        assert!(value < target.len());
        let table = vec![value; source.len()];
        MonotoneMap {
            source,
            target,
            table,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap, OrderError> {
        if *first.target != *self.source {
            return Err(OrderError::Incompatible);
        }
        Ok(MonotoneMap {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    /// Pointwise order `self <= other` (same source and target assumed).
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.target.leq(a, b))
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap")
            .field("table", &self.table)
            .finish()
    }
}

/// First pair `a <= b` whose images are not ordered.
pub fn monotonicity_witness(
    source: &FinitePoset,
    target: &FinitePoset,
    table: &[usize],
) -> Option<(usize, usize)> {
    let n = source.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| source.leq(a, b) && !target.leq(table[a], table[b]))
}

/// Exhaustive subset enumeration is used up to this many source elements; above
/// it the equivalent check on the empty set and all pairs is used.
const SUBSET_ENUMERATION_LIMIT: usize = 14;

fn lattices_of(f: &MonotoneMap) -> Result<(FiniteLattice, FiniteLattice), OrderError> {
    Ok((
        FiniteLattice::from_poset(f.source.clone())?,
        FiniteLattice::from_poset(f.target.clone())?,
    ))
}

fn subsets_to_check(n: usize) -> Box<dyn Iterator<Item = Vec<usize>>> {
    if n <= SUBSET_ENUMERATION_LIMIT {
        Box::new((0u32..(1u32 << n)).map(move |m| (0..n).filter(|&i| m & (1 << i) != 0).collect()))
    } else {
        Box::new(
            std::iter::once(Vec::new())
                .chain((0..n).flat_map(move |a| ((a + 1)..n).map(move |b| vec![a, b]))),
        )
    }
}

/// A subset `S` with `f(join S) != join f(S)`, if any.
pub fn join_preservation_witness(f: &MonotoneMap) -> Result<Option<Vec<usize>>, OrderError> {
    let (src, tgt) = lattices_of(f)?;
    Ok(subsets_to_check(src.len()).find(|s| {
        f.apply(src.join_all(s.iter().copied())) != tgt.join_all(s.iter().map(|&x| f.apply(x)))
    }))
}

/// A subset `S` with `f(meet S) != meet f(S)`, if any.
pub fn meet_preservation_witness(f: &MonotoneMap) -> Result<Option<Vec<usize>>, OrderError> {
    let (src, tgt) = lattices_of(f)?;
    Ok(subsets_to_check(src.len()).find(|s| {
        f.apply(src.meet_all(s.iter().copied())) != tgt.meet_all(s.iter().map(|&x| f.apply(x)))
    }))
}

pub fn preserves_joins(f: &MonotoneMap) -> Result<bool, OrderError> {
    Ok(join_preservation_witness(f)?.is_none())
}

pub fn preserves_meets(f: &MonotoneMap) -> Result<bool, OrderError> {
    Ok(meet_preservation_witness(f)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arc(p: FinitePoset) -> Arc<FinitePoset> {
        Arc::new(p)
    }

    #[test]
    fn poset_axioms_are_checked() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let not_refl = vec![vec![true, false], vec![false, false]];
        assert_eq!(
            FinitePoset::new(l(2), not_refl),
            Err(OrderError::NotReflexive(1))
        );
        let not_anti = vec![vec![true, true], vec![true, true]];
        assert!(matches!(
            FinitePoset::new(l(2), not_anti),
            Err(OrderError::NotAntisymmetric(0, 1))
        ));
        let not_trans = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            FinitePoset::new(l(3), not_trans),
            Err(OrderError::NotTransitive(..))
        ));
    }

    #[test]
    fn chain_join() {
        let c = FiniteLattice::chain(3);
        assert_eq!(lattice_join(&c, &[0, 2]).unwrap(), 2);
        assert_eq!(lattice_meet(&c, &[1, 2]).unwrap(), 1);
    }

    #[test]
    fn empty_join_and_meet() {
        for l in [FiniteLattice::chain(4), FiniteLattice::diamond()] {
            assert_eq!(lattice_join(&l, &[]).unwrap(), l.bottom());
            assert_eq!(lattice_meet(&l, &[]).unwrap(), l.top());
        }
    }

    #[test]
    fn diamond_join_by_brute_force() {
        let d = FiniteLattice::diamond();
        let upper: Vec<usize> = (0..4).filter(|&c| d.leq(1, c) && d.leq(2, c)).collect();
        let least = upper
            .iter()
            .copied()
            .find(|&u| upper.iter().all(|&v| d.leq(u, v)))
            .unwrap();
        assert_eq!(least, 3);
        assert_eq!(lattice_join(&d, &[1, 2]).unwrap(), least);
        assert_eq!(lattice_meet(&d, &[1, 2]).unwrap(), 0);
    }

    #[test]
    fn element_outside_lattice_rejected() {
        let c = FiniteLattice::chain(2);
        assert_eq!(lattice_join(&c, &[5]), Err(OrderError::NotAnElement(5, 2)));
    }

    #[test]
    fn non_lattice_detected() {
        // two incomparable maximal elements
        let p = FinitePoset::from_pairs(vec!["0".into(), "a".into(), "b".into()], &[(0, 1), (0, 2)])
            .unwrap();
        assert!(FiniteLattice::from_poset(arc(p)).is_err());
    }

    #[test]
    fn identity_preserves_everything() {
        let d = arc(FinitePoset::diamond());
        let id = MonotoneMap::identity(d);
        assert!(preserves_joins(&id).unwrap());
        assert!(preserves_meets(&id).unwrap());
    }

    #[test]
    fn diamond_to_chain_fails_join_preservation() {
        let f = MonotoneMap::new(
            arc(FinitePoset::diamond()),
            arc(FinitePoset::chain(3)),
            vec![0, 1, 1, 2],
        )
        .unwrap();
        assert!(!preserves_joins(&f).unwrap());
        let witness = join_preservation_witness(&f).unwrap().unwrap();
        assert_eq!(witness, vec![1, 2]);
    }

    #[test]
    fn constant_bottom_preserves_joins() {
        let f = MonotoneMap::constant(arc(FinitePoset::diamond()), arc(FinitePoset::chain(3)), 0);
        assert!(preserves_joins(&f).unwrap());
        // f(meet of empty) = f(top) = 0 but the empty meet in the chain is 2
        assert!(!preserves_meets(&f).unwrap());
    }

    #[test]
    fn non_monotone_table_rejected() {
        let err = MonotoneMap::new(
            arc(FinitePoset::chain(2)),
            arc(FinitePoset::chain(2)),
            vec![1, 0],
        );
        assert_eq!(err, Err(OrderError::NotMonotone(0, 1, 1, 0)));
    }

    #[test]
    fn downset_lattice_of_antichain_is_boolean() {
        let l = FiniteLattice::downsets(&FinitePoset::discrete(3));
        assert_eq!(l.len(), 8);
    }

    #[test]
    fn product_of_chains() {
        let c2 = FinitePoset::chain(2);
        let c3 = FinitePoset::chain(3);
        let p = FinitePoset::product(&[&c2, &c3]);
        assert_eq!(p.len(), 6);
        let l = FiniteLattice::from_poset(Arc::new(p)).unwrap();
        // (1,0) join (0,2) = (1,2): index 1 + 2*2 = 5
        assert_eq!(l.join2(1, 4), 5);
    }

    fn arb_lattice() -> impl Strategy<Value = FiniteLattice> {
        (1usize..5, proptest::collection::vec(any::<bool>(), 16)).prop_map(|(n, bits)| {
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    if bits[a * 4 + b] {
                        pairs.push((a, b));
                    }
                }
            }
            let base =
                FinitePoset::from_pairs((0..n).map(|i| i.to_string()).collect(), &pairs).unwrap();
            FiniteLattice::downsets(&base)
        })
    }

    proptest! {
        #[test]
        fn join_is_associative_over_unions(l in arb_lattice(), m1 in any::<u32>(), m2 in any::<u32>()) {
            let n = l.len();
            let pick = |m: u32| (0..n).filter(|&i| m & (1 << (i % 32)) != 0).collect::<Vec<_>>();
            let s1 = pick(m1);
            let s2 = pick(m2);
            let mut union = s1.clone();
            union.extend(&s2);
            let lhs = lattice_join(&l, &union).unwrap();
            let rhs = lattice_join(&l, &[lattice_join(&l, &s1).unwrap(), lattice_join(&l, &s2).unwrap()]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn join_table_agrees_with_order(l in arb_lattice()) {
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let j = l.join2(a, b);
                    prop_assert!(l.leq(a, j) && l.leq(b, j));
                    for c in 0..l.len() {
                        if l.leq(a, c) && l.leq(b, c) {
                            prop_assert!(l.leq(j, c));
                        }
                    }
                }
            }
        }
    }
}
