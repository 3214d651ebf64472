//! Subsets of ℕ: the finite–cofinite algebra and the eventually periodic sets
//! containing it.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CarathError;

/// A finite set `S` of naturals, or its complement `ℕ ∖ S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "indices", rename_all = "lowercase")]
pub enum CofinSet {
    Finite(BTreeSet<usize>),
    Cofinite(BTreeSet<usize>),
}

impl CofinSet {
    pub fn empty() -> Self {
        CofinSet::Finite(BTreeSet::new())
    }

    pub fn naturals() -> Self {
        CofinSet::Cofinite(BTreeSet::new())
    }

    pub fn finite(indices: impl IntoIterator<Item = usize>) -> Self {
        CofinSet::Finite(indices.into_iter().collect())
    }

    /// `ℕ` minus the given indices.
    pub fn cofinite(missing: impl IntoIterator<Item = usize>) -> Self {
        CofinSet::Cofinite(missing.into_iter().collect())
    }

    pub fn contains(&self, n: usize) -> bool {
        match self {
            CofinSet::Finite(s) => s.contains(&n),
            CofinSet::Cofinite(s) => !s.contains(&n),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CofinSet::Finite(s) if s.is_empty())
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, CofinSet::Cofinite(_))
    }

    /// The finite set stored: the members, or the missing indices.
    pub fn indices(&self) -> &BTreeSet<usize> {
        match self {
            CofinSet::Finite(s) | CofinSet::Cofinite(s) => s,
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            CofinSet::Finite(s) => CofinSet::Cofinite(s.clone()),
            CofinSet::Cofinite(s) => CofinSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use CofinSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Cofinite(c - f),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn to_periodic(&self) -> EventuallyPeriodicSet {
        let len = self.indices().iter().next_back().map_or(0, |m| m + 1);
        let prefix = (0..len).map(|n| self.contains(n)).collect();
        EventuallyPeriodicSet::new(prefix, vec![self.is_cofinite()]).expect("period is one")
    }
}

impl fmt::Display for CofinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<usize>| s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CofinSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            CofinSet::Cofinite(s) if s.is_empty() => write!(f, "ℕ"),
            CofinSet::Cofinite(s) => write!(f, "ℕ∖{{{}}}", list(s)),
        }
    }
}

/// `n ∈ A` is `prefix[n]` below `prefix.len()` and
/// `pattern[(n - prefix.len()) % pattern.len()]` from there on.
///
/// Values are kept canonical (shortest period, then shortest prefix), so
/// structural equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSet {
    prefix: Vec<bool>,
    pattern: Vec<bool>,
}

impl EventuallyPeriodicSet {
    pub fn new(prefix: Vec<bool>, pattern: Vec<bool>) -> Result<Self, CarathError> {
        if pattern.is_empty() {
            return Err(CarathError::Input("period must be at least 1".into()));
        }
        let mut s = EventuallyPeriodicSet { prefix, pattern };
        s.normalize();
        Ok(s)
    }

    pub fn empty() -> Self {
        EventuallyPeriodicSet { prefix: Vec::new(), pattern: vec![false] }
    }

    pub fn naturals() -> Self {
        EventuallyPeriodicSet { prefix: Vec::new(), pattern: vec![true] }
    }

    /// `{n ≥ start : n ≡ residue (mod modulus)}`.
    pub fn residue_class(residue: usize, modulus: usize, start: usize) -> Result<Self, CarathError> {
        if modulus == 0 {
            return Err(CarathError::Input("modulus must be positive".into()));
        }
        let prefix = vec![false; start];
        let pattern = (start..start + modulus).map(|n| n % modulus == residue % modulus).collect();
        EventuallyPeriodicSet::new(prefix, pattern)
    }

    fn normalize(&mut self) {
        let p = self.pattern.len();
        if let Some(q) = (1..p).find(|&q| p % q == 0 && (q..p).all(|i| self.pattern[i] == self.pattern[i - q])) {
            self.pattern.truncate(q);
        }
        // absorb prefix bits that already follow the periodic part
        while let Some(&last) = self.prefix.last() {
            if last != self.pattern[self.pattern.len() - 1] {
                break;
            }
            self.prefix.pop();
            self.pattern.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    /// Index from which membership is periodic.
    pub fn offset(&self) -> usize {
        self.prefix.len()
    }

    pub fn contains(&self, n: usize) -> bool {
        match self.prefix.get(n) {
            Some(&b) => b,
            None => self.pattern[(n - self.prefix.len()) % self.pattern.len()],
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == EventuallyPeriodicSet::empty()
    }

    /// The algebra element with the same members, if there is one.
    pub fn to_cofin(&self) -> Option<CofinSet> {
        if self.pattern.len() != 1 {
            return None;
        }
        let listed = (0..self.prefix.len()).filter(|&n| self.prefix[n] != self.pattern[0]);
        Some(if self.pattern[0] {
            CofinSet::cofinite(listed)
        } else {
            CofinSet::finite(listed)
        })
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let start = self.offset().max(other.offset());
        let period = self.period().lcm(&other.period());
        let bit = |n| op(self.contains(n), other.contains(n));
        let prefix = (0..start).map(bit).collect();
        let pattern = (start..start + period).map(bit).collect();
        EventuallyPeriodicSet::new(prefix, pattern).expect("period is positive")
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        EventuallyPeriodicSet {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            pattern: self.pattern.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Members below `bound`.
    pub fn members_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (0..bound).filter(|&n| self.contains(n))
    }
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^ω", bits(&self.prefix), bits(&self.pattern))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodicJson {
    prefix: String,
    period: usize,
    pattern: String,
}

fn parse_bits(field: &str, s: &str) -> Result<Vec<bool>, String> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format!("{field}: expected '0' or '1', found {other:?}")),
        })
        .collect()
}

impl Serialize for EventuallyPeriodicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PeriodicJson {
            prefix: bits(&self.prefix),
            period: self.period(),
            pattern: bits(&self.pattern),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EventuallyPeriodicSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PeriodicJson::deserialize(d)?;
        let prefix = parse_bits("prefix", &j.prefix).map_err(D::Error::custom)?;
        let pattern = parse_bits("pattern", &j.pattern).map_err(D::Error::custom)?;
        if pattern.len() != j.period {
            return Err(D::Error::custom(format!(
                "pattern has {} bits but period is {}",
                pattern.len(),
                j.period
            )));
        }
        EventuallyPeriodicSet::new(prefix, pattern).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use proptest::prelude::*;

    use super::*;

    pub fn periodic() -> impl Strategy<Value = EventuallyPeriodicSet> {
        (prop::collection::vec(any::<bool>(), 0..8), prop::collection::vec(any::<bool>(), 1..5))
            .prop_map(|(prefix, pattern)| EventuallyPeriodicSet::new(prefix, pattern).unwrap())
    }

    pub fn cofin() -> impl Strategy<Value = CofinSet> {
        (prop::collection::btree_set(0usize..10, 0..5), any::<bool>()).prop_map(|(s, co)| {
            if co {
                CofinSet::Cofinite(s)
            } else {
                CofinSet::Finite(s)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::strategies::*;
    use super::*;

    const WINDOW: usize = 40;

    fn members(a: &EventuallyPeriodicSet) -> Vec<bool> {
        (0..WINDOW).map(|n| a.contains(n)).collect()
    }

    #[test]
    fn canonical_forms() {
        let a = EventuallyPeriodicSet::new(vec![true, false, true], vec![false, true, false, true]).unwrap();
        assert_eq!(a, EventuallyPeriodicSet::residue_class(0, 2, 0).unwrap());
        assert_eq!(a.to_string(), "(10)^ω");
        assert_eq!(CofinSet::cofinite([]).to_periodic(), EventuallyPeriodicSet::naturals());
        assert_eq!(CofinSet::cofinite([0]).to_string(), "ℕ∖{0}");
        assert!(EventuallyPeriodicSet::new(vec![], vec![]).is_err());
    }

    #[test]
    fn json_form() {
        let evens = EventuallyPeriodicSet::residue_class(0, 2, 0).unwrap();
        let j = serde_json::to_value(&evens).unwrap();
        assert_eq!(j, serde_json::json!({"prefix": "", "period": 2, "pattern": "10"}));
        let back: EventuallyPeriodicSet =
            serde_json::from_value(serde_json::json!({"prefix": "0101", "period": 2, "pattern": "01"})).unwrap();
        assert_eq!(back, evens.complement());
        let bad = serde_json::json!({"prefix": "", "period": 3, "pattern": "01"});
        assert!(serde_json::from_value::<EventuallyPeriodicSet>(bad).is_err());
        let j = serde_json::to_value(CofinSet::cofinite([0])).unwrap();
        assert_eq!(j, serde_json::json!({"kind": "cofinite", "indices": [0]}));
    }

    proptest! {
        #[test]
        fn boolean_ops_are_pointwise(a in periodic(), b in periodic()) {
            let (ma, mb) = (members(&a), members(&b));
            let check = |c: EventuallyPeriodicSet, f: &dyn Fn(bool, bool) -> bool| {
                (0..WINDOW).all(|n| c.contains(n) == f(ma[n], mb[n]))
            };
            prop_assert!(check(a.union(&b), &|x, y| x || y));
            prop_assert!(check(a.intersection(&b), &|x, y| x && y));
            prop_assert!(check(a.difference(&b), &|x, y| x && !y));
            prop_assert!(check(a.symmetric_difference(&b), &|x, y| x != y));
            prop_assert!(check(a.complement(), &|x, _| !x));
        }

        #[test]
        fn canonical_form_is_unique(a in periodic(), extra in 0usize..6, reps in 1usize..4) {
            // unroll the periodic part and repeat the pattern
            let prefix: Vec<bool> = (0..a.offset() + extra).map(|n| a.contains(n)).collect();
            let start = prefix.len();
            let pattern: Vec<bool> = (start..start + a.period() * reps).map(|n| a.contains(n)).collect();
            prop_assert_eq!(EventuallyPeriodicSet::new(prefix, pattern).unwrap(), a);
        }

        #[test]
        fn cofin_ops_agree_with_embedding(a in cofin(), b in cofin()) {
            prop_assert_eq!(a.union(&b).to_periodic(), a.to_periodic().union(&b.to_periodic()));
            prop_assert_eq!(a.intersection(&b).to_periodic(), a.to_periodic().intersection(&b.to_periodic()));
            prop_assert_eq!(a.complement().to_periodic(), a.to_periodic().complement());
            prop_assert_eq!(a.to_periodic().to_cofin(), Some(a.clone()));
            prop_assert!((0..WINDOW).all(|n| a.contains(n) == a.to_periodic().contains(n)));
        }
    }
}
