//! The algebra of subsets of ℚ generated by half-open intervals `(a, b] ∩ ℚ`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::ext::format_rational;

/// `(lo, hi] ∩ ℚ`; `None` is `−∞` below and `+∞` above, where the bound is open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<BigRational>,
    pub hi: Option<BigRational>,
}

impl Interval {
    fn contains(&self, q: &BigRational) -> bool {
        self.lo.as_ref().is_none_or(|a| a < q) && self.hi.as_ref().is_none_or(|b| q <= b)
    }

    fn is_empty(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a >= b)
    }
}

fn cmp_lo(a: &Option<BigRational>, b: &Option<BigRational>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

fn cmp_hi(a: &Option<BigRational>, b: &Option<BigRational>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

/// A finite disjoint union of intervals, sorted, with touching pieces merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatIntervalSet {
    pieces: Vec<Interval>,
}

impl RatIntervalSet {
    pub fn empty() -> Self {
        RatIntervalSet::default()
    }

    pub fn rationals() -> Self {
        RatIntervalSet::from_intervals([Interval { lo: None, hi: None }])
    }

    /// `(a, b] ∩ ℚ`, empty unless `a < b`.
    pub fn interval(a: BigRational, b: BigRational) -> Self {
        RatIntervalSet::from_intervals([Interval { lo: Some(a), hi: Some(b) }])
    }

    pub fn from_intervals(pieces: impl IntoIterator<Item = Interval>) -> Self {
        let mut v: Vec<Interval> = pieces.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort_by(|x, y| cmp_lo(&x.lo, &y.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for i in v {
            if let Some(last) = out.last_mut() {
                // (a, b] and (c, d] with c <= b overlap or touch
                let touches = match (&last.hi, &i.lo) {
                    (None, _) | (_, None) => true,
                    (Some(b), Some(c)) => c <= b,
                };
                if touches {
                    if cmp_hi(&i.hi, &last.hi) == Ordering::Greater {
                        last.hi = i.hi;
                    }
                    continue;
                }
            }
            out.push(i);
        }
        RatIntervalSet { pieces: out }
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.pieces.iter().any(|i| i.contains(q))
    }

    pub fn union(&self, other: &Self) -> Self {
        RatIntervalSet::from_intervals(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo: Option<BigRational> = None;
        let mut open_below = true;
        for i in &self.pieces {
            if i.lo.is_some() || !open_below {
                out.push(Interval { lo: if open_below { None } else { lo.clone() }, hi: i.lo.clone() });
            }
            open_below = false;
            lo = i.hi.clone();
            if lo.is_none() {
                return RatIntervalSet::from_intervals(out);
            }
        }
        out.push(Interval { lo: if open_below { None } else { lo }, hi: None });
        RatIntervalSet::from_intervals(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// `k` distinct members, or `None` for the empty set. Every nonempty
    /// element contains an interval with distinct endpoints, hence infinitely
    /// many rationals.
    pub fn distinct_members(&self, k: usize) -> Option<Vec<BigRational>> {
        let i = self.pieces.first()?;
        let one = BigRational::from_integer(1.into());
        let (a, b) = match (&i.lo, &i.hi) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (Some(a), None) => (a.clone(), a + &one),
            (None, Some(b)) => (b - &one, b.clone()),
            (None, None) => (BigRational::from_integer(0.into()), one.clone()),
        };
        Some(
            (1..=k)
                .map(|j| &b - (&b - &a) * (BigRational::from_integer((j as i64 - 1).into()) / BigRational::from_integer((j as i64).into())))
                .collect(),
        )
    }
}

impl fmt::Display for RatIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|i| {
                let lo = i.lo.as_ref().map_or("-inf".to_string(), format_rational);
                let hi = i.hi.as_ref().map_or("inf".to_string(), format_rational);
                match i.hi {
                    Some(_) => format!("({lo},{hi}]"),
                    None => format!("({lo},{hi})"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl Serialize for RatIntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn iv(a: i64, b: i64) -> RatIntervalSet {
        RatIntervalSet::interval(q(a, 1), q(b, 1))
    }

    fn bound() -> impl Strategy<Value = Option<BigRational>> {
        prop_oneof![1 => Just(None), 6 => (-6i64..6).prop_map(|n| Some(q(n, 2)))]
    }

    fn set() -> impl Strategy<Value = RatIntervalSet> {
        prop::collection::vec((bound(), bound()), 0..4)
            .prop_map(|v| RatIntervalSet::from_intervals(v.into_iter().map(|(lo, hi)| Interval { lo, hi })))
    }

    fn probes() -> Vec<BigRational> {
        (-16..=16).map(|n| q(n, 4)).collect()
    }

    #[test]
    fn normal_form() {
        assert_eq!(iv(0, 1).union(&iv(1, 2)), iv(0, 2));
        assert_eq!(iv(0, 2).union(&iv(1, 3)).to_string(), "(0,3]");
        assert!(iv(1, 1).is_empty());
        assert_eq!(iv(0, 1).complement().to_string(), "(-inf,0] ∪ (1,inf)");
        assert_eq!(RatIntervalSet::rationals().complement(), RatIntervalSet::empty());
        assert_eq!(RatIntervalSet::empty().complement(), RatIntervalSet::rationals());
        assert!(iv(0, 1).is_disjoint(&iv(1, 2)));
        assert!(!iv(0, 1).contains(&q(0, 1)) && iv(0, 1).contains(&q(1, 1)));
    }

    proptest! {
        #[test]
        fn operations_are_pointwise(a in set(), b in set()) {
            for p in probes() {
                prop_assert_eq!(a.union(&b).contains(&p), a.contains(&p) || b.contains(&p));
                prop_assert_eq!(a.intersection(&b).contains(&p), a.contains(&p) && b.contains(&p));
                prop_assert_eq!(a.complement().contains(&p), !a.contains(&p));
            }
        }

        #[test]
        fn normalization_is_canonical(a in set(), b in set()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(a.intersection(&a.complement()), RatIntervalSet::empty());
        }

        #[test]
        fn nonempty_means_infinite(a in set()) {
            match a.distinct_members(5) {
                None => prop_assert!(a.is_empty()),
                Some(ms) => {
                    prop_assert!(ms.iter().all(|m| a.contains(m)));
                    let mut sorted = ms.clone();
                    sorted.sort();
                    sorted.dedup();
                    prop_assert_eq!(sorted.len(), 5);
                }
            }
        }
    }
}
