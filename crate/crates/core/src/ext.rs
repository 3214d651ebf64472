//! Exact nonnegative rationals extended with a top element `inf`.
//!
//! Every measure value and every weight-vector coordinate in this crate is an
//! [`ExtValue`]. There is no subtraction: `inf - x` has no meaning, so callers
//! that need a difference work on the finite [`BigRational`] directly after
//! checking finiteness.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("negative value {0} is not allowed")]
    Negative(String),
    #[error("cannot parse {0:?} as an exact rational (expected \"p/q\", \"p\" or \"inf\")")]
    Parse(String),
    #[error("ratio {0} must satisfy 0 <= r < 1")]
    RatioOutOfRange(String),
    #[error("period must be positive")]
    ZeroPeriod,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Finite(BigRational),
    Infinite,
}

/// A value in `[0, inf]` with exact rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtValue(Repr);

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue(Repr::Finite(BigRational::zero()))
    }

    pub fn one() -> Self {
        ExtValue(Repr::Finite(BigRational::one()))
    }

    pub fn inf() -> Self {
        ExtValue(Repr::Infinite)
    }

    pub fn from_integer(n: u64) -> Self {
        ExtValue(Repr::Finite(BigRational::from_integer(BigInt::from(n))))
    }

    /// `numer / denom`; panics if `denom == 0`.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExtValue(Repr::Finite(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn new(value: BigRational) -> Result<Self, ExtError> {
        if value.is_negative() {
            return Err(ExtError::Negative(value.to_string()));
        }
        Ok(ExtValue(Repr::Finite(value)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

/// Exact sum with `inf` absorbing.
pub fn ext_add(a: &ExtValue, b: &ExtValue) -> ExtValue {
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => ExtValue(Repr::Finite(x + y)),
        _ => ExtValue::inf(),
    }
}

impl Default for ExtValue {
    fn default() -> Self {
        ExtValue::zero()
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Finite(x), Repr::Finite(y)) => x.cmp(y),
            (Repr::Finite(_), Repr::Infinite) => Ordering::Less,
            (Repr::Infinite, Repr::Finite(_)) => Ordering::Greater,
            (Repr::Infinite, Repr::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: ExtValue) -> ExtValue {
        ext_add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtValue> for &'a ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: &'a ExtValue) -> ExtValue {
        ext_add(self, rhs)
    }
}

impl AddAssign<&ExtValue> for ExtValue {
    fn add_assign(&mut self, rhs: &ExtValue) {
        match (&mut self.0, &rhs.0) {
            (Repr::Finite(x), Repr::Finite(y)) if x.is_integer() && y.is_integer() => {
                // skips the gcd reduction
                *x = BigRational::from_integer(x.numer() + y.numer());
            }
            (Repr::Finite(x), Repr::Finite(y)) => *x += y,
            _ => self.0 = Repr::Infinite,
        }
    }
}

impl Sum for ExtValue {
    fn sum<I: Iterator<Item = ExtValue>>(iter: I) -> Self {
        let mut acc = ExtValue::zero();
        for v in iter {
            acc += &v;
        }
        acc
    }
}

impl<'a> Sum<&'a ExtValue> for ExtValue {
    fn sum<I: Iterator<Item = &'a ExtValue>>(iter: I) -> Self {
        let mut acc = ExtValue::zero();
        for v in iter {
            acc += v;
        }
        acc
    }
}

impl From<BigRational> for ExtValue {
    /// Panics on negative input; use [`ExtValue::new`] for fallible conversion.
    fn from(r: BigRational) -> Self {
        ExtValue::new(r).expect("ExtValue::from on a negative rational")
    }
}

/// Renders an exact rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"` (optionally signed). Decimal points and exponents are
/// rejected so that no floating-point value can enter the system.
pub fn parse_rational(s: &str) -> Result<BigRational, ExtError> {
    let t = s.trim();
    let bad = || ExtError::Parse(s.to_string());
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(r) => f.write_str(&format_rational(r)),
            Repr::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtValue {
    type Err = ExtError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(ExtValue::inf());
        }
        ExtValue::new(parse_rational(t)?)
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;
        impl Visitor<'_> for ExtVisitor {
            type Value = ExtValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"2/3\" or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtValue, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtValue, E> {
                Err(E::custom(format!(
                    "floating-point value {v} rejected; use a rational string"
                )))
            }
        }
        deserializer.deserialize_str(ExtVisitor)
    }
}

/// Serde adapter for plain (possibly negative) rationals stored as strings.
pub mod rational_string {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Integer power by repeated squaring.
pub fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// `sum_{k >= 0} c * r^(offset + k * period) = c * r^offset / (1 - r^period)`.
pub fn geometric_tail_sum(
    c: &BigRational,
    r: &BigRational,
    period: u64,
    offset: u64,
) -> Result<ExtValue, ExtError> {
    if c.is_negative() {
        return Err(ExtError::Negative(c.to_string()));
    }
    if r.is_negative() || *r >= BigRational::one() {
        return Err(ExtError::RatioOutOfRange(format_rational(r)));
    }
    if period == 0 {
        return Err(ExtError::ZeroPeriod);
    }
    let head = c * rational_pow(r, offset);
    let denom = BigRational::one() - rational_pow(r, period);
    ExtValue::new(head / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn addition_examples() {
        assert_eq!(
            ext_add(&ExtValue::ratio(1, 2), &ExtValue::ratio(1, 3)),
            ExtValue::ratio(5, 6)
        );
        assert_eq!(ext_add(&ExtValue::inf(), &ExtValue::zero()), ExtValue::inf());
        assert_eq!(ext_add(&ExtValue::zero(), &ExtValue::zero()), ExtValue::zero());
    }

    #[test]
    fn inf_is_top() {
        assert!(ExtValue::inf() > ExtValue::from_integer(1_000_000_000));
        assert_eq!(ExtValue::inf().cmp(&ExtValue::inf()), Ordering::Equal);
    }

    #[test]
    fn negative_rejected() {
        assert!(matches!(ExtValue::new(q(-1, 2)), Err(ExtError::Negative(_))));
        assert!("-1/2".parse::<ExtValue>().is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2/4".parse::<ExtValue>().unwrap().to_string(), "1/2");
        assert_eq!("6/3".parse::<ExtValue>().unwrap().to_string(), "2");
        assert_eq!("inf".parse::<ExtValue>().unwrap(), ExtValue::inf());
        for bad in ["0.5", "1e3", "1/0", "", "x"] {
            assert!(bad.parse::<ExtValue>().is_err(), "{bad}");
        }
    }

    #[test]
    fn serde_rejects_floats() {
        let v: ExtValue = serde_json::from_str("\"3/9\"").unwrap();
        assert_eq!(v, ExtValue::ratio(1, 3));
        assert!(serde_json::from_str::<ExtValue>("0.5").is_err());
        assert_eq!(serde_json::to_string(&ExtValue::inf()).unwrap(), "\"inf\"");
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(
            geometric_tail_sum(&q(1, 1), &q(1, 2), 1, 0).unwrap(),
            ExtValue::from_integer(2)
        );
        assert_eq!(
            geometric_tail_sum(&q(1, 1), &q(0, 1), 1, 0).unwrap(),
            ExtValue::one()
        );
        assert_eq!(
            geometric_tail_sum(&q(1, 2), &q(1, 2), 2, 1).unwrap(),
            ExtValue::ratio(1, 3)
        );
    }

    #[test]
    fn geometric_partial_sums_approach_closed_form() {
        // sum_{k<=40} (1/2) (1/2)^(1+2k): monotone, below the limit, within 2^-30
        let c = q(1, 2);
        let r = q(1, 2);
        let limit = q(1, 3);
        let mut partial = BigRational::zero();
        for k in 0..=40u64 {
            partial += &c * rational_pow(&r, 1 + 2 * k);
            assert!(partial <= limit);
        }
        assert!(&limit - &partial < rational_pow(&q(1, 2), 30));
    }

    #[test]
    fn geometric_rejects_bad_inputs() {
        assert!(geometric_tail_sum(&q(1, 1), &q(1, 1), 1, 0).is_err());
        assert!(geometric_tail_sum(&q(-1, 1), &q(1, 2), 1, 0).is_err());
        assert!(geometric_tail_sum(&q(1, 1), &q(-1, 2), 1, 0).is_err());
        assert!(geometric_tail_sum(&q(1, 1), &q(1, 2), 0, 0).is_err());
    }

    fn arb_ext() -> impl Strategy<Value = ExtValue> {
        prop_oneof![
            1 => Just(ExtValue::inf()),
            6 => (0u64..50, 1u64..12).prop_map(|(n, d)| ExtValue::ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn addition_is_a_commutative_monoid(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &ExtValue::zero(), a.clone());
            prop_assert!(&a + &b >= a);
        }

        #[test]
        fn geometric_closed_form_times_one_minus_r(cn in 0i64..20, cd in 1i64..9, rn in 0i64..30) {
            let c = q(cn, cd);
            let r = q(rn, 31);
            let s = geometric_tail_sum(&c, &r, 1, 0).unwrap();
            let s = s.as_rational().unwrap().clone();
            prop_assert_eq!(s * (BigRational::one() - &r), c);
        }

        #[test]
        fn display_round_trips(a in arb_ext()) {
            prop_assert_eq!(a.to_string().parse::<ExtValue>().unwrap(), a);
        }
    }
}
