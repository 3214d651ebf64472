//! Premeasures on the finite–cofinite algebra of ℕ given by summable weights,
//! and their extensions to eventually periodic sets.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ext::{format_rational, geometric_tail_sum, parse_rational, rational_pow, ExtValue};

use super::sets::{CofinSet, EventuallyPeriodicSet};
use super::CarathError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Zero,
    /// `w_n = c·r^n` past the overrides.
    Geometric { c: BigRational, r: BigRational },
    /// Every nonempty set gets `∞`.
    Infinite,
}

/// `ρ(E) = Σ_{n∈E} w_n` on the finite–cofinite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeomWeightPremeasure {
    overrides: Vec<BigRational>,
    tail: Tail,
}

impl GeomWeightPremeasure {
    pub fn new(overrides: Vec<BigRational>, tail: Tail) -> Result<Self, CarathError> {
        if let Some(w) = overrides.iter().find(|w| w.is_negative()) {
            return Err(CarathError::Input(format!("negative weight {}", format_rational(w))));
        }
        match &tail {
            Tail::Geometric { c, r } => {
                if c.is_negative() {
                    return Err(CarathError::Input(format!("negative tail coefficient {}", format_rational(c))));
                }
                if r.is_negative() || *r >= BigRational::one() {
                    return Err(CarathError::Input(format!(
                        "tail ratio {} must satisfy 0 <= r < 1",
                        format_rational(r)
                    )));
                }
            }
            Tail::Infinite if !overrides.is_empty() => {
                return Err(CarathError::Input("an infinite premeasure takes no override weights".into()));
            }
            _ => {}
        }
        Ok(GeomWeightPremeasure { overrides, tail })
    }

    /// `w_n = c·r^n` for every `n`.
    pub fn geometric(c: BigRational, r: BigRational) -> Result<Self, CarathError> {
        GeomWeightPremeasure::new(Vec::new(), Tail::Geometric { c, r })
    }

    /// Finitely many nonzero weights.
    pub fn finitely_supported(weights: Vec<BigRational>) -> Result<Self, CarathError> {
        GeomWeightPremeasure::new(weights, Tail::Zero)
    }

    pub fn infinite() -> Self {
        GeomWeightPremeasure { overrides: Vec::new(), tail: Tail::Infinite }
    }

    pub fn overrides(&self) -> &[BigRational] {
        &self.overrides
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite_mass(&self) -> bool {
        self.tail != Tail::Infinite
    }

    pub(crate) fn require_finite_mass(&self) -> Result<(), CarathError> {
        if self.is_finite_mass() {
            Ok(())
        } else {
            Err(CarathError::InfiniteMass)
        }
    }

    /// Weight of the point `n`; `∞` for the infinite premeasure.
    pub fn weight(&self, n: usize) -> ExtValue {
        match (&self.tail, self.overrides.get(n)) {
            (Tail::Infinite, _) => ExtValue::inf(),
            (_, Some(w)) => ExtValue::from(w.clone()),
            (Tail::Zero, None) => ExtValue::zero(),
            (Tail::Geometric { c, r }, None) => ExtValue::from(c * rational_pow(r, n as u64)),
        }
    }

    fn finite_weight(&self, n: usize) -> BigRational {
        self.weight(n).as_rational().cloned().expect("finite mass")
    }

    /// `Σ_{n ≥ depth} w_n`.
    pub fn tail_mass(&self, depth: usize) -> ExtValue {
        match &self.tail {
            Tail::Infinite => ExtValue::inf(),
            tail => {
                let explicit: BigRational = self.overrides.iter().skip(depth).sum();
                let series = match tail {
                    Tail::Geometric { c, r } => {
                        let from = depth.max(self.overrides.len()) as u64;
                        geometric_tail_sum(c, r, 1, from).expect("validated tail").as_rational().cloned().unwrap()
                    }
                    _ => BigRational::zero(),
                };
                ExtValue::from(explicit + series)
            }
        }
    }

    pub fn total_mass(&self) -> ExtValue {
        self.tail_mass(0)
    }

    fn sum_over<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> ExtValue {
        indices.into_iter().map(|&n| self.weight(n)).sum()
    }
}

pub fn premeasure_eval(rho: &GeomWeightPremeasure, e: &CofinSet) -> ExtValue {
    match (rho.is_finite_mass(), e) {
        (false, e) if e.is_empty() => ExtValue::zero(),
        (false, _) => ExtValue::inf(),
        (true, CofinSet::Finite(s)) => rho.sum_over(s),
        (true, CofinSet::Cofinite(missing)) => {
            let total = rho.total_mass().as_rational().cloned().expect("finite mass");
            let removed: BigRational = missing.iter().map(|&n| rho.finite_weight(n)).sum();
            ExtValue::new(total - removed).expect("removed weights are part of the total")
        }
    }
}

/// `Σ_{n∈A} w_n`: explicit weights below the point where both the set and the
/// weights become regular, then one geometric series per residue class.
pub fn right_extend(rho: &GeomWeightPremeasure, a: &EventuallyPeriodicSet) -> ExtValue {
    if !rho.is_finite_mass() {
        return if a.is_empty() { ExtValue::zero() } else { ExtValue::inf() };
    }
    let start = a.offset().max(rho.overrides.len());
    let mut total: ExtValue = a.members_below(start).map(|n| rho.weight(n)).sum();
    if let Tail::Geometric { c, r } = &rho.tail {
        let p = a.period();
        for n in (start..start + p).filter(|&n| a.contains(n)) {
            total += &geometric_tail_sum(c, r, p as u64, n as u64).expect("validated tail");
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverBound {
    pub depth: usize,
    /// `Σ_{n∈A, n<depth} w_n`.
    pub lower: ExtValue,
    /// Sum over the cover by singletons of `A` below `depth` and `[depth, ∞)`.
    pub upper: ExtValue,
}

pub fn cover_bound_oracle(
    rho: &GeomWeightPremeasure,
    a: &EventuallyPeriodicSet,
    depth: usize,
) -> Result<CoverBound, CarathError> {
    if depth == 0 {
        return Err(CarathError::Input("depth must be at least 1".into()));
    }
    let lower: ExtValue = a.members_below(depth).map(|n| rho.weight(n)).sum();
    let upper = lower.clone() + rho.tail_mass(depth);
    Ok(CoverBound { depth, lower, upper })
}

/// Supremum of `Σ ρ(B_i)` over disjoint algebra elements `B_i ⊆ A`.
///
/// Only a cofinite `A` contains a cofinite element, and then `{A}` is optimal.
/// Otherwise the families are finite sets, whose sums increase to
/// `m − Σ_{n∉A} w_n`. The infinite premeasure reaches `∞` on any singleton.
pub fn inner_extend(rho: &GeomWeightPremeasure, a: &EventuallyPeriodicSet) -> ExtValue {
    if !rho.is_finite_mass() {
        return if a.is_empty() { ExtValue::zero() } else { ExtValue::inf() };
    }
    if let Some(e) = a.to_cofin().filter(|e| e.is_cofinite()) {
        return premeasure_eval(rho, &e);
    }
    let total = rho.total_mass().as_rational().cloned().expect("finite mass");
    let outside = right_extend(rho, &a.complement()).as_rational().cloned().expect("finite mass");
    ExtValue::new(total - outside).expect("outside mass is part of the total")
}

/// Whether the right and inner extensions agree on every sample set.
pub fn uniqueness_check(rho: &GeomWeightPremeasure, sets: &[EventuallyPeriodicSet]) -> Result<bool, CarathError> {
    rho.require_finite_mass()?;
    Ok(sets.iter().all(|a| right_extend(rho, a) == inner_extend(rho, a)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub set: CofinSet,
    /// Least `N` with `Σ_{n≥N} w_n < ε`; absent when `A` is already in the algebra.
    pub cutoff: Option<usize>,
    /// Extension value of `A Δ set`.
    pub error: ExtValue,
    pub within_bound: bool,
}

/// Search limit for the cutoff in [`approximate_by_algebra`].
pub const MAX_CUTOFF: usize = 1 << 16;

/// An algebra element `B` with extension value of `A Δ B` below `ε`.
pub fn approximate_by_algebra(
    rho: &GeomWeightPremeasure,
    a: &EventuallyPeriodicSet,
    eps: &BigRational,
) -> Result<Approximation, CarathError> {
    rho.require_finite_mass()?;
    if !eps.is_positive() {
        return Err(CarathError::Input(format!("ε = {} must be positive", format_rational(eps))));
    }
    let eps_ext = ExtValue::from(eps.clone());
    let (set, cutoff) = match a.to_cofin() {
        Some(e) => (e, None),
        None => {
            let mut tail = rho.total_mass().as_rational().cloned().expect("finite mass");
            let mut n = 0;
            while tail >= *eps {
                if n >= MAX_CUTOFF {
                    return Err(CarathError::TooLarge(format!(
                        "tail mass stays above ε past index {MAX_CUTOFF}"
                    )));
                }
                tail -= rho.finite_weight(n);
                n += 1;
            }
            (CofinSet::finite(a.members_below(n)), Some(n))
        }
    };
    let error = right_extend(rho, &a.symmetric_difference(&set.to_periodic()));
    let within_bound = error < eps_ext;
    Ok(Approximation { set, cutoff, error, within_bound })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub set: CofinSet,
    /// Best partition sum using algebra elements only.
    pub restricted: ExtValue,
    /// Best partition sum using eventually periodic pieces.
    pub extended: ExtValue,
    pub partitions_checked: usize,
    pub equal: bool,
}

/// Depth of the partitions tried by [`restriction_compat_check`].
pub const RESTRICTION_DEPTH: usize = 16;

/// Compares the closure of the extension restricted to the algebra with the
/// closure of the extension itself, both at `b`.
///
/// The restricted side partitions `b` into singletons below a depth and the
/// remaining algebra element; the extended side additionally splits that
/// remainder into residue classes. Additivity makes every sum equal, and the
/// report records the best of each side.
pub fn restriction_compat_check(rho: &GeomWeightPremeasure, b: &CofinSet) -> RestrictionReport {
    let mu = |s: &EventuallyPeriodicSet| right_extend(rho, s);
    let whole = b.to_periodic();
    let mut restricted = ExtValue::zero();
    let mut extended = ExtValue::zero();
    let mut checked = 0;
    for depth in 0..=RESTRICTION_DEPTH {
        let head = CofinSet::finite(whole.members_below(depth));
        let rest = b.difference(&head);
        let singletons: ExtValue = head.indices().iter().map(|&n| premeasure_eval(rho, &CofinSet::finite([n]))).sum();
        restricted = restricted.max(singletons.clone() + premeasure_eval(rho, &rest));
        checked += 1;
        for modulus in 2..=4 {
            let pieces: ExtValue = (0..modulus)
                .map(|j| {
                    let class = EventuallyPeriodicSet::residue_class(j, modulus, depth).expect("positive modulus");
                    mu(&rest.to_periodic().intersection(&class))
                })
                .sum();
            extended = extended.clone().max(singletons.clone() + pieces);
            checked += 1;
        }
    }
    extended = extended.max(mu(&whole));
    let equal = restricted == extended;
    RestrictionReport { set: b.clone(), restricted, extended, partitions_checked: checked, equal }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum TailJson {
    Word(String),
    Geometric { c: String, r: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PremeasureJson {
    #[serde(default)]
    overrides: Vec<String>,
    tail: TailJson,
}

impl Serialize for GeomWeightPremeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tail = match &self.tail {
            Tail::Zero => TailJson::Word("zero".into()),
            Tail::Infinite => TailJson::Word("infinite".into()),
            Tail::Geometric { c, r } => TailJson::Geometric { c: format_rational(c), r: format_rational(r) },
        };
        PremeasureJson { overrides: self.overrides.iter().map(format_rational).collect(), tail }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeomWeightPremeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PremeasureJson::deserialize(d)?;
        let rational = |field: &str, s: &str| parse_rational(s).map_err(|e| D::Error::custom(format!("{field}: {e}")));
        let overrides = j
            .overrides
            .iter()
            .enumerate()
            .map(|(i, s)| rational(&format!("overrides[{i}]"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let tail = match j.tail {
            TailJson::Word(w) if w == "zero" => Tail::Zero,
            TailJson::Word(w) if w == "infinite" => Tail::Infinite,
            TailJson::Word(w) => {
                return Err(D::Error::custom(format!(
                    "tail: expected \"zero\", \"infinite\" or {{\"c\", \"r\"}}, found {w:?}"
                )))
            }
            TailJson::Geometric { c, r } => Tail::Geometric { c: rational("tail.c", &c)?, r: rational("tail.r", &r)? },
        };
        GeomWeightPremeasure::new(overrides, tail).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn finite_premeasure() -> impl Strategy<Value = GeomWeightPremeasure> {
        (
            prop::collection::vec((0i64..6, 1i64..4), 0..5),
            prop_oneof![Just(None), (0i64..4, 1i64..4, 0i64..4).prop_map(Some)],
        )
            .prop_map(|(ws, tail)| {
                let overrides = ws.into_iter().map(|(n, d)| q(n, d)).collect();
                let tail = match tail {
                    None => Tail::Zero,
                    Some((c, num, extra)) => Tail::Geometric { c: q(c, 2), r: q(num - 1, num + extra) },
                };
                GeomWeightPremeasure::new(overrides, tail).unwrap()
            })
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::super::sets::strategies::*;
    use super::strategies::*;
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn e(n: i64, d: i64) -> ExtValue {
        ExtValue::from(q(n, d))
    }

    fn half() -> GeomWeightPremeasure {
        GeomWeightPremeasure::geometric(q(1, 2), q(1, 2)).unwrap()
    }

    fn evens() -> EventuallyPeriodicSet {
        EventuallyPeriodicSet::residue_class(0, 2, 0).unwrap()
    }

    /// `Σ_{n∈A, n<len} w_n`, summed term by term.
    fn partial_sum(rho: &GeomWeightPremeasure, a: &EventuallyPeriodicSet, len: usize) -> ExtValue {
        (0..len).filter(|&n| a.contains(n)).map(|n| rho.weight(n)).sum()
    }

    #[test]
    fn evaluation_examples() {
        let rho = half();
        assert_eq!(rho.total_mass(), ExtValue::one());
        assert_eq!(premeasure_eval(&rho, &CofinSet::finite([0])), e(1, 2));
        assert_eq!(premeasure_eval(&rho, &CofinSet::cofinite([0])), e(1, 2));
        assert_eq!(premeasure_eval(&rho, &CofinSet::empty()), ExtValue::zero());
        let inf = GeomWeightPremeasure::infinite();
        assert!(premeasure_eval(&inf, &CofinSet::finite([3])).is_infinite());
        assert!(premeasure_eval(&inf, &CofinSet::empty()).is_zero());
    }

    #[test]
    fn even_numbers_get_two_thirds() {
        let rho = half();
        assert_eq!(right_extend(&rho, &evens()), e(2, 3));
        // partial sums up to 40 sit in (2/3 − 2^-39, 2/3)
        let s = partial_sum(&rho, &evens(), 41);
        let gap = BigRational::new(BigInt::from(1), BigInt::from(2).pow(39));
        assert!(s < e(2, 3) && s > ExtValue::from(q(2, 3) - gap));
        assert_eq!(right_extend(&rho, &CofinSet::cofinite([0]).to_periodic()), e(1, 2));
        assert!(right_extend(&rho, &EventuallyPeriodicSet::empty()).is_zero());
        assert_eq!(inner_extend(&rho, &evens()), e(2, 3));
    }

    #[test]
    fn cover_bound_examples() {
        let rho = half();
        let b = cover_bound_oracle(&rho, &evens(), 4).unwrap();
        assert_eq!((b.lower, b.upper), (e(5, 8), e(11, 16)));
        let b = cover_bound_oracle(&rho, &evens(), 1).unwrap();
        assert_eq!((b.lower, b.upper), (e(1, 2), ExtValue::one()));
        let b = cover_bound_oracle(&rho, &EventuallyPeriodicSet::empty(), 3).unwrap();
        assert_eq!((b.lower, b.upper), (ExtValue::zero(), e(1, 8)));
        assert!(cover_bound_oracle(&rho, &evens(), 0).is_err());
    }

    #[test]
    fn approximation_examples() {
        let rho = half();
        let r = approximate_by_algebra(&rho, &evens(), &q(1, 8)).unwrap();
        assert_eq!(r.set, CofinSet::finite([0, 2]));
        assert_eq!(r.cutoff, Some(4));
        assert_eq!(r.error, e(1, 24));
        assert!(r.within_bound);
        let a = CofinSet::cofinite([1]).to_periodic();
        let r = approximate_by_algebra(&rho, &a, &q(1, 100)).unwrap();
        assert_eq!(r.set, CofinSet::cofinite([1]));
        assert!(r.error.is_zero());
        let r = approximate_by_algebra(&rho, &evens(), &q(2, 1)).unwrap();
        assert_eq!(r.set, CofinSet::empty());
        assert!(r.within_bound);
        assert!(matches!(
            approximate_by_algebra(&GeomWeightPremeasure::infinite(), &evens(), &q(1, 2)),
            Err(CarathError::InfiniteMass)
        ));
        assert!(approximate_by_algebra(&rho, &evens(), &q(0, 1)).is_err());
    }

    #[test]
    fn restriction_examples() {
        let rho = half();
        let r = restriction_compat_check(&rho, &CofinSet::cofinite([0]));
        assert!(r.equal);
        assert_eq!(r.restricted, e(1, 2));
        assert!(restriction_compat_check(&rho, &CofinSet::empty()).restricted.is_zero());
        let r = restriction_compat_check(&rho, &CofinSet::finite([1, 3]));
        assert_eq!((r.restricted, r.extended), (e(5, 16), e(5, 16)));
    }

    #[test]
    fn uniqueness_guards() {
        assert!(matches!(
            uniqueness_check(&GeomWeightPremeasure::infinite(), &[evens()]),
            Err(CarathError::InfiniteMass)
        ));
        let zero = GeomWeightPremeasure::finitely_supported(vec![]).unwrap();
        assert!(uniqueness_check(&zero, &[evens(), EventuallyPeriodicSet::naturals()]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let j = serde_json::json!({"overrides": ["1/3", "0"], "tail": {"c": "1/2", "r": "1/2"}});
        let rho: GeomWeightPremeasure = serde_json::from_value(j.clone()).unwrap();
        assert_eq!(rho.weight(1), ExtValue::zero());
        assert_eq!(rho.weight(2), e(1, 8));
        assert_eq!(serde_json::to_value(&rho).unwrap(), j);
        let inf: GeomWeightPremeasure = serde_json::from_value(serde_json::json!({"tail": "infinite"})).unwrap();
        assert!(!inf.is_finite_mass());
        for bad in [
            serde_json::json!({"tail": "none"}),
            serde_json::json!({"tail": {"c": "1", "r": "1"}}),
            serde_json::json!({"overrides": ["0.5"], "tail": "zero"}),
        ] {
            assert!(serde_json::from_value::<GeomWeightPremeasure>(bad).is_err());
        }
    }

    proptest! {
        #[test]
        fn proper_on_the_algebra(rho in finite_premeasure(), b in cofin()) {
            prop_assert_eq!(right_extend(&rho, &b.to_periodic()), premeasure_eval(&rho, &b));
            prop_assert_eq!(inner_extend(&rho, &b.to_periodic()), premeasure_eval(&rho, &b));
        }

        #[test]
        fn algebra_additivity(rho in finite_premeasure(), a in cofin(), b in cofin()) {
            let b = b.difference(&a);
            prop_assert_eq!(
                premeasure_eval(&rho, &a.union(&b)),
                premeasure_eval(&rho, &a) + premeasure_eval(&rho, &b)
            );
        }

        #[test]
        fn monotone_and_additive(rho in finite_premeasure(), a in periodic(), b in periodic()) {
            let small = a.intersection(&b);
            prop_assert!(right_extend(&rho, &small) <= right_extend(&rho, &a));
            let disjoint = b.difference(&a);
            prop_assert_eq!(
                right_extend(&rho, &a.union(&disjoint)),
                right_extend(&rho, &a) + right_extend(&rho, &disjoint)
            );
        }

        #[test]
        fn cover_bounds_bracket(rho in finite_premeasure(), a in periodic(), depth in 1usize..40) {
            let b = cover_bound_oracle(&rho, &a, depth).unwrap();
            let v = right_extend(&rho, &a);
            prop_assert!(b.lower <= v && v <= b.upper);
            prop_assert_eq!(b.lower.clone(), partial_sum(&rho, &a, depth));
            prop_assert_eq!(b.upper, b.lower + rho.tail_mass(depth));
            prop_assert!(rho.tail_mass(depth + 1) <= rho.tail_mass(depth));
        }

        #[test]
        fn inner_matches_right(rho in finite_premeasure(), a in periodic()) {
            let inner = inner_extend(&rho, &a);
            prop_assert_eq!(inner.clone(), right_extend(&rho, &a));
            prop_assert!(partial_sum(&rho, &a, 30) <= inner);
        }

        #[test]
        fn right_extension_is_largest(
            rho in finite_premeasure(),
            a in periodic(),
            scale in 0i64..4,
        ) {
            // ν = ρ scaled by at most one, so ν restricted to the algebra is below ρ
            let s = q(scale, 3);
            let nu = GeomWeightPremeasure::new(
                rho.overrides().iter().map(|w| w * &s).collect(),
                match rho.tail() {
                    Tail::Geometric { c, r } => Tail::Geometric { c: c * &s, r: r.clone() },
                    t => t.clone(),
                },
            ).unwrap();
            prop_assert!(right_extend(&nu, &a) <= right_extend(&rho, &a));
        }

        #[test]
        fn approximation_meets_bound(rho in finite_premeasure(), a in periodic(), d in 1i64..50) {
            let r = approximate_by_algebra(&rho, &a, &q(1, d)).unwrap();
            prop_assert!(r.within_bound);
        }

        #[test]
        fn restriction_compatible(rho in finite_premeasure(), b in cofin()) {
            let r = restriction_compat_check(&rho, &b);
            prop_assert!(r.equal);
            prop_assert_eq!(r.restricted, premeasure_eval(&rho, &b));
        }
    }
}
