//! A premeasure with no proper left extension to a measure.
//!
//! On the algebra of ℚ generated by `(a, b] ∩ ℚ` every nonempty element is
//! infinite, so `ρ∞` (`∞` on nonempty sets) agrees there with each scaled
//! counting measure `μ_r = r·#`. A left extension `μ` lies below every `μ_r`,
//! so singletons get `μ({q}) ≤ r` for all `r > 0`, hence `0`, and countable
//! additivity gives `μ((0,1]) = 0` while `ρ∞((0,1]) = ∞`.
//!
//! The report replays this argument on finitely many samples; the passage from
//! the sampled bounds to `0` is recorded, not enumerated.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ext::{format_rational, ExtValue};

use super::intervals::RatIntervalSet;

pub const CONCLUSION: &str = "contradiction: 0 ≠ ∞";

/// Value of `ρ∞`.
pub fn rho_infinite(e: &RatIntervalSet) -> ExtValue {
    if e.is_empty() {
        ExtValue::zero()
    } else {
        ExtValue::inf()
    }
}

/// `μ_r(E) = r·#E`; a nonempty algebra element is infinite.
fn scaled_counting(r: &BigRational, e: &RatIntervalSet) -> ExtValue {
    match e.distinct_members(2) {
        None => ExtValue::zero(),
        Some(_) if *r == BigRational::from_integer(0.into()) => ExtValue::zero(),
        Some(_) => ExtValue::inf(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementCheck {
    pub set: RatIntervalSet,
    /// Distinct members exhibited inside the set.
    pub sample_members: Vec<String>,
    pub rho: ExtValue,
    pub mu_r: Vec<ExtValue>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityCheck {
    pub left: RatIntervalSet,
    pub right: RatIntervalSet,
    pub disjoint: bool,
    pub sum: ExtValue,
    pub union: ExtValue,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingletonBound {
    pub r: String,
    /// `μ_r({q}) = r`, an upper bound for any left extension at `{q}`.
    pub mu_r_singleton: ExtValue,
    /// `{q}` contains no nonempty algebra element.
    pub singleton_outside_algebra: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub point: String,
    pub radii: Vec<String>,
    pub agreement: Vec<AgreementCheck>,
    pub additivity: Vec<AdditivityCheck>,
    pub singleton_bounds: Vec<SingletonBound>,
    pub least_sampled_bound: String,
    pub limit_step: String,
    pub unit_interval: RatIntervalSet,
    pub extension_on_unit_interval: ExtValue,
    pub rho_on_unit_interval: ExtValue,
    pub all_checks_pass: bool,
    pub conclusion: String,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_interval(rng: &mut ChaCha8Rng) -> RatIntervalSet {
    let a = q(rng.gen_range(-20..20), rng.gen_range(1..8));
    let width = q(rng.gen_range(1..10), rng.gen_range(1..8));
    let b = &a + width;
    match rng.gen_range(0..6) {
        0 => RatIntervalSet::interval(a, b).complement(),
        1 => RatIntervalSet::interval(a.clone(), b).union(&RatIntervalSet::interval(&a - q(3, 1), &a - q(2, 1))),
        _ => RatIntervalSet::interval(a, b),
    }
}

pub fn counterexample_report() -> Certificate {
    let radii = [q(1, 1), q(1, 2), q(1, 10), q(1, 1000)];
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let agreement: Vec<AgreementCheck> = (0..20)
        .map(|_| {
            let set = random_interval(&mut rng);
            let members = set.distinct_members(3).unwrap_or_default();
            let rho = rho_infinite(&set);
            let mu_r: Vec<ExtValue> = radii.iter().map(|r| scaled_counting(r, &set)).collect();
            let agrees = !set.is_empty() && mu_r.iter().all(|m| *m == rho);
            AgreementCheck {
                set,
                sample_members: members.iter().map(format_rational).collect(),
                rho,
                mu_r,
                agrees,
            }
        })
        .collect();

    let additivity: Vec<AdditivityCheck> = agreement
        .iter()
        .map(|c| {
            // split at the first exhibited member
            let cut = c.set.distinct_members(2).expect("nonempty")[1].clone();
            let below = RatIntervalSet::from_intervals([super::intervals::Interval { lo: None, hi: Some(cut) }]);
            let (left, right) = (c.set.intersection(&below), c.set.difference(&below));
            let sum = rho_infinite(&left) + rho_infinite(&right);
            let union = rho_infinite(&left.union(&right));
            AdditivityCheck {
                disjoint: left.is_disjoint(&right),
                holds: left.is_disjoint(&right) && left.union(&right) == c.set && sum == union,
                left,
                right,
                sum,
                union,
            }
        })
        .collect();

    let point = q(1, 2);
    let singleton_outside_algebra = agreement.iter().all(|c| c.sample_members.len() > 1);
    let singleton_bounds: Vec<SingletonBound> = radii
        .iter()
        .map(|r| SingletonBound {
            r: format_rational(r),
            mu_r_singleton: ExtValue::from(r.clone()),
            singleton_outside_algebra,
        })
        .collect();
    let least = radii.iter().min().expect("radii are nonempty");

    let unit_interval = RatIntervalSet::interval(q(0, 1), q(1, 1));
    let extension_on_unit_interval = ExtValue::zero();
    let rho_on_unit_interval = rho_infinite(&unit_interval);
    let all_checks_pass = agreement.iter().all(|c| c.agrees)
        && additivity.iter().all(|c| c.holds)
        && singleton_bounds.iter().all(|b| b.singleton_outside_algebra)
        && unit_interval.contains(&point)
        && rho_on_unit_interval.is_infinite();
    let conclusion = if all_checks_pass && extension_on_unit_interval != rho_on_unit_interval {
        CONCLUSION.to_string()
    } else {
        "inconclusive".to_string()
    };
    Certificate {
        point: format_rational(&point),
        radii: radii.iter().map(format_rational).collect(),
        agreement,
        additivity,
        singleton_bounds,
        least_sampled_bound: format_rational(least),
        limit_step: "μ({q}) ≤ r for every r > 0 forces μ({q}) = 0; the sampled radii illustrate the bound".into(),
        unit_interval,
        extension_on_unit_interval,
        rho_on_unit_interval,
        all_checks_pass,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concludes_with_contradiction() {
        let c = counterexample_report();
        assert!(c.all_checks_pass, "{c:#?}");
        assert_eq!(c.conclusion, "contradiction: 0 ≠ ∞");
        assert_eq!(c.agreement.len(), 20);
        assert!(c.agreement.iter().all(|a| a.rho.is_infinite()));
        assert_eq!(c.least_sampled_bound, "1/1000");
        assert_eq!(c.unit_interval.to_string(), "(0,1]");
    }

    #[test]
    fn deterministic() {
        assert_eq!(counterexample_report(), counterexample_report());
        let j = serde_json::to_value(counterexample_report()).unwrap();
        assert_eq!(j["conclusion"], CONCLUSION);
        assert_eq!(j["rho_on_unit_interval"], "inf");
    }
}
