//! Seeded random instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::premeasure::{GeomWeightPremeasure, Tail};
use super::sets::{CofinSet, EventuallyPeriodicSet};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Up to five override weights and a zero or geometric tail.
pub fn random_premeasure<R: Rng>(rng: &mut R) -> GeomWeightPremeasure {
    let overrides = (0..rng.gen_range(0..6))
        .map(|_| q(rng.gen_range(0..8), rng.gen_range(1..6)))
        .collect();
    let tail = if rng.gen_bool(0.2) {
        Tail::Zero
    } else {
        let d = rng.gen_range(2..9);
        Tail::Geometric {
            c: q(rng.gen_range(0..5), rng.gen_range(1..4)),
            r: q(rng.gen_range(0..d), d),
        }
    };
    GeomWeightPremeasure::new(overrides, tail).expect("weights are valid")
}

pub fn random_periodic_set<R: Rng>(rng: &mut R) -> EventuallyPeriodicSet {
    let prefix = (0..rng.gen_range(0..10)).map(|_| rng.gen_bool(0.5)).collect();
    let pattern = (0..rng.gen_range(1..6)).map(|_| rng.gen_bool(0.5)).collect();
    EventuallyPeriodicSet::new(prefix, pattern).expect("pattern is nonempty")
}

pub fn random_cofin_set<R: Rng>(rng: &mut R) -> CofinSet {
    let indices: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..12)).collect();
    if rng.gen_bool(0.5) {
        CofinSet::cofinite(indices)
    } else {
        CofinSet::finite(indices)
    }
}

/// A positive rational no larger than one.
pub fn random_epsilon<R: Rng>(rng: &mut R) -> BigRational {
    q(1, rng.gen_range(1..200))
}
