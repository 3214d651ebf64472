//! Seeded random algebras and tables of each kind.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ext::ExtValue;

use super::algebra::SetAlgebra;
use super::table::{MeasureKind, MeasureTable};

/// A partition of a ground set of up to six points into `1..=max_atoms` atoms.
pub fn random_algebra<R: Rng>(rng: &mut R, max_atoms: usize) -> SetAlgebra {
    let atoms = rng.gen_range(1..=max_atoms);
    let ground = rng.gen_range(atoms..=atoms.max(6));
    let mut points: Vec<usize> = (0..ground).collect();
    points.shuffle(rng);
    let mut parts: Vec<Vec<usize>> = points[..atoms].iter().map(|&p| vec![p]).collect();
    for &p in &points[atoms..] {
        parts[rng.gen_range(0..atoms)].push(p);
    }
    SetAlgebra::from_atoms(ground, parts).expect("a partition")
}

/// Mostly small integers, sometimes a fraction, rarely `∞`.
pub fn random_value<R: Rng>(rng: &mut R) -> ExtValue {
    match rng.gen_range(0..10) {
        0 => ExtValue::inf(),
        1 | 2 => ExtValue::ratio(rng.gen_range(0..7), rng.gen_range(1..4)),
        _ => ExtValue::from_integer(rng.gen_range(0..5)),
    }
}

/// Small integers only.
pub fn random_integer<R: Rng>(rng: &mut R) -> ExtValue {
    ExtValue::from_integer(rng.gen_range(0..5))
}

type ValueFn<R> = fn(&mut R) -> ExtValue;

fn random_premeasure<R: Rng>(rng: &mut R, alg: &SetAlgebra, value: ValueFn<R>) -> MeasureTable {
    let weights: Vec<ExtValue> = (0..alg.atom_count()).map(|_| value(rng)).collect();
    MeasureTable::from_atom_weights(alg.clone(), &weights).expect("one weight per atom")
}

fn pointwise(a: &MeasureTable, b: &MeasureTable, kind: MeasureKind, f: fn(ExtValue, ExtValue) -> ExtValue) -> MeasureTable {
    MeasureTable::from_fn(a.algebra().clone(), kind, |s| f(a.value(s).clone(), b.value(s).clone()))
        .expect("same algebra")
}

/// A random table of the requested kind.
///
/// Outer tables are maxima of premeasures or premeasures capped by a
/// constant; inner tables are minima of premeasures; general tables are
/// arbitrary values with `0` at the empty set.
pub fn random_table<R: Rng>(rng: &mut R, alg: &SetAlgebra, kind: MeasureKind) -> MeasureTable {
    random_table_with(rng, alg, kind, random_value)
}

/// [`random_table`] with a different source of values.
pub fn random_table_with<R: Rng>(rng: &mut R, alg: &SetAlgebra, kind: MeasureKind, value: ValueFn<R>) -> MeasureTable {
    match kind {
        MeasureKind::Premeasure => random_premeasure(rng, alg, value),
        MeasureKind::Outer => {
            let a = random_premeasure(rng, alg, value);
            if rng.gen_bool(0.5) {
                let b = random_premeasure(rng, alg, value);
                pointwise(&a, &b, kind, ExtValue::max)
            } else {
                let cap = ExtValue::from_integer(rng.gen_range(1..6));
                MeasureTable::from_fn(alg.clone(), kind, |s| a.value(s).clone().min(if s == 0 { ExtValue::zero() } else { cap.clone() }))
                    .expect("vanishes at the empty set")
            }
        }
        MeasureKind::Inner => {
            let a = random_premeasure(rng, alg, value);
            let b = random_premeasure(rng, alg, value);
            pointwise(&a, &b, kind, ExtValue::min)
        }
        MeasureKind::General => {
            let values = alg
                .elements()
                .map(|s| if s == 0 { ExtValue::zero() } else { value(rng) })
                .collect();
            MeasureTable::new(alg.clone(), values, kind).expect("one value per element")
        }
    }
}

pub fn random_kind<R: Rng>(rng: &mut R) -> MeasureKind {
    *[MeasureKind::Premeasure, MeasureKind::Outer, MeasureKind::Inner, MeasureKind::General]
        .choose(rng)
        .expect("nonempty")
}
