//! Set functions on a finite algebra and the checks that classify them.
//!
//! On a finite ground set a countable disjoint family has only finitely many
//! nonempty members, so every law below is checked on finite families. Binary
//! splits suffice: n-ary additivity, subadditivity and superadditivity follow
//! from the binary case by induction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ext::{ext_add, ExtValue};

use super::algebra::{proper_submasks, AtomSet, SetAlgebra};
use super::MeasureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Premeasure,
    Outer,
    Inner,
    General,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureKind::Premeasure => "premeasure",
            MeasureKind::Outer => "outer premeasure",
            MeasureKind::Inner => "inner premeasure",
            MeasureKind::General => "general set function",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureTable {
    algebra: SetAlgebra,
    values: Vec<ExtValue>,
    kind: MeasureKind,
}

impl MeasureTable {
    /// `values[s]` is the value at the atom set `s`.
    pub fn new(algebra: SetAlgebra, values: Vec<ExtValue>, kind: MeasureKind) -> Result<Self, MeasureError> {
        if values.len() != algebra.element_count() {
            return Err(MeasureError::TableSize {
                expected: algebra.element_count(),
                got: values.len(),
            });
        }
        if kind != MeasureKind::General && !values[0].is_zero() {
            return Err(MeasureError::EmptyNotZero { kind });
        }
        Ok(MeasureTable { algebra, values, kind })
    }

    pub fn from_fn(
        algebra: SetAlgebra,
        kind: MeasureKind,
        f: impl Fn(AtomSet) -> ExtValue,
    ) -> Result<Self, MeasureError> {
        let values = algebra.elements().map(f).collect();
        MeasureTable::new(algebra, values, kind)
    }

    /// The additive table with the given atom weights.
    pub fn from_atom_weights(algebra: SetAlgebra, weights: &[ExtValue]) -> Result<Self, MeasureError> {
        if weights.len() != algebra.atom_count() {
            return Err(MeasureError::Input("one weight per atom required".into()));
        }
        MeasureTable::from_fn(algebra, MeasureKind::Premeasure, |s| {
            super::algebra::atom_indices(s).map(|i| weights[i].clone()).sum()
        })
    }

    /// Cardinality of the underlying point set.
    pub fn counting(algebra: SetAlgebra) -> Self {
        let weights: Vec<ExtValue> = algebra
            .atoms()
            .iter()
            .map(|a| ExtValue::from_integer(a.len() as u64))
            .collect();
        MeasureTable::from_atom_weights(algebra, &weights).expect("weights match atoms")
    }

    pub fn algebra(&self) -> &SetAlgebra {
        &self.algebra
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn value(&self, s: AtomSet) -> &ExtValue {
        &self.values[s as usize]
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn with_kind(self, kind: MeasureKind) -> Result<Self, MeasureError> {
        MeasureTable::new(self.algebra, self.values, kind)
    }

    /// Pointwise order; tables on different algebras are incomparable.
    pub fn leq(&self, other: &MeasureTable) -> bool {
        self.algebra == other.algebra && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn same_values(&self, other: &MeasureTable) -> bool {
        self.algebra == other.algebra && self.values == other.values
    }

    pub fn monotonicity_witness(&self) -> Option<String> {
        for s in self.algebra.elements() {
            for t in proper_submasks(s).chain(std::iter::once(0).filter(|_| s != 0)) {
                if self.value(t) > self.value(s) {
                    return Some(format!(
                        "μ({}) = {} > μ({}) = {}",
                        self.algebra.key(t),
                        self.value(t),
                        self.algebra.key(s),
                        self.value(s)
                    ));
                }
            }
        }
        None
    }

    pub fn require_monotone(&self) -> Result<(), MeasureError> {
        match self.monotonicity_witness() {
            Some(w) => Err(MeasureError::NotMonotone(w)),
            None => Ok(()),
        }
    }

    /// `(key, value)` pairs in mask order.
    pub fn entries(&self) -> Vec<(String, ExtValue)> {
        self.algebra
            .elements()
            .map(|s| (self.algebra.key(s), self.value(s).clone()))
            .collect()
    }
}

impl fmt::Display for MeasureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().into_iter().map(|(k, v)| format!("{k}: {v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KindValidation {
    pub monotone: bool,
    pub empty_zero: bool,
    pub additive: bool,
    pub subadditive: bool,
    pub superadditive: bool,
    pub premeasure: bool,
    pub outer: bool,
    pub inner: bool,
    pub monotone_witness: Option<String>,
    pub additive_witness: Option<String>,
    pub subadditive_witness: Option<String>,
    pub superadditive_witness: Option<String>,
}

impl KindValidation {
    pub fn is(&self, kind: MeasureKind) -> bool {
        match kind {
            MeasureKind::Premeasure => self.premeasure,
            MeasureKind::Outer => self.outer,
            MeasureKind::Inner => self.inner,
            MeasureKind::General => true,
        }
    }

    pub fn witness_for(&self, kind: MeasureKind) -> String {
        let w = match kind {
            MeasureKind::Premeasure => self.additive_witness.clone(),
            MeasureKind::Outer => self.subadditive_witness.clone(),
            MeasureKind::Inner => self.superadditive_witness.clone(),
            MeasureKind::General => None,
        };
        w.or_else(|| self.monotone_witness.clone())
            .unwrap_or_else(|| "value on the empty set is not 0".into())
    }
}

/// Checks every law on every binary split of every algebra element.
pub fn validate_measure_kind(m: &MeasureTable) -> KindValidation {
    let alg = m.algebra();
    let monotone_witness = m.monotonicity_witness();
    let (mut additive_witness, mut subadditive_witness, mut superadditive_witness) = (None, None, None);
    for s in alg.elements() {
        for t in proper_submasks(s) {
            let u = s & !t;
            if t > u {
                continue;
            }
            let sum = ext_add(m.value(t), m.value(u));
            let whole = m.value(s);
            let describe = |rel: &str| {
                format!(
                    "μ({}) + μ({}) = {} {rel} μ({}) = {}",
                    alg.key(t),
                    alg.key(u),
                    sum,
                    alg.key(s),
                    whole
                )
            };
            if sum != *whole && additive_witness.is_none() {
                additive_witness = Some(describe("≠"));
            }
            if sum < *whole && subadditive_witness.is_none() {
                subadditive_witness = Some(describe("<"));
            }
            if sum > *whole && superadditive_witness.is_none() {
                superadditive_witness = Some(describe(">"));
            }
        }
    }
    let empty_zero = m.value(0).is_zero();
    let monotone = monotone_witness.is_none();
    let additive = additive_witness.is_none();
    let subadditive = subadditive_witness.is_none();
    let superadditive = superadditive_witness.is_none();
    KindValidation {
        monotone,
        empty_zero,
        additive,
        subadditive,
        superadditive,
        premeasure: empty_zero && additive,
        outer: empty_zero && monotone && subadditive,
        inner: empty_zero && monotone && superadditive,
        monotone_witness,
        additive_witness,
        subadditive_witness,
        superadditive_witness,
    }
}

pub(crate) fn require_kind(m: &MeasureTable, kind: MeasureKind) -> Result<(), MeasureError> {
    let v = validate_measure_kind(m);
    if v.is(kind) {
        Ok(())
    } else {
        Err(MeasureError::WrongKind {
            expected: kind,
            witness: v.witness_for(kind),
        })
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn mu1_is_outer_not_premeasure() {
        let r = validate_measure_kind(&mu1());
        assert!(r.outer && !r.premeasure && !r.inner);
        assert_eq!(r.additive_witness.unwrap(), "μ({0}) + μ({1}) = 2 ≠ μ({0,1}) = 1");
    }

    #[test]
    fn counting_is_premeasure() {
        let r = validate_measure_kind(&MeasureTable::counting(SetAlgebra::power_set(3)));
        assert!(r.premeasure && r.outer && r.inner);
    }

    #[test]
    fn mu2_is_inner_not_outer() {
        let r = validate_measure_kind(&mu2());
        assert!(r.inner && !r.outer);
    }

    #[test]
    fn empty_value_enforced() {
        let alg = SetAlgebra::power_set(1);
        assert!(matches!(
            MeasureTable::new(alg.clone(), vec![v(1), v(1)], MeasureKind::Outer),
            Err(MeasureError::EmptyNotZero { .. })
        ));
        assert!(MeasureTable::new(alg.clone(), vec![v(1), v(1)], MeasureKind::General).is_ok());
        assert!(matches!(
            MeasureTable::new(alg, vec![v(0)], MeasureKind::General),
            Err(MeasureError::TableSize { .. })
        ));
    }

    #[test]
    fn monotonicity_witness_found() {
        let alg = SetAlgebra::power_set(2);
        let m = MeasureTable::new(alg, vec![v(0), v(2), v(1), v(1)], MeasureKind::General).unwrap();
        assert_eq!(m.monotonicity_witness().unwrap(), "μ({0}) = 2 > μ({0,1}) = 1");
        assert!(!validate_measure_kind(&m).monotone);
    }

    #[test]
    fn infinite_values() {
        let alg = SetAlgebra::power_set(2);
        let m = MeasureTable::from_fn(alg, MeasureKind::Outer, |s| {
            if s == 0 {
                v(0)
            } else {
                ExtValue::inf()
            }
        })
        .unwrap();
        let r = validate_measure_kind(&m);
        assert!(r.premeasure && r.outer && r.inner);
    }
}
