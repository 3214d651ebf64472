//! Closed forms for the closures between set functions, by dynamic
//! programming over atom subsets.
//!
//! `best_partition(v, max)` computes, for every `s`, the best value of
//! `Σ v(blocks)` over partitions of `s` into nonempty algebra elements. With
//! nonnegative values the best packing inside `s` is attained by a partition
//! of `s` itself, and for monotone `v` the best cover of `s` can be shrunk to
//! a partition of `s`; so packings and covers reduce to partitions.

use crate::ext::{ext_add, ExtValue};

use super::algebra::{proper_submasks, AtomSet};
use super::table::{require_kind, MeasureKind, MeasureTable};
use super::MeasureError;

fn best_partition(values: &[ExtValue], maximize: bool) -> Vec<ExtValue> {
    let mut best: Vec<ExtValue> = values.to_vec();
    best[0] = ExtValue::zero();
    for s in 1..values.len() as AtomSet {
        let mut acc = values[s as usize].clone();
        // splits t | s∖t with t containing the lowest atom of s avoid repeats
        let low = s & s.wrapping_neg();
        for t in proper_submasks(s).filter(|t| t & low != 0) {
            let cand = ext_add(&best[t as usize], &best[(s & !t) as usize]);
            acc = if maximize { acc.max(cand) } else { acc.min(cand) };
        }
        best[s as usize] = acc;
    }
    best
}

fn closed_form(
    m: &MeasureTable,
    values: &[ExtValue],
    maximize: bool,
    kind: MeasureKind,
) -> Result<MeasureTable, MeasureError> {
    m.algebra().check_size()?;
    MeasureTable::new(m.algebra().clone(), best_partition(values, maximize), kind)
}

/// The least premeasure above an outer premeasure: the largest value of a
/// disjoint family inside each set.
pub fn overline_outer(m: &MeasureTable) -> Result<MeasureTable, MeasureError> {
    m.algebra().check_size()?;
    require_kind(m, MeasureKind::Outer)?;
    closed_form(m, m.values(), true, MeasureKind::Premeasure)
}

/// The greatest premeasure below an inner premeasure: the smallest value of a
/// disjoint family covering each set.
pub fn underline_inner(m: &MeasureTable) -> Result<MeasureTable, MeasureError> {
    m.algebra().check_size()?;
    require_kind(m, MeasureKind::Inner)?;
    closed_form(m, m.values(), false, MeasureKind::Premeasure)
}

/// The largest outer premeasure below a monotone set function. The empty
/// family covers the empty set, so the result vanishes there.
pub fn rl_general(m: &MeasureTable) -> Result<MeasureTable, MeasureError> {
    m.algebra().check_size()?;
    m.require_monotone()?;
    closed_form(m, m.values(), false, MeasureKind::Outer)
}

/// The least premeasure above every member of a nonempty family.
pub fn join_premeasures(family: &[MeasureTable]) -> Result<MeasureTable, MeasureError> {
    let first = family
        .first()
        .ok_or_else(|| MeasureError::Input("the join of an empty family needs an algebra".into()))?;
    first.algebra().check_size()?;
    for m in family {
        if m.algebra() != first.algebra() {
            return Err(MeasureError::MixedAlgebras);
        }
        require_kind(m, MeasureKind::Premeasure)?;
    }
    let pointwise: Vec<ExtValue> = (0..first.values().len())
        .map(|s| {
            family
                .iter()
                .map(|m| m.values()[s].clone())
                .fold(ExtValue::zero(), ExtValue::max)
        })
        .collect();
    closed_form(first, &pointwise, true, MeasureKind::Premeasure)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::SetAlgebra;
    use super::super::table::fixtures::*;
    use super::super::table::validate_measure_kind;
    use super::*;
    use proptest::prelude::*;

    /// All set partitions of the atoms of `s`, by brute-force recursion.
    fn partitions(s: AtomSet) -> Vec<Vec<AtomSet>> {
        if s == 0 {
            return vec![vec![]];
        }
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut out = Vec::new();
        // block containing the lowest atom: low ∪ any submask of rest
        let mut sub = rest;
        loop {
            let block = low | sub;
            for mut p in partitions(s & !block) {
                p.push(block);
                out.push(p);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out
    }

    fn sum(m: &MeasureTable, blocks: &[AtomSet]) -> ExtValue {
        blocks.iter().map(|&b| m.value(b).clone()).sum()
    }

    /// Packings of arbitrary subsets and covers by arbitrary supersets.
    fn oracle_pack(m: &MeasureTable, s: AtomSet) -> ExtValue {
        m.algebra()
            .elements()
            .filter(|u| u & !s == 0)
            .flat_map(partitions)
            .map(|p| sum(m, &p))
            .fold(ExtValue::zero(), ExtValue::max)
    }

    fn oracle_cover(m: &MeasureTable, s: AtomSet) -> ExtValue {
        m.algebra()
            .elements()
            .filter(|u| s & !u == 0)
            .flat_map(partitions)
            .map(|p| sum(m, &p))
            .fold(ExtValue::inf(), ExtValue::min)
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        assert_eq!(partitions(0b1111).len(), 15);
        assert_eq!(partitions(0b11111).len(), 52);
    }

    #[test]
    fn overline_of_mu1() {
        let o = overline_outer(&mu1()).unwrap();
        assert_eq!(o.value(0b111), &v(3));
        assert_eq!(o.value(0b011), &v(2));
        assert_eq!(o.value(0b100), &v(1));
        assert!(validate_measure_kind(&o).premeasure);
        assert!(mu1().leq(&o));
    }

    #[test]
    fn underline_of_mu2() {
        let u = underline_inner(&mu2()).unwrap();
        assert_eq!(u.value(0b111), &v(3));
        assert_eq!(u.value(0b110), &v(2));
        assert_eq!(u.value(0b001), &v(1));
        assert!(u.leq(&mu2()));
    }

    #[test]
    fn join_of_point_masses() {
        let j = join_premeasures(&[delta(0), delta(1)]).unwrap();
        assert_eq!(j.value(0b011), &v(2));
        assert_eq!(j.value(0b111), &v(2));
        assert_eq!(j.value(0b100), &v(0));
        assert!(join_premeasures(&[delta(0)]).unwrap().same_values(&delta(0)));
        assert!(join_premeasures(&[delta(2), delta(2)]).unwrap().same_values(&delta(2)));
    }

    #[test]
    fn rl_general_example() {
        let alg = SetAlgebra::power_set(2);
        let m = MeasureTable::new(alg, vec![v(1), v(2), v(2), v(5)], MeasureKind::General).unwrap();
        let r = rl_general(&m).unwrap();
        assert_eq!(r.values(), &[v(0), v(2), v(2), v(4)]);
        assert!(validate_measure_kind(&r).outer);
        let zero = MeasureTable::new(SetAlgebra::power_set(2), vec![v(0); 4], MeasureKind::General).unwrap();
        assert!(rl_general(&zero).unwrap().same_values(&zero));
    }

    #[test]
    fn wrong_kinds_rejected() {
        assert!(matches!(overline_outer(&mu2()), Err(MeasureError::WrongKind { .. })));
        assert!(matches!(underline_inner(&mu1()), Err(MeasureError::WrongKind { .. })));
        let alg = SetAlgebra::power_set(2);
        let bad = MeasureTable::new(alg, vec![v(0), v(3), v(1), v(2)], MeasureKind::General).unwrap();
        assert!(matches!(rl_general(&bad), Err(MeasureError::NotMonotone(_))));
        assert!(matches!(
            join_premeasures(&[delta(0), MeasureTable::counting(SetAlgebra::power_set(2))]),
            Err(MeasureError::MixedAlgebras)
        ));
    }

    #[test]
    fn infinite_and_trivial_cases() {
        let alg = SetAlgebra::power_set(3);
        let inf = MeasureTable::from_fn(alg.clone(), MeasureKind::Outer, |s| {
            if s == 0 { v(0) } else { ExtValue::inf() }
        })
        .unwrap();
        assert!(overline_outer(&inf).unwrap().same_values(&inf));
        let zero = MeasureTable::from_fn(alg.clone(), MeasureKind::Inner, |_| v(0)).unwrap();
        assert!(underline_inner(&zero).unwrap().same_values(&zero));
        let c = MeasureTable::counting(alg);
        assert!(overline_outer(&c).unwrap().same_values(&c));
        assert!(underline_inner(&c).unwrap().same_values(&c));
    }

    #[test]
    fn size_guard() {
        let alg = SetAlgebra::power_set(13);
        let m = MeasureTable::from_fn(alg, MeasureKind::Outer, |s| v(s.count_ones().min(1) as u64)).unwrap();
        assert!(matches!(overline_outer(&m), Err(MeasureError::TooManyAtoms(13))));
    }

    fn arb_monotone(atoms: usize) -> impl Strategy<Value = MeasureTable> {
        // a monotone table: the max of random values over all subsets
        prop::collection::vec(0u64..6, 1 << atoms).prop_map(move |raw| {
            let alg = SetAlgebra::power_set(atoms);
            MeasureTable::from_fn(alg, MeasureKind::General, |s| {
                v((0..(1u64 << atoms)).filter(|t| t & !s == 0).map(|t| raw[t as usize]).max().unwrap())
            })
            .unwrap()
        })
    }

    fn arb_premeasure(atoms: usize) -> impl Strategy<Value = MeasureTable> {
        prop::collection::vec(0u64..4, atoms).prop_map(move |w| {
            let w: Vec<ExtValue> = w.into_iter().map(v).collect();
            MeasureTable::from_atom_weights(SetAlgebra::power_set(atoms), &w).unwrap()
        })
    }

    /// All premeasures with atom weights in `0..=k` on `atoms` atoms.
    fn premeasure_grid(atoms: usize, k: u64) -> Vec<MeasureTable> {
        let mut out = vec![vec![]];
        for _ in 0..atoms {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| (0..=k).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        out.into_iter()
            .map(|w| {
                let w: Vec<ExtValue> = w.into_iter().map(v).collect();
                MeasureTable::from_atom_weights(SetAlgebra::power_set(atoms), &w).unwrap()
            })
            .collect()
    }

    proptest! {
        #[test]
        fn closures_match_enumeration(m in arb_monotone(3)) {
            let r = rl_general(&m).unwrap();
            for s in m.algebra().elements() {
                let expected = if s == 0 { v(0) } else { oracle_cover(&m, s) };
                prop_assert_eq!(r.value(s), &expected);
            }
            prop_assert!(validate_measure_kind(&r).outer);
            let zeroed = MeasureTable::from_fn(m.algebra().clone(), MeasureKind::General, |s| {
                if s == 0 { v(0) } else { m.value(s).clone() }
            }).unwrap();
            let v1 = validate_measure_kind(&zeroed);
            if v1.outer {
                let o = overline_outer(&zeroed.clone().with_kind(MeasureKind::Outer).unwrap()).unwrap();
                for s in m.algebra().elements() {
                    prop_assert_eq!(o.value(s), &oracle_pack(&zeroed, s));
                }
            }
            if v1.inner {
                let u = underline_inner(&zeroed.clone().with_kind(MeasureKind::Inner).unwrap()).unwrap();
                for s in m.algebra().elements() {
                    let expected = if s == 0 { v(0) } else { oracle_cover(&zeroed, s) };
                    prop_assert_eq!(u.value(s), &expected);
                }
            }
        }

        #[test]
        fn rl_is_largest_outer_below(m in arb_monotone(2)) {
            let r = rl_general(&m).unwrap();
            prop_assert!(r.leq(&m));
            // every outer table with values ≤ 5 below m lies below r
            let alg = SetAlgebra::power_set(2);
            for a in 0..6u64 { for b in 0..6u64 { for c in 0..6u64 {
                let o = MeasureTable::new(alg.clone(), vec![v(0), v(a), v(b), v(c)], MeasureKind::General).unwrap();
                if validate_measure_kind(&o).outer && (0..4).all(|s| o.value(s) <= m.value(s)) {
                    prop_assert!(o.leq(&r));
                }
            }}}
        }

        #[test]
        fn overline_is_a_closure_operator(m in arb_monotone(3)) {
            let outer = rl_general(&m).unwrap();
            let o = overline_outer(&outer).unwrap();
            prop_assert!(outer.leq(&o));
            let oo = overline_outer(&o.clone().with_kind(MeasureKind::Outer).unwrap()).unwrap();
            prop_assert!(oo.same_values(&o));
            // p ≥ m ⟺ p ≥ overline(m) over a grid of premeasures
            for p in premeasure_grid(3, 3) {
                prop_assert_eq!(outer.leq(&p), o.leq(&p));
            }
        }

        #[test]
        fn underline_is_a_kernel_operator(p in arb_premeasure(3), q in arb_premeasure(3)) {
            // the pointwise min of two premeasures is inner
            let j = MeasureTable::from_fn(p.algebra().clone(), MeasureKind::Inner, |s| {
                p.value(s).clone().min(q.value(s).clone())
            }).unwrap();
            prop_assert!(validate_measure_kind(&j).inner);
            let u = underline_inner(&j).unwrap();
            prop_assert!(u.leq(&j));
            for r in premeasure_grid(3, 3) {
                prop_assert_eq!(r.leq(&j), r.leq(&u));
            }
        }

        #[test]
        fn join_is_least_upper_bound(p in arb_premeasure(3), q in arb_premeasure(3)) {
            let j = join_premeasures(&[p.clone(), q.clone()]).unwrap();
            prop_assert!(p.leq(&j) && q.leq(&j));
            for r in premeasure_grid(3, 3) {
                if p.leq(&r) && q.leq(&r) {
                    prop_assert!(j.leq(&r));
                }
            }
        }

        #[test]
        fn overline_is_monotone(a in arb_monotone(3), b in arb_monotone(3)) {
            let (oa, ob) = (rl_general(&a).unwrap(), rl_general(&b).unwrap());
            let lo = MeasureTable::from_fn(oa.algebra().clone(), MeasureKind::General, |s| {
                oa.value(s).clone().min(ob.value(s).clone())
            }).unwrap();
            let lo = rl_general(&lo).unwrap();
            prop_assert!(lo.leq(&oa));
            prop_assert!(overline_outer(&lo).unwrap().leq(&overline_outer(&oa).unwrap()));
        }
    }
}
