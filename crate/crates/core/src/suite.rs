//! Seeded property suites over the engine, the finite measure layer and the
//! countable model. Every check draws from its own generator derived from the
//! seed, so results do not depend on which other checks run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carath::sample::{random_cofin_set, random_epsilon, random_periodic_set, random_premeasure};
use crate::carath::{
    approximate_by_algebra, counterexample_report, cover_bound_oracle, inner_extend, premeasure_eval,
    restriction_compat_check, right_extend, uniqueness_check, CofinSet, GeomWeightPremeasure,
};
use crate::ext::ExtValue;
use crate::measure::sample::{random_algebra, random_integer, random_table, random_table_with};
use crate::measure::{
    engine_crosscheck, join_premeasures, overline_outer, underline_inner, validate_measure_kind, CrossOperation,
    CrosscheckReport, MeasureEncoding, MeasureKind, MeasureTable, SetAlgebra, TruncatedIndexCategory, Variant,
    CROSSCHECK_MAX_ATOMS,
};
use crate::order::FiniteLattice;
use crate::report::{CheckRecord, Report, Status};
use crate::twocat::sample::{random_diagram, random_kan_instance, random_lattice, random_monotone, random_preorder, random_space};
use crate::twocat::{preserves_colimit, weakly_final_check, CandidateMode, CheckOptions, Kind, Side, TwoCatError};

pub const SUITES: [&str; 4] = ["engine", "measure", "carath", "all"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of engine, measure, carath, all")]
pub struct UnknownSuite(pub String);

fn rng_for(seed: u64, check: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ check)
}

/// Splits a sample budget over `parts` instances, at least one each unless
/// the budget is zero.
fn share(samples: usize, parts: usize) -> usize {
    if samples == 0 {
        0
    } else {
        samples.div_ceil(parts)
    }
}

pub fn run_suite(name: &str, opts: &CheckOptions) -> Result<Report, UnknownSuite> {
    let checks = match name {
        "engine" => engine_checks(opts),
        "measure" => measure_checks(opts),
        "carath" => carath_checks(opts),
        "all" => [engine_checks(opts), measure_checks(opts), carath_checks(opts)].concat(),
        other => return Err(UnknownSuite(other.into())),
    };
    Ok(Report::new(&format!("suite {name}"), opts.seed, opts.samples, checks))
}

pub fn engine_checks(opts: &CheckOptions) -> Vec<CheckRecord> {
    vec![strictness_on_random_spaces(opts), kan_laws(opts), weakly_final_agreement(opts.seed)]
}

pub fn measure_checks(opts: &CheckOptions) -> Vec<CheckRecord> {
    let (cross, strict) = measure_crosschecks(opts);
    vec![encoding_round_trips(opts.seed), closure_universal_properties(opts.seed), join_formula(opts.seed), cross, strict]
}

pub fn carath_checks(opts: &CheckOptions) -> Vec<CheckRecord> {
    let (approx, restrict) = algebra_approximation(opts.seed);
    vec![
        properness(opts.seed),
        cover_brackets(opts.seed),
        uniqueness(opts.seed),
        counterexample(),
        approx,
        restrict,
    ]
}

// ---- measure layer

fn most_specific_kind(m: &MeasureTable) -> MeasureKind {
    let v = validate_measure_kind(m);
    if v.premeasure {
        MeasureKind::Premeasure
    } else if v.outer {
        MeasureKind::Outer
    } else if v.inner {
        MeasureKind::Inner
    } else {
        MeasureKind::General
    }
}

pub const ROUND_TRIP_TABLES: usize = 100;

/// Encodes random tables on algebras with up to four atoms in both index
/// variants, decodes them, and compares orders before and after encoding.
pub fn encoding_round_trips(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("encoding round trips", "encoding is an isomorphism of posets");
    let mut rng = rng_for(seed, 1);
    let part = std::sync::Arc::new(TruncatedIndexCategory::new(Variant::Part, 2).expect("valid bound"));
    let set = std::sync::Arc::new(TruncatedIndexCategory::new(Variant::Set, 3).expect("valid bound"));
    let mut pairs = 0;
    for i in 0..ROUND_TRIP_TABLES {
        let alg = random_algebra(&mut rng, 4);
        let kind = crate::measure::sample::random_kind(&mut rng);
        // encodings take monotone tables only
        let m = match kind {
            MeasureKind::General => monotone_hull(&random_table(&mut rng, &alg, kind)),
            _ => random_table(&mut rng, &alg, kind),
        };
        let other = if rng.gen_bool(0.5) {
            monotone_hull(&random_table(&mut rng, &alg, MeasureKind::General))
        } else {
            // a table comparable with m: raise one value
            let s = rng.gen_range(1..alg.element_count()) as u64;
            let raised = MeasureTable::from_fn(alg.clone(), MeasureKind::General, |t| {
                let v = m.value(t).clone();
                if t == s {
                    v + ExtValue::one()
                } else {
                    v
                }
            })
            .expect("vanishes at the empty set");
            monotone_hull(&raised)
        };
        for trunc in [&part, &set] {
            let enc = match MeasureEncoding::with_truncation(alg.clone(), trunc.clone(), None) {
                Ok(e) => e,
                Err(e) => {
                    rec.fail(format!("table {i}: {e}"));
                    continue;
                }
            };
            let result = (|| -> Result<(), String> {
                let t = enc.encode(&m).map_err(|e| e.to_string())?;
                let back = enc.decode(&t).map_err(|e| e.to_string())?;
                if !back.same_values(&m) {
                    return Err(format!("decode(encode(m)) = {back} for m = {m}"));
                }
                let expected = most_specific_kind(&m);
                let kind_ok = match trunc.variant() {
                    Variant::Part => back.kind() == expected,
                    Variant::Set => (back.kind() == MeasureKind::Premeasure) == (expected == MeasureKind::Premeasure),
                };
                if !kind_ok {
                    return Err(format!("{m} decoded as {} instead of {expected}", back.kind()));
                }
                let general = m.clone().with_kind(MeasureKind::General).expect("vanishes at the empty set");
                let (a, b) = (enc.encode(&general).map_err(|e| e.to_string())?, enc.encode(&other).map_err(|e| e.to_string())?);
                for (x, y, tx, ty) in [(&general, &other, &a, &b), (&other, &general, &b, &a)] {
                    if x.leq(y) != enc.space().leq(tx, ty) {
                        return Err(format!("order not preserved between {x} and {y}"));
                    }
                }
                Ok(())
            })();
            if let Err(w) = result {
                rec.fail(format!("table {i} ({:?}): {w}", trunc.variant()));
            }
            pairs += 1;
        }
    }
    rec.value("tables", ROUND_TRIP_TABLES).value("encodings", pairs)
}

/// Values used for grid searches.
pub fn grid_values() -> Vec<ExtValue> {
    let mut v: Vec<ExtValue> = [(0, 1), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1), (6, 1), (9, 1)]
        .into_iter()
        .map(|(n, d)| ExtValue::ratio(n, d))
        .collect();
    v.push(ExtValue::inf());
    v
}

/// Every premeasure whose atom weights come from `values`.
pub fn premeasure_grid(alg: &SetAlgebra, values: &[ExtValue]) -> Vec<MeasureTable> {
    let mut weights: Vec<Vec<ExtValue>> = vec![Vec::new()];
    for _ in 0..alg.atom_count() {
        weights = weights
            .into_iter()
            .flat_map(|w| values.iter().map(move |v| [w.clone(), vec![v.clone()]].concat()))
            .collect();
    }
    weights
        .iter()
        .map(|w| MeasureTable::from_atom_weights(alg.clone(), w).expect("one weight per atom"))
        .collect()
}

fn grid_table<R: Rng>(rng: &mut R, alg: &SetAlgebra, kind: MeasureKind) -> MeasureTable {
    fn grid_value<R: Rng>(rng: &mut R) -> ExtValue {
        grid_values().choose(rng).expect("nonempty").clone()
    }
    random_table_with(rng, alg, kind, grid_value)
}

pub const CLOSURE_TABLES: usize = 40;

/// The closure of an outer table is the least premeasure above it and the
/// kernel of an inner table the greatest premeasure below it, checked against
/// every premeasure of a grid.
pub fn closure_universal_properties(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new(
        "closure universal properties",
        "closures send outer and inner premeasures to premeasures",
    );
    let mut rng = rng_for(seed, 2);
    let values = grid_values();
    let mut compared = 0usize;
    for i in 0..CLOSURE_TABLES {
        let alg = random_algebra(&mut rng, 3);
        let grid = premeasure_grid(&alg, &values);
        let outer = grid_table(&mut rng, &alg, MeasureKind::Outer);
        let inner = grid_table(&mut rng, &alg, MeasureKind::Inner);
        let (Ok(o), Ok(u)) = (overline_outer(&outer), underline_inner(&inner)) else {
            rec.fail(format!("table {i}: closure refused a valid input"));
            continue;
        };
        if !validate_measure_kind(&o).premeasure || !outer.leq(&o) {
            rec.fail(format!("closure {o} of {outer} is not a premeasure above it"));
        }
        if !validate_measure_kind(&u).premeasure || !u.leq(&inner) {
            rec.fail(format!("kernel {u} of {inner} is not a premeasure below it"));
        }
        for p in &grid {
            if outer.leq(p) && !o.leq(p) {
                rec.fail(format!("{p} lies above {outer} but not above its closure {o}"));
            }
            if p.leq(&inner) && !p.leq(&u) {
                rec.fail(format!("{p} lies below {inner} but not below its kernel {u}"));
            }
        }
        compared += 2 * grid.len();
    }
    rec.value("tables", 2 * CLOSURE_TABLES).value("grid comparisons", compared)
}

pub const JOIN_FAMILIES: usize = 30;

/// The join formula against the least upper bound found in a grid.
pub fn join_formula(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("join formula", "premeasures have all joins");
    let mut rng = rng_for(seed, 3);
    let values = grid_values();
    for i in 0..JOIN_FAMILIES {
        let alg = random_algebra(&mut rng, 3);
        let grid = premeasure_grid(&alg, &values);
        let family: Vec<MeasureTable> =
            (0..rng.gen_range(1..4)).map(|_| grid.choose(&mut rng).expect("nonempty").clone()).collect();
        let join = match join_premeasures(&family) {
            Ok(j) => j,
            Err(e) => {
                rec.fail(format!("family {i}: {e}"));
                continue;
            }
        };
        let bounds: Vec<&MeasureTable> = grid.iter().filter(|p| family.iter().all(|f| f.leq(p))).collect();
        match bounds.iter().find(|p| bounds.iter().all(|q| p.leq(q))) {
            Some(least) if least.same_values(&join) => {}
            Some(least) => rec.fail(format!("family {i}: formula gives {join}, grid search {least}")),
            None => rec.fail(format!("family {i}: no least upper bound in the grid")),
        }
    }
    rec.value("families", JOIN_FAMILIES)
}

pub const CROSSCHECK_INSTANCES: usize = 25;

/// Upward closure by maxima over subsets, zero at the empty set.
fn monotone_hull(m: &MeasureTable) -> MeasureTable {
    let alg = m.algebra().clone();
    MeasureTable::from_fn(alg.clone(), MeasureKind::General, |s| {
        alg.elements().filter(|&t| t & !s == 0).map(|t| m.value(t).clone()).max().expect("the empty set")
    })
    .expect("vanishes at the empty set")
}

fn crosscheck_instance<R: Rng>(rng: &mut R, i: usize, opts: &CheckOptions) -> Result<CrosscheckReport, String> {
    let alg = random_algebra(rng, CROSSCHECK_MAX_ATOMS);
    let op = [CrossOperation::Overline, CrossOperation::ReflectLax, CrossOperation::Underline, CrossOperation::Join][i % 4];
    let (m, others) = match op {
        CrossOperation::Overline => (random_table_with(rng, &alg, MeasureKind::Outer, random_integer), vec![]),
        CrossOperation::Underline => (random_table_with(rng, &alg, MeasureKind::Inner, random_integer), vec![]),
        CrossOperation::ReflectLax => {
            (monotone_hull(&random_table_with(rng, &alg, MeasureKind::General, random_integer)), vec![])
        }
        CrossOperation::Join => (
            random_table_with(rng, &alg, MeasureKind::Premeasure, random_integer),
            vec![random_table_with(rng, &alg, MeasureKind::Premeasure, random_integer)],
        ),
    };
    engine_crosscheck(&m, op, &others, opts).map_err(|e| format!("instance {i} ({op:?} of {m}): {e}"))
}

/// Generic engine against closed forms on encoded tables, and the strictness
/// condition and closure comparison on the same encodings.
pub fn measure_crosschecks(opts: &CheckOptions) -> (CheckRecord, CheckRecord) {
    let mut cross = CheckRecord::new("engine crosscheck", "closure formula on encoded premeasures");
    let mut strict =
        CheckRecord::new("strictness on measure encodings", "encodings satisfy the strictness property");
    let mut rng = rng_for(opts.seed, 4);
    let per = CheckOptions { samples: share(opts.samples, CROSSCHECK_INSTANCES), seed: opts.seed };
    let (mut sampled, mut skipped, mut closure_compared) = (0, 0, 0);
    for i in 0..CROSSCHECK_INSTANCES {
        let r = match crosscheck_instance(&mut rng, i, &per) {
            Ok(r) => r,
            Err(w) => {
                cross.fail(w.clone());
                strict.fail(w);
                continue;
            }
        };
        if !(r.equal && r.engine_kind_ok) {
            cross.fail(format!("instance {i} ({:?}): closed form {:?}, engine {:?}", r.operation, r.closed_form, r.engine));
        }
        match &r.strictness {
            Some(s) if s.mode == CandidateMode::Skipped => skipped += 1,
            Some(s) => {
                sampled += s.lax_checked + s.colax_checked;
                if !(s.agree() && s.holds()) {
                    strict.fail(format!("instance {i}: {s:?}"));
                }
            }
            None => strict.fail(format!("instance {i}: strictness not evaluated: {:?}", r.notes)),
        }
        match &r.sigma_independence {
            Some(p) if !p.equal => strict.fail(format!("instance {i}: {:?}", p.witness)),
            Some(p) => closure_compared += p.checked,
            None => strict.fail(format!("instance {i}: closure comparison not evaluated: {:?}", r.notes)),
        }
    }
    let mut strict = strict
        .value("instances", CROSSCHECK_INSTANCES)
        .value("candidates checked", sampled)
        .value("closures compared", closure_compared);
    if skipped == CROSSCHECK_INSTANCES && strict.status == Status::Pass {
        strict = strict.skip("sampled checks need a positive sample count");
    }
    (cross.value("instances", CROSSCHECK_INSTANCES), strict)
}

// ---- engine

pub const ENGINE_INSTANCES: usize = 20;
const ENGINE_ATTEMPTS: usize = 400;

/// Strictness conditions and the closure comparison on random instances
/// whose hypotheses hold.
pub fn strictness_on_random_spaces(opts: &CheckOptions) -> CheckRecord {
    let mut rec = CheckRecord::new(
        "strictness on random instances",
        "strictness conditions agree; closures with Σ and without agree",
    );
    let mut rng = rng_for(opts.seed, 5);
    let (mut found, mut attempts, mut rejected) = (0, 0, 0);
    while found < ENGINE_INSTANCES && attempts < ENGINE_ATTEMPTS {
        attempts += 1;
        let space = random_space(&mut rng);
        let outcome = (|| -> Result<Option<String>, TwoCatError> {
            let s = space.check_strictness_condition(opts)?;
            if s.mode == CandidateMode::Skipped {
                return Ok(None);
            }
            if !s.agree() {
                return Ok(Some(format!("conditions disagree: {s:?}")));
            }
            let lambdas = space.candidates(Kind::Lax, opts)?.items;
            let p = space.sigma_independence_check(&lambdas, opts)?;
            Ok((!p.equal).then(|| format!("closures differ: {:?}", p.witness)))
        })();
        match outcome {
            Ok(Some(w)) => {
                found += 1;
                rec.fail(format!("instance {attempts}: {w}"));
            }
            Ok(None) => found += 1,
            Err(TwoCatError::Hypothesis(_)) | Err(TwoCatError::Nonexistence(_)) | Err(TwoCatError::BackendUnsupported(_)) => {
                rejected += 1
            }
            Err(e) => {
                found += 1;
                rec.fail(format!("instance {attempts}: {e}"));
            }
        }
    }
    if found < ENGINE_INSTANCES {
        rec.fail(format!("only {found} of {attempts} random instances satisfy the hypotheses"));
    }
    rec.value("instances", found).value("rejected by hypotheses", rejected)
}

pub const KAN_INSTANCES: usize = 20;

/// Extensions along sub-functor inclusions are proper, objectwise and
/// universal; properness of strict left and right extensions coincides.
pub fn kan_laws(opts: &CheckOptions) -> CheckRecord {
    let mut rec = CheckRecord::new(
        "extension laws",
        "extensions along order embeddings are proper and objectwise; proper if and only if",
    );
    let mut rng = rng_for(opts.seed, 6);
    let (mut extensions, mut both_exist) = (0, 0);
    for i in 0..KAN_INSTANCES {
        let k = random_kan_instance(&mut rng);
        let outcome = (|| -> Result<(), String> {
            let taus = k.source.candidates(Kind::General, opts).map_err(|e| e.to_string())?.items;
            for tau in taus.choose_multiple(&mut rng, 4) {
                for side in [Side::Left, Side::Right] {
                    let ext = k
                        .source
                        .kan_extend(tau, &k.iota, &k.target, side, Kind::General)
                        .map_err(|e| e.to_string())?;
                    let r = k
                        .source
                        .check_extension(&ext.value, tau, &k.iota, &k.target, side, Kind::General, opts)
                        .map_err(|e| e.to_string())?;
                    extensions += 1;
                    if !(r.proper && r.objectwise && r.in_space && r.universal != Some(false)) {
                        return Err(format!("{side:?} extension of {{{}}}: {r:?}", k.source.render(tau)));
                    }
                }
            }
            let p = k.source.proper_pair_check(&k.iota, &k.target, opts).map_err(|e| e.to_string())?;
            both_exist += p.both_exist;
            if !p.agree {
                return Err(p.witness.unwrap_or_default());
            }
            Ok(())
        })();
        if let Err(w) = outcome {
            rec.fail(format!("instance {i}: {w}"));
        }
    }
    rec.value("instances", KAN_INSTANCES)
        .value("extensions checked", extensions)
        .value("strict inputs with both extensions", both_exist)
}

pub const FINAL_PAIRS: usize = 100;

/// Weak finality against colimit preservation, both directions.
pub fn weakly_final_agreement(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("weakly final functors", "weakly final iff colimits are preserved");
    let mut rng = rng_for(seed, 7);
    let mut finals = 0;
    for i in 0..FINAL_PAIRS {
        let (nc, nd) = (rng.gen_range(0..4), rng.gen_range(1..5));
        let c = random_preorder(&mut rng, nc);
        let d = random_preorder(&mut rng, nd);
        let fun = random_monotone(&mut rng, &c, &d);
        let lattice = random_lattice(&mut rng);
        let diagram = random_diagram(&mut rng, &d, &lattice);
        let outcome = (|| -> Result<(), TwoCatError> {
            let report = weakly_final_check(&c, &d, &fun)?;
            let preserved = preserves_colimit(&c, &d, &fun, &lattice, &diagram)?;
            if report.weakly_final {
                finals += 1;
                if !preserved {
                    rec.fail(format!("pair {i}: weakly final but the colimit of {diagram:?} is not preserved"));
                }
                return Ok(());
            }
            // the witness diagram, valued in the given lattice when it has two elements
            let (target, lo, hi) = if lattice.len() > 1 {
                (lattice.clone(), lattice.bottom(), lattice.top())
            } else {
                (FiniteLattice::chain(2), 0, 1)
            };
            let witness: Vec<usize> = report
                .counterexample
                .as_ref()
                .expect("failing maps carry a diagram")
                .iter()
                .map(|&b| if b == 1 { hi } else { lo })
                .collect();
            if preserves_colimit(&c, &d, &fun, &target, &witness)? {
                rec.fail(format!("pair {i}: not weakly final, yet the witness diagram's colimit is preserved"));
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            rec.fail(format!("pair {i}: {e}"));
        }
    }
    rec.value("pairs", FINAL_PAIRS).value("weakly final", finals)
}

// ---- countable model

pub const PROPERNESS_PREMEASURES: usize = 50;
pub const PROPERNESS_SETS: usize = 20;

/// Right extension against the premeasure on random algebra elements.
pub fn properness_instance<R: Rng>(rng: &mut R, rho: &GeomWeightPremeasure) -> Result<(), String> {
    for _ in 0..PROPERNESS_SETS {
        let e = random_cofin_set(rng);
        let (ext, direct) = (right_extend(rho, &e.to_periodic()), premeasure_eval(rho, &e));
        if ext != direct {
            return Err(format!("at {e}: extension {ext}, premeasure {direct}"));
        }
    }
    Ok(())
}

pub fn properness(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("extension is proper", "strict transformations exist and are proper");
    let mut rng = rng_for(seed, 8);
    for i in 0..PROPERNESS_PREMEASURES {
        let rho = random_premeasure(&mut rng);
        if let Err(w) = properness_instance(&mut rng, &rho) {
            rec.fail(format!("premeasure {i}: {w}"));
        }
    }
    rec.value("premeasures", PROPERNESS_PREMEASURES).value("sets each", PROPERNESS_SETS)
}

pub const BRACKET_INSTANCES: usize = 20;
pub const BRACKET_DEPTH: usize = 64;

pub fn cover_brackets(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("cover brackets", "infimum over countable covers");
    let mut rng = rng_for(seed, 9);
    for i in 0..BRACKET_INSTANCES {
        let rho = random_premeasure(&mut rng);
        let a = random_periodic_set(&mut rng);
        let v = right_extend(&rho, &a);
        let mut previous: Option<ExtValue> = None;
        for depth in 1..=BRACKET_DEPTH {
            let b = cover_bound_oracle(&rho, &a, depth).expect("positive depth");
            let width = rho.tail_mass(depth);
            if !(b.lower <= v && v <= b.upper && b.upper == b.lower.clone() + width.clone()) {
                rec.fail(format!("instance {i}, depth {depth}: [{}, {}] vs {v}", b.lower, b.upper));
                break;
            }
            if previous.as_ref().is_some_and(|p| width > *p) {
                rec.fail(format!("instance {i}: bracket widens at depth {depth}"));
            }
            previous = Some(width);
        }
    }
    rec.value("instances", BRACKET_INSTANCES).value("depths", BRACKET_DEPTH)
}

pub const UNIQUENESS_PREMEASURES: usize = 20;
pub const UNIQUENESS_SETS: usize = 50;

pub fn uniqueness(seed: u64) -> CheckRecord {
    let mut rec = CheckRecord::new("inner and right extensions agree", "a unique extension for finite mass");
    let mut rng = rng_for(seed, 10);
    for i in 0..UNIQUENESS_PREMEASURES {
        let rho = random_premeasure(&mut rng);
        let sets: Vec<_> = (0..UNIQUENESS_SETS).map(|_| random_periodic_set(&mut rng)).collect();
        match uniqueness_check(&rho, &sets) {
            Ok(true) => {}
            Ok(false) => {
                let a = sets.iter().find(|a| inner_extend(&rho, a) != right_extend(&rho, a)).expect("a disagreement");
                rec.fail(format!(
                    "premeasure {i} at {a}: inner {}, right {}",
                    inner_extend(&rho, a),
                    right_extend(&rho, a)
                ));
            }
            Err(e) => rec.fail(format!("premeasure {i}: {e}")),
        }
    }
    rec.value("premeasures", UNIQUENESS_PREMEASURES).value("sets each", UNIQUENESS_SETS)
}

pub fn counterexample() -> CheckRecord {
    let c = counterexample_report();
    let mut rec = CheckRecord::new("left extension counterexample", "takes the value ∞ on nonempty sets")
        .value("conclusion", &c.conclusion)
        .value("least sampled bound", &c.least_sampled_bound);
    if !c.all_checks_pass {
        rec.fail("an intermediate check failed");
    } else if c.conclusion != crate::carath::counterexample::CONCLUSION {
        rec.fail(format!("conclusion {:?}", c.conclusion));
    }
    rec
}

pub const APPROXIMATION_TRIPLES: usize = 50;

pub fn algebra_approximation(seed: u64) -> (CheckRecord, CheckRecord) {
    let mut approx = CheckRecord::new("approximation by the algebra", "approximation within ε by the algebra");
    let mut restrict = CheckRecord::new("restriction compatibility", "closure of the restriction agrees");
    let mut rng = rng_for(seed, 11);
    for i in 0..APPROXIMATION_TRIPLES {
        let rho = random_premeasure(&mut rng);
        let a = random_periodic_set(&mut rng);
        let eps = random_epsilon(&mut rng);
        match approximate_by_algebra(&rho, &a, &eps) {
            Ok(r) if r.within_bound && r.error < ExtValue::from(eps.clone()) => {}
            Ok(r) => approx.fail(format!("triple {i}: error {} for ε = {}", r.error, ExtValue::from(eps))),
            Err(e) => approx.fail(format!("triple {i}: {e}")),
        }
        let b: CofinSet = random_cofin_set(&mut rng);
        let r = restriction_compat_check(&rho, &b);
        if !r.equal || r.restricted != premeasure_eval(&rho, &b) {
            restrict.fail(format!("pair {i} at {b}: {} vs {}", r.restricted, r.extended));
        }
    }
    (
        approx.value("triples", APPROXIMATION_TRIPLES),
        restrict.value("pairs", APPROXIMATION_TRIPLES),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", &CheckOptions::default()).is_err());
    }

    #[test]
    fn carath_suite_passes_and_is_deterministic() {
        let opts = CheckOptions { samples: 0, seed: 7 };
        let a = run_suite("carath", &opts).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_json(), run_suite("carath", &opts).unwrap().to_json());
    }

    #[test]
    fn grid_join_examples() {
        let alg = SetAlgebra::power_set(2);
        assert_eq!(premeasure_grid(&alg, &grid_values()).len(), 121);
        let r = join_formula(1);
        assert!(r.passed(), "{r:?}");
    }
}
