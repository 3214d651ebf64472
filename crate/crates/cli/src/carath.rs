use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use kanmeasure::carath::counterexample::CONCLUSION;
use kanmeasure::carath::{
    approximate_by_algebra, counterexample_report, cover_bound_oracle, inner_extend, premeasure_eval,
    restriction_compat_check, right_extend, CofinSet, EventuallyPeriodicSet, GeomWeightPremeasure,
};
use kanmeasure::ext::rational_string;
use kanmeasure::report::{CheckRecord, Report};

use crate::{CliError, Options};

fn default_depth() -> usize {
    16
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarathScenario {
    #[serde(default)]
    pub premeasure: Option<GeomWeightPremeasure>,
    /// Eventually periodic sets to extend to.
    #[serde(default)]
    pub sets: Vec<EventuallyPeriodicSet>,
    /// Finite and cofinite sets, checked against the premeasure directly.
    #[serde(default)]
    pub algebra_sets: Vec<CofinSet>,
    #[serde(default, with = "optional_rational")]
    pub epsilon: Option<BigRational>,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default)]
    pub counterexample: bool,
}

mod optional_rational {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "rational_string")] BigRational);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub(crate) fn run(s: &CarathScenario, name: &str, opts: &Options) -> Result<Report, CliError> {
    let mut out = Map::new();
    let mut checks = Vec::new();
    if s.premeasure.is_none() && !(s.sets.is_empty() && s.algebra_sets.is_empty()) {
        return Err(CliError::input("sets given without a premeasure"));
    }
    if s.epsilon.as_ref().is_some_and(|e| *e <= BigRational::zero()) {
        return Err(CliError::input("epsilon must be positive"));
    }
    if s.depth == 0 {
        return Err(CliError::input("depth must be at least 1"));
    }
    if let Some(rho) = &s.premeasure {
        out.insert("total_mass".into(), json!(rho.total_mass().to_string()));
        if !s.sets.is_empty() {
            let (rec, values) = extension_checks(rho, s);
            checks.extend(rec);
            out.insert("sets".into(), Value::Array(values));
        }
        if !s.algebra_sets.is_empty() {
            let (rec, values) = algebra_checks(rho, &s.algebra_sets);
            checks.extend(rec);
            out.insert("algebra_sets".into(), Value::Array(values));
        }
    }
    if s.counterexample {
        let c = counterexample_report();
        let mut rec = CheckRecord::new("left extension counterexample", "takes the value ∞ on nonempty sets")
            .value("conclusion", &c.conclusion);
        if !c.all_checks_pass || c.conclusion != CONCLUSION {
            rec.fail("an intermediate check failed");
        }
        checks.push(rec);
        out.insert("counterexample".into(), serde_json::to_value(&c).expect("serializes"));
    }
    Ok(Report::new(name, opts.seed, opts.samples, checks).with_output(Value::Object(out)))
}

fn extension_checks(rho: &GeomWeightPremeasure, s: &CarathScenario) -> (Vec<CheckRecord>, Vec<Value>) {
    let mut bracket = CheckRecord::new("cover brackets", "infimum over countable covers").value("depth", s.depth);
    let mut unique = CheckRecord::new("inner and right extensions agree", "a unique extension for finite mass");
    let mut approx = CheckRecord::new("approximation by the algebra", "approximation within ε by the algebra");
    let mut values = Vec::new();
    for a in &s.sets {
        let right = right_extend(rho, a);
        let inner = inner_extend(rho, a);
        let b = cover_bound_oracle(rho, a, s.depth).expect("positive depth");
        if !(b.lower <= right && right <= b.upper) {
            bracket.fail(format!("{a}: {right} outside [{}, {}]", b.lower, b.upper));
        }
        if rho.is_finite_mass() && inner != right {
            unique.fail(format!("{a}: inner {inner}, right {right}"));
        }
        let mut v = json!({
            "set": a.to_string(),
            "right": right.to_string(),
            "inner": inner.to_string(),
            "bracket": [b.lower.to_string(), b.upper.to_string()],
        });
        if let Some(eps) = &s.epsilon {
            match approximate_by_algebra(rho, a, eps) {
                Ok(r) => {
                    if !r.within_bound {
                        approx.fail(format!("{a}: error {}", r.error));
                    }
                    v["approximation"] = serde_json::to_value(&r).expect("serializes");
                }
                Err(e) => approx.fail(format!("{a}: {e}")),
            }
        }
        values.push(v);
    }
    if !rho.is_finite_mass() {
        unique = unique.skip("infinite total mass");
    }
    let mut checks = vec![bracket, unique];
    if s.epsilon.is_some() {
        checks.push(approx);
    }
    (checks, values)
}

fn algebra_checks(rho: &GeomWeightPremeasure, sets: &[CofinSet]) -> (Vec<CheckRecord>, Vec<Value>) {
    let mut proper = CheckRecord::new("extension is proper", "strict transformations exist and are proper");
    let mut restrict = CheckRecord::new("restriction compatibility", "closure of the restriction agrees");
    let mut values = Vec::new();
    for e in sets {
        let direct = premeasure_eval(rho, e);
        let ext = right_extend(rho, &e.to_periodic());
        if ext != direct {
            proper.fail(format!("{e}: extension {ext}, premeasure {direct}"));
        }
        let r = restriction_compat_check(rho, e);
        if !r.equal {
            restrict.fail(format!("{e}: {} vs {}", r.restricted, r.extended));
        }
        values.push(json!({"set": e.to_string(), "premeasure": direct.to_string(), "extension": ext.to_string()}));
    }
    (vec![proper, restrict], values)
}
