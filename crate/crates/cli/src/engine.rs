use serde::Deserialize;
use serde_json::{json, Map, Value};

use kanmeasure::report::{CheckRecord, Report};
use kanmeasure::twocat::json::{transformation_to_spec, BuiltInstance, EngineInstance};
use kanmeasure::twocat::monad::check_monad_hypotheses;
use kanmeasure::twocat::{CandidateMode, Kind, LatticeFunctor, Side, Space, Transformation, TwoCatError};

use crate::{CliError, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineOp {
    Classify,
    Closures,
    Strictness,
    SigmaIndependence,
    Formula,
    Extension,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineScenario {
    pub instance: EngineInstance,
    /// Defaults to every operation; `extension` only with an `extension` block.
    #[serde(default)]
    pub operations: Option<Vec<EngineOp>>,
    /// Kind of the transformations extended along `ι`; defaults to the
    /// instance's declared kind, then to general.
    #[serde(default)]
    pub extension_kind: Option<Kind>,
}

type T = Transformation<usize>;

fn skip_or_fail(rec: &mut Option<CheckRecord>, e: TwoCatError) -> Result<(), CliError> {
    match e {
        TwoCatError::TooLarge(_) => Err(CliError::input(e)),
        TwoCatError::Hypothesis(_) | TwoCatError::Nonexistence(_) => {
            *rec = rec.take().map(|r| r.skip(e.to_string()));
            Ok(())
        }
        e => {
            if let Some(r) = rec {
                r.fail(e.to_string());
            }
            Ok(())
        }
    }
}

pub(crate) fn run(s: &EngineScenario, name: &str, opts: &Options) -> Result<Report, CliError> {
    let built = s.instance.build().map_err(CliError::input)?;
    let space = &built.space;
    let ops = s.operations.clone().unwrap_or_else(|| {
        let mut ops = vec![EngineOp::Classify, EngineOp::Closures, EngineOp::Strictness, EngineOp::SigmaIndependence, EngineOp::Formula];
        if built.extension.is_some() {
            ops.push(EngineOp::Extension);
        }
        ops
    });
    let check = opts.check_options();
    let spec = |t: &T| json!(transformation_to_spec(space, t));
    let lax: Vec<(&String, &T)> = built.transformations.iter().filter(|(_, t)| space.classify(t).is_lax).collect();
    let mut out = Map::new();
    let mut checks = Vec::new();
    for op in ops {
        match op {
            EngineOp::Classify => {
                let mut rec = CheckRecord::new("classification", "lax, colax and strict Σ-transformations");
                let mut kinds = Map::new();
                for (n, t) in &built.transformations {
                    let k = space.classify(t);
                    if let Some(want) = s.instance.kind {
                        if !k.is(want) {
                            rec.fail(format!("{n} is not {want}"));
                        }
                    }
                    kinds.insert(n.clone(), serde_json::to_value(&k).expect("serializes"));
                }
                checks.push(rec.value("transformations", built.transformations.len()));
                out.insert("classification".into(), Value::Object(kinds));
            }
            EngineOp::Closures => {
                let mut rec = Some(CheckRecord::new("reflections", "reflection and coreflection"));
                let mut values = Map::new();
                for (n, t) in &built.transformations {
                    let mut v = Map::new();
                    match (space.reflect_lax(t), space.coreflect_colax(t)) {
                        (Ok(below), Ok(above)) => {
                            if !(space.leq(&below, t) && space.leq(t, &above)) {
                                if let Some(r) = rec.as_mut() {
                                    r.fail(format!("{n} is not between its reflections"));
                                }
                            }
                            v.insert("reflect_lax".into(), spec(&below));
                            v.insert("coreflect_colax".into(), spec(&above));
                        }
                        (Err(e), _) | (_, Err(e)) => skip_or_fail(&mut rec, e)?,
                    }
                    let kind = space.classify(t);
                    if kind.is_lax {
                        match space.closure_overline(t) {
                            Ok(c) => {
                                v.insert("overline".into(), spec(&c));
                            }
                            Err(e) => skip_or_fail(&mut rec, e)?,
                        }
                    }
                    if kind.is_colax {
                        match space.closure_underline(t) {
                            Ok(c) => {
                                v.insert("underline".into(), spec(&c));
                            }
                            Err(e) => skip_or_fail(&mut rec, e)?,
                        }
                    }
                    values.insert(n.clone(), Value::Object(v));
                }
                checks.extend(rec);
                out.insert("closures".into(), Value::Object(values));
            }
            EngineOp::Strictness => {
                let mut rec = Some(CheckRecord::new("strictness condition", "the strictness property"));
                match space.check_strictness_condition(&check) {
                    Ok(r) if r.mode == CandidateMode::Skipped => {
                        rec = rec.map(|c| c.skip("sampled checks need a positive sample count"))
                    }
                    Ok(r) => {
                        let c = rec.as_mut().expect("present");
                        if !r.agree() {
                            c.fail(format!("conditions disagree: {:?} / {:?}", r.witness_lax, r.witness_colax));
                        }
                        *c = c.clone().value("holds", r.holds());
                        out.insert("strictness".into(), serde_json::to_value(&r).expect("serializes"));
                    }
                    Err(e) => skip_or_fail(&mut rec, e)?,
                }
                checks.extend(rec);
            }
            EngineOp::SigmaIndependence => {
                let mut rec = Some(CheckRecord::new("closure without Σ", "closures with Σ and without agree"));
                let lambdas: Vec<T> = lax.iter().map(|(_, t)| (*t).clone()).collect();
                match space.sigma_independence_check(&lambdas, &check) {
                    Ok(r) => {
                        if !r.equal {
                            rec.as_mut().expect("present").fail(r.witness.clone().unwrap_or_default());
                        }
                        out.insert("sigma_independence".into(), serde_json::to_value(&r).expect("serializes"));
                    }
                    Err(e) => skip_or_fail(&mut rec, e)?,
                }
                checks.extend(rec);
            }
            EngineOp::Formula => checks.push(formula(space, &lax, opts, &mut out)?),
            EngineOp::Extension => {
                let kind = s.extension_kind.or(s.instance.kind).unwrap_or(Kind::General);
                checks.extend(extension(&built, kind, opts, &mut out)?);
            }
        }
    }
    Ok(Report::new(name, opts.seed, opts.samples, checks).with_output(Value::Object(out)))
}

fn formula(space: &Space<LatticeFunctor>, lax: &[(&String, &T)], opts: &Options, out: &mut Map<String, Value>) -> Result<CheckRecord, CliError> {
    let mut rec = CheckRecord::new("closure formula", "the closure is a strict transformation");
    let h = check_monad_hypotheses(space.source(), opts.arity_bound).map_err(CliError::input)?;
    let mut values = Map::new();
    for (n, l) in lax {
        let f = space.monad_formula_overline(l, Some(&h)).map_err(CliError::input)?;
        if h.all_hold() && (!f.is_strict || f.fixpoint_agrees == Some(false)) {
            rec.fail(format!("{n}: hypotheses hold but the formula gives {}", space.render(&f.value)));
        }
        values.insert(
            (*n).clone(),
            json!({
                "value": transformation_to_spec(space, &f.value),
                "strict": f.is_strict,
                "fixpoint_agrees": f.fixpoint_agrees,
            }),
        );
    }
    out.insert("hypotheses".into(), serde_json::to_value(&h).expect("serializes"));
    out.insert("formula".into(), Value::Object(values));
    Ok(rec.value("hypotheses hold", h.all_hold()))
}

fn extension(built: &BuiltInstance, kind: Kind, opts: &Options, out: &mut Map<String, Value>) -> Result<Vec<CheckRecord>, CliError> {
    let Some((target, iota)) = &built.extension else {
        return Err(CliError::input("the extension operation needs an extension block"));
    };
    let space = &built.space;
    let check = opts.check_options();
    let mut laws = CheckRecord::new("extension laws", "extensions along order embeddings are proper and objectwise");
    let mut values = Map::new();
    for (n, tau) in &built.transformations {
        if !space.is_kind(tau, kind) {
            continue;
        }
        let mut sides = Map::new();
        for side in [Side::Left, Side::Right] {
            let label = format!("{side:?}").to_lowercase();
            match space.kan_extend(tau, iota, target, side, kind) {
                Ok(ext) => {
                    let r = space
                        .check_extension(&ext.value, tau, iota, target, side, kind, &check)
                        .map_err(CliError::input)?;
                    if !r.in_space || r.universal == Some(false) {
                        laws.fail(format!("{label} extension of {n}: {:?}", r.witness));
                    }
                    sides.insert(
                        label,
                        json!({"value": transformation_to_spec(target, &ext.value), "report": r}),
                    );
                }
                Err(TwoCatError::Nonexistence(msg)) => {
                    sides.insert(label, json!({"exists": false, "reason": msg}));
                }
                Err(e) => laws.fail(format!("{label} extension of {n}: {e}")),
            }
        }
        values.insert(n.clone(), Value::Object(sides));
    }
    out.insert("extensions".into(), Value::Object(values));
    let mut both = CheckRecord::new("strict extensions", "proper if and only if");
    match space.proper_pair_check(iota, target, &check) {
        Ok(r) if r.mode == CandidateMode::Skipped => both = both.skip("sampled checks need a positive sample count"),
        Ok(r) => {
            if !r.agree {
                both.fail(r.witness.clone().unwrap_or_default());
            }
            out.insert("proper_pair".into(), serde_json::to_value(&r).expect("serializes"));
        }
        Err(e @ TwoCatError::TooLarge(_)) => return Err(CliError::input(e)),
        Err(e) => both.fail(e.to_string()),
    }
    Ok(vec![laws, both])
}
