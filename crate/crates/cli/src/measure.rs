use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use kanmeasure::measure::json::{table_to_json, MeasureTableJson};
use kanmeasure::measure::{
    engine_crosscheck, join_premeasures, overline_outer, rl_general, underline_inner, validate_measure_kind,
    CrossOperation, MeasureEncoding, MeasureKind, MeasureTable, TruncatedIndexCategory, Variant,
    CROSSCHECK_MAX_ATOMS,
};
use kanmeasure::report::{CheckRecord, Report};

use crate::{CliError, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureOp {
    Validate,
    Overline,
    Underline,
    Reflect,
    Join,
    Encode,
    Crosscheck,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureScenario {
    pub table: MeasureTableJson,
    /// Further tables joined with `table`.
    #[serde(default)]
    pub others: Vec<MeasureTableJson>,
    /// Defaults to every operation the table admits, except the engine crosscheck.
    #[serde(default)]
    pub operations: Option<Vec<MeasureOp>>,
}

/// Encoding tables get large beyond this many atoms.
const ENCODE_MAX_ATOMS: usize = 4;

fn default_ops(m: &MeasureTable, others: usize) -> Vec<MeasureOp> {
    let v = validate_measure_kind(m);
    let mut ops = vec![MeasureOp::Validate];
    if v.outer {
        ops.push(MeasureOp::Overline);
    }
    if v.inner {
        ops.push(MeasureOp::Underline);
    }
    if v.monotone {
        ops.push(MeasureOp::Reflect);
        if m.algebra().atom_count() <= ENCODE_MAX_ATOMS {
            ops.push(MeasureOp::Encode);
        }
    }
    if others > 0 && v.premeasure {
        ops.push(MeasureOp::Join);
    }
    ops
}

fn is_premeasure(m: &MeasureTable) -> bool {
    validate_measure_kind(m).premeasure
}

pub(crate) fn run(s: &MeasureScenario, name: &str, opts: &Options) -> Result<Report, CliError> {
    let m = s.table.to_table().map_err(CliError::input)?;
    let others = s
        .others
        .iter()
        .map(|t| t.to_table().map_err(CliError::input))
        .collect::<Result<Vec<_>, _>>()?;
    let ops = s.operations.clone().unwrap_or_else(|| default_ops(&m, others.len()));
    let alg = m.algebra();
    let mut out = Map::new();
    out.insert(
        "algebra".into(),
        json!({
            "ground": alg.ground(),
            "atoms": alg.atoms(),
            "elements": alg.elements().map(|e| alg.key(e)).collect::<Vec<_>>(),
        }),
    );
    let mut checks = Vec::new();
    for op in ops {
        match op {
            MeasureOp::Validate => {
                let v = validate_measure_kind(&m);
                let mut rec = CheckRecord::new("declared kind", "premeasure, outer and inner premeasure")
                    .value("premeasure", v.premeasure)
                    .value("outer", v.outer)
                    .value("inner", v.inner);
                if !v.is(m.kind()) {
                    let w = [&v.monotone_witness, &v.additive_witness, &v.subadditive_witness, &v.superadditive_witness]
                        .into_iter()
                        .flatten()
                        .next()
                        .cloned()
                        .unwrap_or_default();
                    rec.fail(format!("table is not {}: {w}", m.kind()));
                }
                out.insert("validation".into(), serde_json::to_value(&v).expect("serializes"));
                checks.push(rec);
            }
            MeasureOp::Overline => {
                let mut rec = CheckRecord::new("closure of an outer premeasure", "sends an outer premeasure");
                match overline_outer(&m) {
                    Ok(o) => {
                        if !is_premeasure(&o) || !m.leq(&o) {
                            rec.fail(format!("{o} is not a premeasure above {m}"));
                        }
                        out.insert("overline".into(), table_to_json(&o));
                    }
                    Err(e) => rec.fail(e.to_string()),
                }
                checks.push(rec);
            }
            MeasureOp::Underline => {
                let mut rec = CheckRecord::new("kernel of an inner premeasure", "sends an inner premeasure");
                match underline_inner(&m) {
                    Ok(u) => {
                        if !is_premeasure(&u) || !u.leq(&m) {
                            rec.fail(format!("{u} is not a premeasure below {m}"));
                        }
                        out.insert("underline".into(), table_to_json(&u));
                    }
                    Err(e) => rec.fail(e.to_string()),
                }
                checks.push(rec);
            }
            MeasureOp::Reflect => {
                let mut rec = CheckRecord::new("largest outer premeasure below", "reflection formula");
                match rl_general(&m) {
                    Ok(r) => {
                        if !validate_measure_kind(&r).outer || !r.leq(&m) {
                            rec.fail(format!("{r} is not an outer premeasure below {m}"));
                        }
                        out.insert("reflect".into(), table_to_json(&r));
                    }
                    Err(e) => rec.fail(e.to_string()),
                }
                checks.push(rec);
            }
            MeasureOp::Join => {
                let mut rec = CheckRecord::new("join of premeasures", "has all joins");
                let family: Vec<MeasureTable> = std::iter::once(m.clone()).chain(others.iter().cloned()).collect();
                match join_premeasures(&family) {
                    Ok(j) => {
                        if !is_premeasure(&j) || !family.iter().all(|f| f.leq(&j)) {
                            rec.fail(format!("{j} is not a premeasure bounding the family"));
                        }
                        out.insert("join".into(), table_to_json(&j));
                    }
                    Err(e) => rec.fail(e.to_string()),
                }
                checks.push(rec);
            }
            MeasureOp::Encode => checks.push(encode_check(&m, &mut out)?),
            MeasureOp::Crosscheck => {
                let mut rec = CheckRecord::new("engine crosscheck", "closure formula on encoded premeasures");
                let v = validate_measure_kind(&m);
                let op = if !others.is_empty() {
                    CrossOperation::Join
                } else if v.outer {
                    CrossOperation::Overline
                } else if v.inner {
                    CrossOperation::Underline
                } else {
                    CrossOperation::ReflectLax
                };
                if alg.atom_count() > CROSSCHECK_MAX_ATOMS {
                    rec = rec.skip(format!("more than {CROSSCHECK_MAX_ATOMS} atoms"));
                } else {
                    match engine_crosscheck(&m, op, &others, &opts.check_options()) {
                        Ok(r) => {
                            if !r.passed() {
                                rec.fail(format!("closed form {:?}, engine {:?}", r.closed_form, r.engine));
                            }
                            out.insert("crosscheck".into(), serde_json::to_value(&r).expect("serializes"));
                        }
                        Err(e) => rec.fail(e.to_string()),
                    }
                }
                checks.push(rec);
            }
        }
    }
    Ok(Report::new(name, opts.seed, opts.samples, checks).with_output(Value::Object(out)))
}

/// Round trip through both index variants and the engine classification of
/// the encoding.
fn encode_check(m: &MeasureTable, out: &mut Map<String, Value>) -> Result<CheckRecord, CliError> {
    let mut rec = CheckRecord::new("encoding round trip", "isomorphism of posets");
    if m.algebra().atom_count() > ENCODE_MAX_ATOMS {
        return Ok(rec.skip(format!("more than {ENCODE_MAX_ATOMS} atoms")));
    }
    let mut kinds = Map::new();
    for (variant, bound) in [(Variant::Part, 2), (Variant::Set, 3)] {
        let trunc = Arc::new(TruncatedIndexCategory::new(variant, bound).map_err(CliError::input)?);
        let enc = MeasureEncoding::with_truncation(m.algebra().clone(), trunc, None).map_err(CliError::input)?;
        let label = format!("{variant:?}").to_lowercase();
        let result = enc.encode(m).and_then(|t| Ok((enc.space().classify(&t), enc.decode(&t)?)));
        match result {
            Ok((class, back)) => {
                if !back.same_values(m) {
                    rec.fail(format!("{label}: decoded {back}"));
                }
                let kind = if class.is_strict {
                    MeasureKind::Premeasure
                } else if class.is_lax {
                    MeasureKind::Outer
                } else if class.is_colax {
                    MeasureKind::Inner
                } else {
                    MeasureKind::General
                };
                kinds.insert(label, json!(kind));
            }
            Err(e) => rec.fail(format!("{label}: {e}")),
        }
    }
    out.insert("encoding".into(), Value::Object(kinds));
    Ok(rec)
}
