//! Scenario files and the runner behind the `kanmeasure` binary.

mod carath;
mod engine;
mod measure;
pub mod schema;

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use kanmeasure::report::Report;
use kanmeasure::suite::run_suite;
use kanmeasure::twocat::CheckOptions;

pub use carath::CarathScenario;
pub use engine::EngineScenario;
pub use measure::MeasureScenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    /// Widest wide pullback examined by the closure-formula hypotheses.
    pub arity_bound: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 1000, arity_bound: None }
    }
}

impl Options {
    pub fn check_options(&self) -> CheckOptions {
        CheckOptions { samples: self.samples, seed: self.seed }
    }
}

/// Problems with the input. The binary exits with status 2 on these.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: at {field}: {message}")]
    Field { path: String, field: String, message: String },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub(crate) fn input(e: impl ToString) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub enum Scenario {
    Engine(EngineScenario),
    Measure(MeasureScenario),
    Carath(CarathScenario),
    Suite(SuiteScenario),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteScenario {
    pub name: String,
}

fn payload<T: serde::de::DeserializeOwned>(v: Value, path: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let field = e.path().to_string();
        CliError::Field { path: path.into(), field, message: e.into_inner().to_string() }
    })
}

/// Syntax errors carry a line and column, schema errors the offending field.
pub fn parse_scenario(text: &str, path: &str) -> Result<Scenario, CliError> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = |message: &str| CliError::Field { path: path.into(), field: "kind".into(), message: message.into() };
    let kind = match v.as_object_mut().map(|o| o.remove("kind")) {
        None => return Err(CliError::Field { path: path.into(), field: ".".into(), message: "expected an object".into() }),
        Some(None) => return Err(field("missing field")),
        Some(Some(Value::String(k))) => k,
        Some(Some(_)) => return Err(field("expected a string")),
    };
    Ok(match kind.as_str() {
        "engine" => Scenario::Engine(payload(v, path)?),
        "measure" => Scenario::Measure(payload(v, path)?),
        "carath" => Scenario::Carath(payload(v, path)?),
        "suite" => Scenario::Suite(payload(v, path)?),
        other => return Err(field(&format!("unknown kind {other:?}; expected engine, measure, carath or suite"))),
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    parse_scenario(&text, &shown)
}

pub fn run(scenario: &Scenario, name: &str, opts: &Options) -> Result<Report, CliError> {
    match scenario {
        Scenario::Engine(s) => engine::run(s, name, opts),
        Scenario::Measure(s) => measure::run(s, name, opts),
        Scenario::Carath(s) => carath::run(s, name, opts),
        Scenario::Suite(s) => suite(&s.name, opts),
    }
}

pub fn run_scenario(path: &Path, opts: &Options) -> Result<Report, CliError> {
    let scenario = load_scenario(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    run(&scenario, &name, opts)
}

pub fn suite(name: &str, opts: &Options) -> Result<Report, CliError> {
    run_suite(name, &opts.check_options()).map_err(CliError::input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_positions() {
        match parse_scenario("{\n  \"kind\": \"measure\",\n  \"table\": 3,\n}", "x.json").unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("{other}"),
        }
        let bad_value = r#"{"kind": "measure", "table": {"ground": 1, "atoms": [[0]], "values": {"{}": 0.5}, "kind": "general"}}"#;
        match parse_scenario(bad_value, "x.json").unwrap_err() {
            CliError::Field { field, .. } => assert_eq!(field, "table.values.{}"),
            other => panic!("{other}"),
        }
        assert!(parse_scenario(r#"{"kind": "nope"}"#, "x").is_err());
        assert!(parse_scenario(r#"{"kind": "suite", "name": "all", "extra": 1}"#, "x").is_err());
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        let s = parse_scenario(r#"{"kind": "suite", "name": "nope"}"#, "x").unwrap();
        assert!(matches!(run(&s, "x", &Options::default()), Err(CliError::Input(_))));
    }
}
