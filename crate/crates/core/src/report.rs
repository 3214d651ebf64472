//! Check records and reports shared by the suites and the scenario runner.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The result the check exercises.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Exact values, rendered as rational strings.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(name: &str, anchor: &str) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            witness: None,
            values: BTreeMap::new(),
        }
    }

    pub fn value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }

    /// Records the first failure; later ones are dropped.
    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness.into());
        }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.witness = Some(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    /// Structured output of the operations run, for scenarios.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
}

impl Report {
    pub fn new(name: &str, seed: u64, samples: usize, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { name: name.into(), seed, samples, checks, summary, output: None }
    }

    pub fn with_output(mut self, output: serde_json::Value) -> Self {
        self.output = Some(output);
        self
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (seed {}, samples {})", self.name, self.seed, self.samples)?;
        for c in &self.checks {
            write!(f, "  {} {} [{}]", c.status, c.name, c.anchor)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
            for (k, v) in &c.values {
                writeln!(f, "      {k} = {v}")?;
            }
        }
        if let Some(out) = &self.output {
            writeln!(f, "output:")?;
            let text = serde_json::to_string_pretty(out).expect("values serialize");
            for line in text.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        write!(
            f,
            "{} passed, {} failed, {} skipped",
            self.summary.pass, self.summary.fail, self.summary.skipped
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_and_first_witness() {
        let mut bad = CheckRecord::new("b", "x");
        bad.fail("first");
        bad.fail("second");
        assert_eq!(bad.witness.as_deref(), Some("first"));
        let r = Report::new(
            "t",
            7,
            10,
            vec![CheckRecord::new("a", "x").value("v", "1/2"), bad, CheckRecord::new("c", "x").skip("no samples")],
        );
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 1 });
        assert!(!r.passed());
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["checks"][0]["values"]["v"], "1/2");
        assert_eq!(j["checks"][1]["status"], "fail");
        assert_eq!(j["seed"], 7);
        assert!(r.to_string().contains("FAIL b [x]: first"));
    }
}
