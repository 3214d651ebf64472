//! JSON form of measure tables:
//! `{"ground": n, "atoms": [[..], ..], "values": {"{0,2}": "p/q" | "inf", ..}, "kind": ".."}`.
//!
//! Keys are sets of atom indices. Every algebra element needs a value, and
//! values are exact rational strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ext::ExtValue;

use super::algebra::SetAlgebra;
use super::table::{MeasureKind, MeasureTable};
use super::MeasureError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureTableJson {
    pub ground: usize,
    pub atoms: Vec<Vec<usize>>,
    pub values: BTreeMap<String, String>,
    pub kind: MeasureKind,
}

impl MeasureTableJson {
    pub fn from_table(m: &MeasureTable) -> Self {
        MeasureTableJson {
            ground: m.algebra().ground(),
            atoms: m.algebra().atoms().to_vec(),
            values: m.entries().into_iter().map(|(k, v)| (k, v.to_string())).collect(),
            kind: m.kind(),
        }
    }

    pub fn to_table(&self) -> Result<MeasureTable, MeasureError> {
        let alg = SetAlgebra::from_atoms(self.ground, self.atoms.clone())?;
        alg.check_size()?;
        let mut values: Vec<Option<ExtValue>> = vec![None; alg.element_count()];
        for (key, raw) in &self.values {
            let s = alg.parse_key(key)?;
            let v: ExtValue = raw
                .parse()
                .map_err(|e| MeasureError::Input(format!("value for {key}: {e}")))?;
            if values[s as usize].replace(v).is_some() {
                return Err(MeasureError::Input(format!("duplicate key for {}", alg.key(s))));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(s, v)| v.ok_or_else(|| MeasureError::Input(format!("missing value for {}", alg.key(s as u64)))))
            .collect::<Result<Vec<_>, _>>()?;
        MeasureTable::new(alg, values, self.kind)
    }
}

pub fn table_to_json(m: &MeasureTable) -> serde_json::Value {
    serde_json::to_value(MeasureTableJson::from_table(m)).expect("tables serialize")
}

pub fn table_from_json(v: &serde_json::Value) -> Result<MeasureTable, MeasureError> {
    let j: MeasureTableJson =
        serde_json::from_value(v.clone()).map_err(|e| MeasureError::Input(e.to_string()))?;
    j.to_table()
}

#[cfg(test)]
mod tests {
    use super::super::table::fixtures::*;
    use super::*;

    #[test]
    fn round_trip() {
        let m = mu1();
        let j = table_to_json(&m);
        assert_eq!(j["values"]["{0,2}"], "1");
        assert_eq!(j["kind"], "outer");
        assert_eq!(table_from_json(&j).unwrap(), m);
    }

    #[test]
    fn floats_and_gaps_rejected() {
        let mut j = table_to_json(&mu1());
        j["values"]["{0}"] = "0.5".into();
        assert!(matches!(table_from_json(&j), Err(MeasureError::Input(_))));
        let mut j = table_to_json(&mu1());
        j["values"].as_object_mut().unwrap().remove("{1}");
        assert!(table_from_json(&j).unwrap_err().to_string().contains("missing value for {1}"));
        let mut j = table_to_json(&mu1());
        j["values"]["{1}"] = serde_json::json!(1);
        assert!(table_from_json(&j).is_err());
    }

    #[test]
    fn infinite_values_parse() {
        let j = serde_json::json!({
            "ground": 2, "atoms": [[0, 1]],
            "values": {"{}": "0", "{0}": "inf"}, "kind": "premeasure"
        });
        let m = table_from_json(&j).unwrap();
        assert!(m.value(1).is_infinite());
    }
}
