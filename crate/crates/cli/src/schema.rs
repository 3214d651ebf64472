//! JSON schemas of scenario files, printed by `kanmeasure schema`.

use serde_json::{json, Value};

const RATIONAL: &str = r"^(inf|[0-9]+(/[0-9]*[1-9][0-9]*)?)$";

fn poset() -> Value {
    json!({
        "oneOf": [
            {"type": "object", "required": ["chain"], "properties": {"chain": {"type": "integer", "minimum": 0}}},
            {
                "type": "object",
                "required": ["elements"],
                "properties": {
                    "elements": {"type": "array", "items": {"type": "string"}},
                    "order": {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}}
                }
            }
        ]
    })
}

fn functor() -> Value {
    json!({
        "type": "object",
        "required": ["objects"],
        "additionalProperties": false,
        "properties": {
            "objects": {"type": "object", "additionalProperties": poset()},
            "maps": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}}}
        }
    })
}

fn transformation() -> Value {
    json!({"type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}}})
}

fn kind() -> Value {
    json!({"enum": ["general", "lax", "colax", "strict"]})
}

pub fn engine() -> Value {
    let pair = json!({"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2});
    json!({
        "type": "object",
        "required": ["kind", "instance"],
        "additionalProperties": false,
        "properties": {
            "kind": {"const": "engine"},
            "operations": {"type": "array", "items": {"enum": ["classify", "closures", "strictness", "sigma_independence", "formula", "extension"]}},
            "extension_kind": kind(),
            "instance": {
                "type": "object",
                "required": ["category", "source", "target"],
                "additionalProperties": false,
                "properties": {
                    "category": {
                        "type": "object",
                        "required": ["objects"],
                        "properties": {
                            "objects": {"type": "array", "items": {"type": "string"}},
                            "morphisms": {"type": "array", "items": {
                                "type": "object",
                                "required": ["name", "source", "target"],
                                "properties": {"name": {"type": "string"}, "source": {"type": "string"}, "target": {"type": "string"}}
                            }},
                            "composites": {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3}},
                            "cells": {"type": "array", "items": pair}
                        }
                    },
                    "source": functor(),
                    "target": functor(),
                    "sigma": {"oneOf": [{"enum": ["all", "none", "identities"]}, {"type": "array", "items": {"type": "string"}}]},
                    "transformations": {"type": "object", "additionalProperties": transformation()},
                    "kind": kind(),
                    "extension": {
                        "type": "object",
                        "required": ["along", "iota"],
                        "properties": {"along": functor(), "iota": transformation()}
                    }
                }
            }
        }
    })
}

fn table() -> Value {
    json!({
        "type": "object",
        "required": ["ground", "atoms", "values", "kind"],
        "additionalProperties": false,
        "properties": {
            "ground": {"type": "integer", "minimum": 0},
            "atoms": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            "values": {
                "type": "object",
                "propertyNames": {"pattern": r"^\{([0-9]+(,[0-9]+)*)?\}$"},
                "additionalProperties": {"type": "string", "pattern": RATIONAL}
            },
            "kind": {"enum": ["premeasure", "outer", "inner", "general"]}
        }
    })
}

pub fn measure() -> Value {
    json!({
        "type": "object",
        "required": ["kind", "table"],
        "additionalProperties": false,
        "properties": {
            "kind": {"const": "measure"},
            "table": table(),
            "others": {"type": "array", "items": table()},
            "operations": {"type": "array", "items": {"enum": ["validate", "overline", "underline", "reflect", "join", "encode", "crosscheck"]}}
        }
    })
}

pub fn carath() -> Value {
    let indices = json!({"type": "array", "items": {"type": "integer", "minimum": 0}});
    json!({
        "type": "object",
        "required": ["kind"],
        "additionalProperties": false,
        "properties": {
            "kind": {"const": "carath"},
            "premeasure": {
                "type": "object",
                "required": ["tail"],
                "properties": {
                    "overrides": {"type": "array", "items": {"type": "string", "pattern": RATIONAL}},
                    "tail": {"oneOf": [
                        {"enum": ["zero", "infinite"]},
                        {"type": "object", "required": ["c", "r"], "properties": {"c": {"type": "string"}, "r": {"type": "string"}}}
                    ]}
                }
            },
            "sets": {"type": "array", "items": {
                "type": "object",
                "required": ["prefix", "pattern"],
                "properties": {
                    "prefix": {"type": "string", "pattern": "^[01]*$"},
                    "period": {"type": "integer", "minimum": 1},
                    "pattern": {"type": "string", "pattern": "^[01]+$"}
                }
            }},
            "algebra_sets": {"type": "array", "items": {
                "type": "object",
                "required": ["kind", "indices"],
                "properties": {"kind": {"enum": ["finite", "cofinite"]}, "indices": indices}
            }},
            "epsilon": {"type": "string", "pattern": RATIONAL},
            "depth": {"type": "integer", "minimum": 1},
            "counterexample": {"type": "boolean"}
        }
    })
}

pub fn suite() -> Value {
    json!({
        "type": "object",
        "required": ["kind", "name"],
        "additionalProperties": false,
        "properties": {"kind": {"const": "suite"}, "name": {"enum": ["engine", "measure", "carath", "all"]}}
    })
}

pub fn schemas() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "kanmeasure scenario",
        "oneOf": [engine(), measure(), carath(), suite()]
    })
}
