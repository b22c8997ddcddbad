//! JSON model files.
//!
//! ```json
//! {
//!   "worlds": ["w", "u"],
//!   "rel_plus": [["w", "u", "2/3"]],
//!   "rel_minus": [],
//!   "v1": [["p", "u", "1/5"]],
//!   "v2": [],
//!   "T1": { "w": ["0", "1/6", "1/4", "1"] },
//!   "T2": { "w": ["0", "1"] }
//! }
//! ```
//!
//! All rationals are strings `"p/q"` (or `"k"` for integers) so that values
//! round-trip exactly — no floats. `rel_minus`, `v2`, `T1`, and `T2` may be
//! omitted; a file with either `T` map loads as an [`FModel`] (missing 0/1
//! elements are inserted), otherwise as a plain [`Model`].

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;
use thiserror::Error;

use super::{FModel, Model};
use crate::rational::{fmt_rat, parse_rat, Rat};

/// A loaded model file: plain or with finite value sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyModel {
    Standard(Model),
    F(FModel),
}

impl AnyModel {
    pub fn base(&self) -> &Model {
        match self {
            AnyModel::Standard(m) => m,
            AnyModel::F(fm) => &fm.base,
        }
    }

    /// Views the model as an F-model, wrapping a plain model with the
    /// trivial value sets `{0,1}`.
    pub fn to_fmodel(&self) -> FModel {
        match self {
            AnyModel::Standard(m) => FModel::trivial(m.clone()),
            AnyModel::F(fm) => fm.clone(),
        }
    }
}

/// A model-file format violation, with a path-like location.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("model format error at {location}: {message}")]
pub struct FormatError {
    pub location: String,
    pub message: String,
}

fn err(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError {
        location: location.into(),
        message: message.into(),
    }
}

fn as_str<'a>(v: &'a Value, loc: &str) -> Result<&'a str, FormatError> {
    v.as_str().ok_or_else(|| err(loc, "expected a string"))
}

fn rat_at(v: &Value, loc: &str) -> Result<Rat, FormatError> {
    let s = as_str(v, loc)?;
    parse_rat(s).map_err(|m| err(loc, m))
}

/// Reads a list of `[key1, key2, "p/q"]` triples into a map.
fn triples(
    v: &Value,
    field: &str,
) -> Result<BTreeMap<(String, String), Rat>, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| err(field, "expected a list of [a, b, \"p/q\"] triples"))?;
    let mut out = BTreeMap::new();
    for (i, entry) in arr.iter().enumerate() {
        let loc = format!("{field}[{i}]");
        let triple = entry
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| err(&loc, "expected [a, b, \"p/q\"]"))?;
        let a = as_str(&triple[0], &loc)?.to_string();
        let b = as_str(&triple[1], &loc)?.to_string();
        let r = rat_at(&triple[2], &loc)?;
        if out.insert((a.clone(), b.clone()), r).is_some() {
            return Err(err(&loc, format!("duplicate entry for ({a}, {b})")));
        }
    }
    Ok(out)
}

fn t_sets(v: &Value, field: &str) -> Result<BTreeMap<String, BTreeSet<Rat>>, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(field, "expected a map world -> list of \"p/q\""))?;
    let mut out = BTreeMap::new();
    for (world, list) in obj {
        let loc = format!("{field}.{world}");
        let arr = list
            .as_array()
            .ok_or_else(|| err(&loc, "expected a list of \"p/q\""))?;
        let mut set = BTreeSet::new();
        for (i, x) in arr.iter().enumerate() {
            set.insert(rat_at(x, &format!("{loc}[{i}]"))?);
        }
        out.insert(world.clone(), set);
    }
    Ok(out)
}

/// Parses a model file. Validates ranges, world references, and (for
/// F-models) the value-set invariant.
pub fn load_model(text: &str) -> Result<AnyModel, FormatError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| err("document", format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| err("document", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "worlds" | "rel_plus" | "rel_minus" | "v1" | "v2" | "T1" | "T2")
        {
            return Err(err(key, "unknown field"));
        }
    }

    let worlds_v = obj
        .get("worlds")
        .ok_or_else(|| err("document", "missing field `worlds`"))?;
    let worlds = worlds_v
        .as_array()
        .ok_or_else(|| err("worlds", "expected a list of strings"))?
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(as_str(w, &format!("worlds[{i}]"))?.to_string()))
        .collect::<Result<Vec<_>, FormatError>>()?;

    let get_triples = |field: &str| -> Result<BTreeMap<(String, String), Rat>, FormatError> {
        match obj.get(field) {
            Some(v) => triples(v, field),
            None => Ok(BTreeMap::new()),
        }
    };
    let model = Model {
        worlds,
        rel_plus: get_triples("rel_plus")?,
        rel_minus: get_triples("rel_minus")?,
        v1: get_triples("v1")?,
        v2: get_triples("v2")?,
    };
    model
        .validate()
        .map_err(|e| err("document", e.to_string()))?;

    if obj.contains_key("T1") || obj.contains_key("T2") {
        let get_t = |field: &str| -> Result<BTreeMap<String, BTreeSet<Rat>>, FormatError> {
            match obj.get(field) {
                Some(v) => t_sets(v, field),
                None => Ok(BTreeMap::new()),
            }
        };
        let mut fm = FModel {
            base: model,
            t1: get_t("T1")?,
            t2: get_t("T2")?,
        };
        fm.normalize();
        fm.validate().map_err(|e| err("document", e.to_string()))?;
        Ok(AnyModel::F(fm))
    } else {
        Ok(AnyModel::Standard(model))
    }
}

fn triples_json(map: &BTreeMap<(String, String), Rat>) -> Value {
    Value::Array(
        map.iter()
            .map(|((a, b), r)| {
                Value::Array(vec![
                    Value::String(a.clone()),
                    Value::String(b.clone()),
                    Value::String(fmt_rat(r)),
                ])
            })
            .collect(),
    )
}

fn t_json(t: &BTreeMap<String, BTreeSet<Rat>>) -> Value {
    Value::Object(
        t.iter()
            .map(|(w, set)| {
                (
                    w.clone(),
                    Value::Array(set.iter().map(|r| Value::String(fmt_rat(r))).collect()),
                )
            })
            .collect(),
    )
}

/// Renders a model in the file format (pretty-printed JSON).
pub fn save_model(m: &AnyModel) -> String {
    let base = m.base();
    let mut obj = serde_json::Map::new();
    obj.insert(
        "worlds".into(),
        Value::Array(base.worlds.iter().map(|w| Value::String(w.clone())).collect()),
    );
    obj.insert("rel_plus".into(), triples_json(&base.rel_plus));
    obj.insert("rel_minus".into(), triples_json(&base.rel_minus));
    obj.insert("v1".into(), triples_json(&base.v1));
    obj.insert("v2".into(), triples_json(&base.v2));
    if let AnyModel::F(fm) = m {
        obj.insert("T1".into(), t_json(&fm.t1));
        obj.insert("T2".into(), t_json(&fm.t2));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON serialization cannot fail")
}
