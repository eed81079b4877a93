//! JSON input and output formats.
//!
//! Sequences:
//!
//! ```text
//! {"group":{"type":"Z"|"Zd"|"ZN","d":2,"N":8},
//!  "entries":[{"point":[0,1],"re":1.0,"im":0.0}, ...]}
//! ```
//!
//! Point sets use `"points":[[..],..]` in place of `"entries"`, and a pair is
//! `{"x":<sequence>,"y":<sequence>}`. Output is pretty-printed with sorted keys
//! and floats rounded to 15 significant digits.

use std::collections::BTreeSet;

use serde::Deserialize;
use serde_json::{Map, Value};
use sparseconv_core::addset::{CompressionBound, FreimanMap, PointSet};
use sparseconv_core::seq::{GroupDescriptor, Point, SparseSeq};
use sparseconv_core::stability::{AnalyticBound, BoundResult};
use sparseconv_core::Complex64;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    #[serde(rename = "type")]
    kind: String,
    d: Option<usize>,
    #[serde(rename = "N")]
    n: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    point: Vec<i64>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqJson {
    group: GroupJson,
    entries: Vec<EntryJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetJson {
    group: GroupJson,
    points: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    x: SeqJson,
    y: SeqJson,
}

/// What `compress` accepts.
#[derive(Clone, Debug)]
pub enum CompressInput {
    Points(PointSet),
    Pair(SparseSeq, SparseSeq),
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn group_from_json(g: &GroupJson) -> Result<GroupDescriptor, CliError> {
    let group = match g.kind.as_str() {
        "Z" => GroupDescriptor::Integers,
        "Zd" => GroupDescriptor::Lattice(g.d.ok_or_else(|| input_err("group Zd needs \"d\""))?),
        "ZN" => GroupDescriptor::Cyclic(g.n.ok_or_else(|| input_err("group ZN needs \"N\""))?),
        other => return Err(input_err(format!("unknown group type {other:?}"))),
    };
    Ok(group.validate()?)
}

fn seq_from_json(s: SeqJson) -> Result<SparseSeq, CliError> {
    let group = group_from_json(&s.group)?;
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(s.entries.len());
    for e in s.entries {
        let p = group.normalize(e.point)?;
        if !seen.insert(p.clone()) {
            return Err(input_err(format!("duplicate point {p:?}")));
        }
        if !e.re.is_finite() || !e.im.is_finite() {
            return Err(input_err(format!("non-finite amplitude at {p:?}")));
        }
        entries.push((p, Complex64::new(e.re, e.im)));
    }
    Ok(SparseSeq::from_entries(group, entries)?)
}

fn points_from_json(s: PointSetJson) -> Result<PointSet, CliError> {
    let group = group_from_json(&s.group)?;
    Ok(PointSet::new(group, s.points)?)
}

pub fn parse_sequence(text: &str) -> Result<SparseSeq, CliError> {
    let raw: SeqJson = serde_json::from_str(text).map_err(|e| input_err(e.to_string()))?;
    seq_from_json(raw)
}

pub fn parse_point_set(text: &str) -> Result<PointSet, CliError> {
    let raw: PointSetJson = serde_json::from_str(text).map_err(|e| input_err(e.to_string()))?;
    points_from_json(raw)
}

pub fn parse_pair(text: &str) -> Result<(SparseSeq, SparseSeq), CliError> {
    let raw: PairJson = serde_json::from_str(text).map_err(|e| input_err(e.to_string()))?;
    Ok((seq_from_json(raw.x)?, seq_from_json(raw.y)?))
}

/// Dispatches on the top-level keys.
pub fn parse_compress_input(text: &str) -> Result<CompressInput, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| input_err(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| input_err("expected a JSON object"))?;
    if obj.contains_key("points") {
        Ok(CompressInput::Points(parse_point_set(text)?))
    } else if obj.contains_key("x") {
        let (x, y) = parse_pair(text)?;
        Ok(CompressInput::Pair(x, y))
    } else {
        Err(input_err("expected a point set (\"points\") or a pair (\"x\", \"y\")"))
    }
}

/// Rounds to 15 significant digits; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{v:.14e}").parse::<f64>().unwrap_or(v) + 0.0;
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Decimal text with 15 significant digits, used by the CSV writer.
pub fn fmt15(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.14e}").parse::<f64>().unwrap_or(v) + 0.0;
    format!("{rounded}")
}

pub fn obj<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn group_to_json(g: GroupDescriptor) -> Value {
    match g {
        GroupDescriptor::Integers => obj([("type", "Z".into())]),
        GroupDescriptor::Lattice(d) => obj([("type", "Zd".into()), ("d", d.into())]),
        GroupDescriptor::Cyclic(n) => obj([("type", "ZN".into()), ("N", n.into())]),
    }
}

pub fn seq_to_json(x: &SparseSeq) -> Value {
    let entries: Vec<Value> = x
        .iter()
        .map(|(p, c)| obj([("point", p.clone().into()), ("re", num(c.re)), ("im", num(c.im))]))
        .collect();
    obj([("group", group_to_json(x.group())), ("entries", entries.into())])
}

pub fn point_set_to_json(a: &PointSet) -> Value {
    let pts: Vec<Value> = a.iter().map(|p: &Point| p.clone().into()).collect();
    obj([("group", group_to_json(a.group())), ("points", pts.into())])
}

pub fn freiman_map_to_json(map: &FreimanMap) -> Value {
    let pairs: Vec<Value> = map
        .iter()
        .map(|(p, u)| obj([("point", p.clone().into()), ("image", u.into())]))
        .collect();
    obj([
        ("pairs", pairs.into()),
        ("diameter", map.diameter().into()),
        ("verified", map.is_verified().into()),
    ])
}

pub fn compression_bound_to_json(b: &CompressionBound) -> Value {
    obj([
        ("m", b.m.into()),
        ("log2_n", num(b.log2_n)),
        ("n", b.n.map_or(Value::Null, Value::from)),
        ("exceeds_integer_range", b.exceeds_integer_range.into()),
    ])
}

pub fn analytic_to_json(a: &AnalyticBound) -> Value {
    let terms = a.terms.map_or(Value::Null, |t| {
        obj([
            ("sparsity", num(t.sparsity)),
            ("modulation", num(t.modulation)),
            ("constant", num(t.constant)),
            ("dimension", num(t.dimension)),
        ])
    });
    obj([
        ("s", a.s.into()),
        ("f", a.f.into()),
        ("log2_n", num(a.log2_n)),
        ("log2_alpha", num(a.log2_alpha)),
        ("log2_alpha_equal_sparsity", a.log2_alpha_equal_sparsity.map_or(Value::Null, num)),
        ("exact", a.exact.into()),
        ("terms", terms),
    ])
}

pub fn bound_result_to_json(b: &BoundResult) -> Value {
    obj([
        ("s", b.s.into()),
        ("f", b.f.into()),
        ("n", b.n.map_or(Value::Null, Value::from)),
        ("log2_n", num(b.log2_n)),
        ("log2_alpha", num(b.log2_alpha)),
        ("alpha", num(b.alpha())),
        ("kind", b.kind.as_str().into()),
        ("witness_x", b.witness_x.as_ref().map_or(Value::Null, seq_to_json)),
        ("witness_y", b.witness_y.as_ref().map_or(Value::Null, seq_to_json)),
        ("witness_value", b.witness_value().map_or(Value::Null, num)),
        ("iterations", b.iterations.into()),
        ("tolerance", num(b.tolerance)),
        ("upper_bound", b.upper_bound.into()),
        ("analytic", b.analytic.as_ref().map_or(Value::Null, analytic_to_json)),
    ])
}

/// Pretty JSON with sorted keys (serde_json maps are ordered by key).
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}
