//! JSON reading and writing of cell complexes.
//!
//! ```json
//! {"ambient_dim": 1,
//!  "cells": [{"id": "I", "ineqs": [[-1, 0], [1, 1]], "eqs": []}],
//!  "generate_faces": true}
//! ```
//!
//! Each row `[a_1, ..., a_m, b]` encodes `<a, x> <= b` (or `= b`). Numbers are
//! JSON integers or strings `"p/q"`.

use crate::geometry::{Cell, CellComplex, GeometryError, HalfSpace};
use crate::rational::{format_q, parse_q, qz, Q};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn field(f: impl Into<String>, msg: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: f.into(),
        msg: msg.into(),
    }
}

fn number(v: &Value, path: &str) -> Result<Q, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i.into()))
            .ok_or_else(|| field(path, "expected an integer or a \"p/q\" string")),
        Value::String(s) => parse_q(s).ok_or_else(|| field(path, format!("malformed rational {s:?}"))),
        _ => Err(field(path, "expected an integer or a \"p/q\" string")),
    }
}

fn rows(v: Option<&Value>, path: &str, m: usize) -> Result<Vec<Vec<Q>>, ParseError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| field(path, "expected an array of rows"))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            let r = row.as_array().ok_or_else(|| field(&p, "expected an array"))?;
            if r.len() != m + 1 {
                return Err(field(&p, format!("expected {} entries, found {}", m + 1, r.len())));
            }
            r.iter().enumerate().map(|(j, x)| number(x, &format!("{p}[{j}]"))).collect()
        })
        .collect()
}

pub fn complex_from_value(v: &Value) -> Result<CellComplex, ParseError> {
    let m = v
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| field("ambient_dim", "expected a nonnegative integer"))? as usize;
    let generate = match v.get("generate_faces") {
        None => false,
        Some(g) => g.as_bool().ok_or_else(|| field("generate_faces", "expected a boolean"))?,
    };
    let cells = v
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| field("cells", "expected an array"))?;
    let mut out = Vec::with_capacity(cells.len());
    for (i, c) in cells.iter().enumerate() {
        let p = format!("cells[{i}]");
        let id = c
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| field(format!("{p}.id"), "expected a string"))?;
        let ineqs = rows(c.get("ineqs"), &format!("{p}.ineqs"), m)?;
        let eqs = rows(c.get("eqs"), &format!("{p}.eqs"), m)?;
        out.push(Cell::from_rows(id, m, &ineqs, &eqs).map_err(|e| field(&p, e.to_string()))?);
    }
    if out.is_empty() {
        return Ok(CellComplex::empty(m));
    }
    Ok(CellComplex::build(out, generate)?)
}

pub fn parse_complex(text: &str) -> Result<CellComplex, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    complex_from_value(&v)
}

pub fn read_complex(path: &std::path::Path) -> Result<CellComplex, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io(format!("{}: {e}", path.display())))?;
    parse_complex(&text)
}

/// Integers as JSON numbers when they fit, everything else as `"p/q"`.
pub fn q_to_json(x: &Q) -> Value {
    if x.is_integer() {
        if let Ok(i) = i64::try_from(x.to_integer()) {
            return Value::from(i);
        }
    }
    Value::String(format_q(x))
}

fn row_json(h: &HalfSpace) -> Value {
    let mut r: Vec<Value> = h.normal.iter().map(|a| q_to_json(&qz(a))).collect();
    r.push(q_to_json(&h.offset));
    Value::Array(r)
}

/// Every cell of the complex with its normalized constraints; reading the
/// result back gives the same complex.
pub fn complex_to_value(k: &CellComplex) -> Value {
    let cells: Vec<Value> = k
        .cells()
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "ineqs": c.ineqs().iter().map(row_json).collect::<Vec<_>>(),
                "eqs": c.eqs().iter().map(row_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"ambient_dim": k.ambient_dim(), "cells": cells, "generate_faces": false})
}
