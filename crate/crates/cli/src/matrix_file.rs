//! The JSON matrix format: `{"n": 2, "entries": [[[a,b,c,d], ...], ...]}`.
//!
//! Bare `NaN` and `Infinity` tokens are tolerated by the reader so that
//! files written by other tools are rejected as non-finite rather than as
//! malformed.

use std::fmt;
use std::path::Path;

use quatspec::{QMatrix, Quaternion};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFileError {
    Io(String),
    ParseError(String),
    NonSquare { n: usize, detail: String },
    NonFiniteEntry { row: usize, col: usize },
}

impl fmt::Display for MatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "Io: {e}"),
            Self::ParseError(e) => write!(f, "ParseError: {e}"),
            Self::NonSquare { n, detail } => write!(f, "NonSquare: n = {n} but {detail}"),
            Self::NonFiniteEntry { row, col } => write!(f, "NonFiniteEntry: entry ({row}, {col}) is not finite"),
        }
    }
}

impl std::error::Error for MatrixFileError {}

/// Reads a matrix file, returning the matrix and the raw bytes.
pub fn read_matrix(path: &Path) -> Result<(QMatrix, Vec<u8>), MatrixFileError> {
    let bytes = std::fs::read(path).map_err(|e| MatrixFileError::Io(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| MatrixFileError::ParseError(e.to_string()))?;
    Ok((parse_matrix(text)?, bytes))
}

pub fn parse_matrix(text: &str) -> Result<QMatrix, MatrixFileError> {
    let value: Value =
        serde_json::from_str(&quote_non_finite(text)).map_err(|e| MatrixFileError::ParseError(e.to_string()))?;
    let parse = |m: &str| MatrixFileError::ParseError(m.to_string());
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse("\"n\" must be a non-negative integer"))? as usize;
    let rows = value
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse("\"entries\" must be an array of rows"))?;
    if rows.len() != n {
        return Err(MatrixFileError::NonSquare { n, detail: format!("there are {} rows", rows.len()) });
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| parse("each row must be an array"))?;
        if row.len() != n {
            return Err(MatrixFileError::NonSquare { n, detail: format!("row {r} has {} entries", row.len()) });
        }
        let mut parsed = Vec::with_capacity(n);
        for (c, entry) in row.iter().enumerate() {
            let comps = entry
                .as_array()
                .filter(|v| v.len() == 4)
                .ok_or_else(|| MatrixFileError::ParseError(format!("entry ({r}, {c}) must be [a,b,c,d]")))?;
            let mut q = [0.0; 4];
            for (slot, v) in q.iter_mut().zip(comps) {
                *slot = match v {
                    Value::Number(x) => x.as_f64().ok_or_else(|| parse("unrepresentable number"))?,
                    Value::String(s) if is_non_finite_token(s) => f64::NAN,
                    _ => return Err(MatrixFileError::ParseError(format!("entry ({r}, {c}) has a non-numeric component"))),
                };
                if !slot.is_finite() {
                    return Err(MatrixFileError::NonFiniteEntry { row: r, col: c });
                }
            }
            parsed.push(Quaternion::from_array(q));
        }
        out.push(parsed);
    }
    QMatrix::from_rows(out).map_err(|e| MatrixFileError::ParseError(e.to_string()))
}

fn is_non_finite_token(s: &str) -> bool {
    matches!(s, "NaN" | "-NaN" | "Infinity" | "-Infinity" | "+Infinity")
}

/// Wraps bare `NaN` / `Infinity` tokens outside strings in quotes.
fn quote_non_finite(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 8);
    let mut in_string = false;
    let mut escaped = false;
    let mut rest = text;
    while let Some(ch) = rest.chars().next() {
        if in_string {
            out.push(ch);
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
            }
            rest = &rest[ch.len_utf8()..];
            continue;
        }
        if ch == '"' {
            in_string = true;
        }
        let token = ["-Infinity", "+Infinity", "Infinity", "-NaN", "NaN"]
            .into_iter()
            .find(|t| rest.starts_with(t) && !rest[t.len()..].starts_with(|c: char| c.is_alphanumeric()));
        match token {
            Some(t) => {
                out.push('"');
                out.push_str(t);
                out.push('"');
                rest = &rest[t.len()..];
            }
            None => {
                out.push(ch);
                rest = &rest[ch.len_utf8()..];
            }
        }
    }
    out
}

/// The same schema the reader accepts.
pub fn matrix_json(a: &QMatrix) -> Value {
    let rows: Vec<Value> = a
        .rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(|q| json!(q.to_array())).collect()))
        .collect();
    json!({ "n": a.dim(), "entries": rows })
}
