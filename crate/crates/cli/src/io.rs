//! Input parsing and output rendering for the command-line driver.
//!
//! Every command reads JSON documents from files and writes exactly one
//! document to standard output. Output is deterministic: objects are
//! backed by ordered maps (keys serialize lexicographically) and
//! polynomial terms follow the canonical exponent order. Integers are
//! emitted as JSON numbers when they fit in an `i64` and as decimal
//! strings otherwise, so no value is ever rounded.

use kapoly::laurent::LaurentPoly;
use kapoly::{Error, Int, Rat};
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

/// A command failure: the process exit code, a machine-readable kind, a
/// human-readable detail line, and an optional witness payload.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub detail: String,
    pub witness: Value,
}

impl CliError {
    pub fn invalid(detail: impl Into<String>) -> Self {
        CliError {
            code: 1,
            kind: "InvalidInput".into(),
            detail: detail.into(),
            witness: Value::Null,
        }
    }

    pub fn parse(path: &Path, detail: impl std::fmt::Display) -> Self {
        CliError {
            code: 1,
            kind: "ParseError".into(),
            detail: format!("{}: {detail}", path.display()),
            witness: Value::Null,
        }
    }

    /// The error body written to standard output.
    pub fn body(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind,
                "detail": self.detail,
                "witness": self.witness,
            }
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let detail = e.to_string();
        let (code, kind, witness) = classify(&e);
        CliError { code, kind, detail, witness }
    }
}

/// Maps a pipeline error to (exit code, kind, witness). Expansion-term
/// wrappers inherit the classification of their cause, with the term
/// index folded into the witness.
fn classify(e: &Error) -> (i32, String, Value) {
    match e {
        Error::RankDeficient { rank, expected } => (
            1,
            "RankDeficient".into(),
            json!({ "rank": rank, "expected": expected }),
        ),
        Error::NotAcyclic { witness } => {
            (1, "NotAcyclic".into(), Value::Array(witness.iter().map(int_value).collect()))
        }
        Error::DegenerateMap { witness } => {
            (2, "DegenerateMap".into(), Value::Array(witness.iter().map(int_value).collect()))
        }
        Error::SizeLimit { what, needed, cap } => (
            3,
            "SizeLimit".into(),
            json!({ "what": what, "needed": u128_value(*needed), "cap": u128_value(*cap) }),
        ),
        Error::EmptyInterior => (1, "EmptyInterior".into(), Value::Null),
        Error::InvalidInput { .. } => (1, "InvalidInput".into(), Value::Null),
        Error::ExpansionTerm { index, cause } => {
            let (code, kind, inner) = classify(cause);
            (code, kind, json!({ "term": index, "cause": inner }))
        }
    }
}

/// Integer as a JSON number when it fits in i64, else a decimal string.
pub fn int_value(n: &Int) -> Value {
    let s = n.to_string();
    match s.parse::<i64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(s),
    }
}

fn u128_value(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

/// Rational as a {"den", "num"} pair.
pub fn rat_value(r: &Rat) -> Value {
    json!({ "num": int_value(r.numer()), "den": int_value(r.denom()) })
}

/// Canonical scalar string: "p" for integers, "p/q" otherwise.
pub fn rat_str(r: &Rat) -> String {
    if *r.denom() == Int::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Polynomial as a JSON array of {"den", "exp", "num"} terms in canonical
/// exponent order.
pub fn poly_value(f: &LaurentPoly<Rat>) -> Value {
    Value::Array(
        f.terms()
            .map(|(e, c)| {
                json!({
                    "exp": e.clone(),
                    "num": int_value(c.numer()),
                    "den": int_value(c.denom()),
                })
            })
            .collect(),
    )
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::parse(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

fn as_i64(v: &Value, what: &str, path: &Path) -> Result<i64, CliError> {
    v.as_i64().ok_or_else(|| CliError::parse(path, format!("{what} must be an integer")))
}

/// Reads a grading matrix file: {"matrix": [[int, ...], ...]}.
pub fn read_matrix(path: &Path) -> Result<Vec<Vec<i64>>, CliError> {
    let doc = read_json(path)?;
    let rows = doc
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::parse(path, "expected an object with a \"matrix\" array"))?;
    if rows.is_empty() {
        return Err(CliError::parse(path, "matrix has no rows"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| CliError::parse(path, "matrix rows must be arrays"))?;
        let mut r = Vec::with_capacity(entries.len());
        for e in entries {
            r.push(as_i64(e, "matrix entry", path)?);
        }
        out.push(r);
    }
    if out.iter().any(|r| r.len() != out[0].len()) {
        return Err(CliError::parse(path, "matrix rows have unequal lengths"));
    }
    Ok(out)
}

/// Parses an integer that may arrive as a JSON number or a decimal string.
fn parse_int(v: &Value, what: &str, path: &Path) -> Result<Int, CliError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            Int::from_str(&s).map_err(|_| {
                CliError::parse(path, format!("{what} must be an integer, got {s}"))
            })
        }
        Value::String(s) => Int::from_str(s)
            .map_err(|_| CliError::parse(path, format!("{what} must be an integer, got {s:?}"))),
        other => Err(CliError::parse(path, format!("{what} must be an integer, got {other}"))),
    }
}

/// Reads a polynomial file: [{"exp": [int, ...], "num": int, "den": int},
/// ...] with exponent length `nvars`; a missing "den" defaults to 1.
pub fn read_poly(path: &Path, nvars: usize) -> Result<LaurentPoly<Rat>, CliError> {
    let doc = read_json(path)?;
    let terms = doc
        .as_array()
        .ok_or_else(|| CliError::parse(path, "expected a JSON array of terms"))?;
    let mut f = LaurentPoly::new(nvars);
    for term in terms {
        let exp = term
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::parse(path, "every term needs an \"exp\" array"))?;
        if exp.len() != nvars {
            return Err(CliError::parse(
                path,
                format!("exponent length {} does not match the {nvars} grading rows", exp.len()),
            ));
        }
        let mut e = Vec::with_capacity(nvars);
        for x in exp {
            e.push(as_i64(x, "exponent entry", path)?);
        }
        let num = parse_int(
            term.get("num").ok_or_else(|| CliError::parse(path, "every term needs \"num\""))?,
            "num",
            path,
        )?;
        let den = match term.get("den") {
            Some(v) => parse_int(v, "den", path)?,
            None => Int::from(1),
        };
        if den == Int::from(0) {
            return Err(CliError::parse(path, "term denominator is zero"));
        }
        f.add_term(e, Rat::new(num, den));
    }
    Ok(f)
}

/// Reads an expansion file: {"codim": int, "terms": [{"s": [int, ...],
/// "mu": int}, ...]} with 1-based column indices in "s".
pub fn read_expansion(
    path: &Path,
    n_columns: usize,
) -> Result<(usize, Vec<(Vec<usize>, Int)>), CliError> {
    let doc = read_json(path)?;
    let codim = doc
        .get("codim")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::parse(path, "expected a positive \"codim\""))?
        as usize;
    let terms = doc
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::parse(path, "expected a \"terms\" array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let s = term
            .get("s")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::parse(path, "every term needs an \"s\" array"))?;
        if s.len() != codim {
            return Err(CliError::parse(
                path,
                format!("term has {} columns but codim is {codim}", s.len()),
            ));
        }
        let mut cols = Vec::with_capacity(s.len());
        for v in s {
            let idx = as_i64(v, "column index", path)?;
            if idx < 1 || idx as usize > n_columns {
                return Err(CliError::parse(
                    path,
                    format!("column index {idx} outside 1..={n_columns}"),
                ));
            }
            cols.push(idx as usize - 1);
        }
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != codim {
            return Err(CliError::parse(path, "term repeats a column index"));
        }
        let mu = parse_int(
            term.get("mu").ok_or_else(|| CliError::parse(path, "every term needs \"mu\""))?,
            "mu",
            path,
        )?;
        out.push((cols, mu));
    }
    Ok((codim, out))
}

/// Parses a nonnegative rational flag value: "p" or "p/q".
pub fn parse_rat_flag(text: &str) -> Result<Rat, CliError> {
    let bad = || CliError::invalid(format!("expected a rational like 7 or 7/2, got {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let num = Int::from_str(num.trim()).map_err(|_| bad())?;
    let den = Int::from_str(den.trim()).map_err(|_| bad())?;
    if den == Int::from(0) {
        return Err(bad());
    }
    let r = Rat::new(num, den);
    if r < Rat::from(Int::from(0)) {
        return Err(CliError::invalid(format!("bound must be nonnegative, got {text}")));
    }
    Ok(r)
}

/// Renders any output document as aligned plain text: one "key: value"
/// line per scalar field, nested structures indented, list items dashed.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn render(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(map) => render_object(map, indent, out),
        Value::Array(items) => render_array(items, indent, out),
        scalar => {
            let _ = writeln!(out, "{}{}", pad(indent), scalar_text(scalar).unwrap());
        }
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    for (key, v) in map {
        match scalar_text(v) {
            Some(s) => {
                let _ = writeln!(out, "{}{key}: {s}", pad(indent));
            }
            None => {
                let _ = writeln!(out, "{}{key}:", pad(indent));
                render(v, indent + 1, out);
            }
        }
    }
}

fn render_array(items: &[Value], indent: usize, out: &mut String) {
    if items.is_empty() {
        let _ = writeln!(out, "{}[]", pad(indent));
        return;
    }
    for item in items {
        match scalar_text(item) {
            Some(s) => {
                let _ = writeln!(out, "{}- {s}", pad(indent));
            }
            None => {
                let _ = writeln!(out, "{}-", pad(indent));
                render(item, indent + 1, out);
            }
        }
    }
}

/// Inline rendering for scalars and flat arrays; None for nested values.
fn scalar_text(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|v| match v {
                    Value::Array(_) | Value::Object(_) => None,
                    v => scalar_text(v),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn pad(indent: usize) -> String {
    "  ".repeat(indent)
}
