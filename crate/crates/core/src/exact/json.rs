//! JSON encodings for scalars and matrices.
//!
//! A rational is the string `"p/q"` (or `"p"`); a cyclotomic value is the list
//! of its `φ(m)` power-basis coefficients as rational strings. The conductor
//! travels alongside, at matrix (or circuit) level.

use serde_json::{json, Value};

use super::cyclotomic::field;
use super::matrix::ExactMatrix;
use super::scalar::{fmt_rational, parse_rational, ExactScalar};
use crate::error::{Error, Result};

pub fn scalar_to_json(x: &ExactScalar) -> Value {
    match x {
        ExactScalar::Rational(q) => Value::String(fmt_rational(q)),
        ExactScalar::Cyclotomic { coeffs, .. } => {
            Value::Array(coeffs.iter().map(|c| Value::String(fmt_rational(c))).collect())
        }
    }
}

/// Parses a scalar; lists need a `conductor`.
pub fn scalar_from_json(v: &Value, conductor: Option<u32>) -> Result<ExactScalar> {
    match v {
        Value::String(s) => {
            let q = parse_rational(s)?;
            Ok(match conductor {
                Some(m) => ExactScalar::cyclotomic(m, vec![q]),
                None => ExactScalar::Rational(q),
            })
        }
        Value::Number(n) => {
            let q = parse_rational(&n.to_string())?;
            Ok(match conductor {
                Some(m) => ExactScalar::cyclotomic(m, vec![q]),
                None => ExactScalar::Rational(q),
            })
        }
        Value::Array(items) => {
            let m = conductor
                .ok_or_else(|| Error::Parse("cyclotomic scalar without a conductor".into()))?;
            let d = field(m).degree();
            if items.len() != d {
                return Err(Error::Parse(format!(
                    "expected {d} coefficients for conductor {m}, got {}",
                    items.len()
                )));
            }
            let coeffs = items
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse(format!("bad coefficient {c}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ExactScalar::cyclotomic(m, coeffs))
        }
        _ => Err(Error::Parse(format!("bad scalar {v}"))),
    }
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
        .collect();
    match m.conductor() {
        None => json!({"n": m.nrows(), "m": m.ncols(), "scalar": "rational", "entries": entries}),
        Some(c) => json!({
            "n": m.nrows(), "m": m.ncols(), "scalar": "cyclotomic", "conductor": c, "entries": entries
        }),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix> {
    let get_usize = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("missing integer field {k:?}")))
    };
    let n = get_usize("n")?;
    let m = get_usize("m")?;
    let conductor = match v.get("scalar").and_then(Value::as_str) {
        Some("rational") | None => None,
        Some("cyclotomic") => Some(
            v.get("conductor")
                .and_then(Value::as_u64)
                .filter(|&c| c > 0 && c <= u32::MAX as u64)
                .ok_or_else(|| Error::Parse("cyclotomic matrix without a valid conductor".into()))?
                as u32,
        ),
        Some(other) => return Err(Error::Parse(format!("unknown scalar kind {other:?}"))),
    };
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing entries".into()))?;
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
    }
    let mut data = Vec::with_capacity(n * m);
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| Error::Parse("row is not a list".into()))?;
        if r.len() != m {
            return Err(Error::Parse(format!("expected {m} columns, got {}", r.len())));
        }
        for x in r {
            data.push(scalar_from_json(x, conductor)?);
        }
    }
    let out = ExactMatrix::from_vec(n, m, data)?;
    match conductor {
        Some(c) => out.coerce_to(c),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let m = ExactMatrix::from_fn(2, 3, |i, j| ExactScalar::ratio(i as i64 - j as i64, 3));
        let v = matrix_to_json(&m);
        assert_eq!(v["entries"][0][1], json!("-1/3"));
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn cyclotomic_round_trip() {
        let m = ExactMatrix::from_fn(3, 3, |i, j| ExactScalar::root_power(5, (i * j) as i64));
        let v = matrix_to_json(&m);
        assert_eq!(v["conductor"], json!(5));
        let back = matrix_from_json(&v).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.conductor(), Some(5));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matrix_from_json(&json!({"n": 1, "m": 1, "entries": [["x"]]})).is_err());
        assert!(matrix_from_json(&json!({"n": 1, "m": 2, "entries": [["1"]]})).is_err());
        assert!(matrix_from_json(&json!({"n": 1, "m": 1, "scalar": "cyclotomic", "entries": [[["1"]]]})).is_err());
        assert!(matrix_from_json(&json!({"n": 1, "m": 1, "scalar": "cyclotomic", "conductor": 5, "entries": [[["1"]]]})).is_err());
    }
}
