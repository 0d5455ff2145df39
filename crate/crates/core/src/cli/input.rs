//! Polynomial sources: inline coefficients, a JSON document, or a CSV batch.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use crate::embedding::CoeffVector;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, parse_rational_list, Rational};

/// What the user handed in. A batch keeps per-line parse failures in place so
/// the output lines up with the input.
#[derive(Debug)]
pub enum Source {
    Single(CoeffVector),
    Batch(Vec<Result<CoeffVector>>),
}

pub fn parse_coeffs(s: &str) -> Result<CoeffVector> {
    CoeffVector::new(parse_rational_list(s)?)
}

pub fn load(coeffs: Option<&str>, file: Option<&Path>) -> Result<Source> {
    match (coeffs, file) {
        (Some(c), None) => Ok(Source::Single(parse_coeffs(c)?)),
        (None, Some(p)) => load_file(p),
        _ => Err(Error::InvalidInput("give exactly one of --coeffs or --file".into())),
    }
}

fn load_file(path: &Path) -> Result<Source> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let looks_json = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => true,
        Some("csv") => false,
        _ => text.trim_start().starts_with(['{', '[']),
    };
    if looks_json {
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        match v {
            Value::Array(items) => Ok(Source::Batch(items.iter().map(from_json).collect())),
            other => Ok(Source::Single(from_json(&other)?)),
        }
    } else {
        Ok(Source::Batch(from_csv(&text)?))
    }
}

/// `{"g": int, "c": ["p/q", ...]}`; plain JSON integers are accepted too.
pub fn from_json(v: &Value) -> Result<CoeffVector> {
    let bad = |why: &str| Error::InvalidInput(format!("polynomial object: {why}"));
    let c = v.get("c").and_then(Value::as_array).ok_or_else(|| bad("missing array \"c\""))?;
    let c: Vec<Rational> = c
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
            _ => Err(bad("coefficients must be \"p/q\" strings or integers")),
        })
        .collect::<Result<_>>()?;
    if let Some(g) = v.get("g") {
        let g = g.as_u64().ok_or_else(|| bad("\"g\" must be a non-negative integer"))?;
        if g as usize + 1 != c.len() {
            return Err(Error::Dimension(format!(
                "g = {g} needs {} coefficients, got {}",
                g + 1,
                c.len()
            )));
        }
    }
    CoeffVector::new(c)
}

/// One polynomial per line, coefficients comma-separated; `#` starts a
/// comment line.
fn from_csv(text: &str) -> Result<Vec<Result<CoeffVector>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push(
            rec.iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
                .and_then(CoeffVector::new),
        );
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("no polynomials in input".into()));
    }
    Ok(out)
}

/// Comma-separated complex numbers such as `0`, `1.5`, `0.3+0.2i`, `-2i`.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|z| {
            let z = z.trim();
            z.parse::<Complex64>()
                .ok()
                .filter(|v| v.re.is_finite() && v.im.is_finite())
                .ok_or_else(|| Error::InvalidInput(format!("not a complex number: {z:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn json_object() {
        let v: Value = serde_json::from_str(r#"{"g": 2, "c": ["1", "-1/2", 3]}"#).unwrap();
        assert_eq!(from_json(&v).unwrap().coeffs(), &[int(1), rat(-1, 2), int(3)]);
        let v: Value = serde_json::from_str(r#"{"g": 3, "c": ["1", "0"]}"#).unwrap();
        assert!(matches!(from_json(&v), Err(Error::Dimension(_))));
    }

    #[test]
    fn csv_lines() {
        let rows = from_csv("# batch\n1,0\n\n1, -3\n0,1\n").unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].is_ok() && rows[1].is_ok() && rows[2].is_err());
    }

    #[test]
    fn complex_values() {
        let z = parse_complex_list("0, 0.3+0.2i,-2i").unwrap();
        assert_eq!(z[1], Complex64::new(0.3, 0.2));
        assert_eq!(z[2], Complex64::new(0.0, -2.0));
        assert!(parse_complex_list("x").is_err());
    }
}
