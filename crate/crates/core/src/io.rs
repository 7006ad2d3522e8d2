//! JSON formats shared by the command-line tool and the browser demo.
//!
//! * matrix: `{"g": 1, "m": [[1, 2], [0, 1]]}`
//! * word: `{"g": 1, "letters": [["B", 1, 1, 1], ["C", 1, 1, -1]]}`
//! * characteristic: flat array of `2g` integers, `m'` then `m''`
//! * Siegel point: `{"g": 1, "re": [[0.0]], "im": [[1.0]]}`
//! * eighth root: `{"k": 2, "value": "e(2/8)", "name": "i"}`
//!
//! Integers are read and written with arbitrary precision.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use crate::character::EighthRoot;
use crate::characteristic::Characteristic;
use crate::error::{Error, Result};
use crate::symplectic::{Generator, GeneratorKind, GeneratorWord, Letter, SymplecticMatrix};
use crate::theta::SiegelPoint;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn big_to_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal is a JSON number"))
}

pub fn json_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map_err(|_| parse_err(format!("expected an integer, got {s}")))
        }
        other => Err(parse_err(format!("expected an integer, got {other}"))),
    }
}

fn json_to_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn json_to_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| parse_err(format!("{what} must be an integer")))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| parse_err(format!("missing field \"{name}\"")))
}

pub fn matrix_to_json(m: &SymplecticMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(big_to_json).collect()))
        .collect();
    json!({ "g": m.degree(), "m": rows })
}

/// Parses the matrix format. Shape problems are parse errors; failing the
/// symplectic relations is reported as [`Error::NotSymplectic`].
pub fn matrix_from_json(v: &Value) -> Result<SymplecticMatrix> {
    let g = json_to_usize(field(v, "g")?, "g")?;
    let rows = field(v, "m")?
        .as_array()
        .ok_or_else(|| parse_err("\"m\" must be an array of rows"))?;
    if g == 0 || rows.len() != 2 * g {
        return Err(parse_err(format!(
            "expected {} rows for g = {g}, got {}",
            2 * g,
            rows.len()
        )));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("row {} is not an array", i + 1)))?;
        if row.len() != 2 * g {
            return Err(parse_err(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                2 * g
            )));
        }
        parsed.push(row.iter().map(json_to_big).collect::<Result<Vec<_>>>()?);
    }
    SymplecticMatrix::from_rows(&parsed)
}

pub fn parse_matrix(text: &str) -> Result<SymplecticMatrix> {
    matrix_from_json(&parse_value(text)?)
}

pub fn word_to_json(w: &GeneratorWord) -> Value {
    let letters: Vec<Value> = w
        .letters()
        .iter()
        .map(|l| {
            json!([
                l.generator.kind.symbol().to_string(),
                l.generator.i,
                l.generator.j,
                l.exponent
            ])
        })
        .collect();
    json!({ "g": w.degree(), "letters": letters })
}

pub fn word_from_json(v: &Value) -> Result<GeneratorWord> {
    let g = json_to_usize(field(v, "g")?, "g")?;
    let letters = field(v, "letters")?
        .as_array()
        .ok_or_else(|| parse_err("\"letters\" must be an array"))?;
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        let parts = l
            .as_array()
            .filter(|p| p.len() == 4)
            .ok_or_else(|| parse_err("each letter is [kind, i, j, exponent]"))?;
        let kind = parts[0]
            .as_str()
            .and_then(GeneratorKind::from_symbol)
            .ok_or_else(|| parse_err(format!("unknown generator kind {}", parts[0])))?;
        let i = json_to_usize(&parts[1], "i")?;
        let j = json_to_usize(&parts[2], "j")?;
        let exponent = json_to_i64(&parts[3], "exponent")?;
        out.push(Letter {
            generator: Generator::new(kind, i, j, g)?,
            exponent,
        });
    }
    GeneratorWord::new(g, out)
}

pub fn parse_word(text: &str) -> Result<GeneratorWord> {
    word_from_json(&parse_value(text)?)
}

pub fn characteristic_to_json(m: &Characteristic) -> Value {
    Value::Array(m.to_flat().iter().map(big_to_json).collect())
}

pub fn characteristic_from_json(v: &Value) -> Result<Characteristic> {
    let entries = v
        .as_array()
        .ok_or_else(|| parse_err("characteristic must be a flat array"))?;
    let flat = entries
        .iter()
        .map(json_to_big)
        .collect::<Result<Vec<_>>>()?;
    Characteristic::from_flat(&flat).map_err(|e| parse_err(e.to_string()))
}

/// Parses `"c1,...,c2g"` (whitespace and surrounding brackets tolerated).
pub fn parse_characteristic_list(text: &str) -> Result<Characteristic> {
    let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
    let flat = trimmed
        .split(',')
        .map(|s| {
            let s = s.trim();
            BigInt::from_str(s).map_err(|_| parse_err(format!("bad characteristic entry {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Characteristic::from_flat(&flat).map_err(|e| parse_err(e.to_string()))
}

pub fn siegel_point_to_json(p: &SiegelPoint) -> Value {
    json!({ "g": p.degree(), "re": p.re_rows(), "im": p.im_rows() })
}

pub fn siegel_point_from_json(v: &Value) -> Result<SiegelPoint> {
    let g = json_to_usize(field(v, "g")?, "g")?;
    let grid = |name: &str| -> Result<Vec<Vec<f64>>> {
        let rows = field(v, name)?
            .as_array()
            .ok_or_else(|| parse_err(format!("\"{name}\" must be an array")))?;
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| parse_err(format!("\"{name}\" rows must be arrays")))?
                    .iter()
                    .map(|x| {
                        x.as_f64()
                            .ok_or_else(|| parse_err(format!("\"{name}\" entries must be numbers")))
                    })
                    .collect()
            })
            .collect()
    };
    let re = grid("re")?;
    let im = grid("im")?;
    if re.len() != g {
        return Err(parse_err(format!("expected {g} rows")));
    }
    SiegelPoint::from_parts(&re, &im)
}

pub fn eighth_root_to_json(z: EighthRoot) -> Value {
    json!({
        "k": z.exponent(),
        "value": format!("e({}/8)", z.exponent()),
        "name": z.name(),
    })
}
