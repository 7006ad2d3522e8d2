//! Browser bindings. Each exported function takes and returns JSON strings;
//! the `*_json` functions hold the logic so they can be tested natively.

use serde_json::{json, Value};
use siegel_char::io::{
    eighth_root_to_json, matrix_from_json, matrix_to_json, siegel_point_from_json, word_from_json,
};
use siegel_char::theta::DEFAULT_TAIL_TOL;
use siegel_char::{
    chi, enumerate_all_mod2, enumerate_even_mod2, extract_abelian_exponents, theta_constant,
    verify_character, word_to_matrix, SymplecticMatrix,
};
use wasm_bindgen::prelude::*;

const MAX_DEGREE: usize = 3;

fn parse(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))
}

fn to_matrix(v: &Value) -> Result<SymplecticMatrix, String> {
    let mat = if v.get("letters").is_some() {
        word_to_matrix(&word_from_json(v).map_err(|e| e.to_string())?)
    } else {
        matrix_from_json(v).map_err(|e| e.to_string())?
    };
    if mat.degree() > MAX_DEGREE {
        return Err(format!("the demo supports g <= {MAX_DEGREE}"));
    }
    Ok(mat)
}

/// `chi_m(M)` for every `m` in `{0,1}^{2g}` plus membership flags.
pub fn chi_table_json(input: &str) -> Result<String, String> {
    let mat = to_matrix(&parse(input)?)?;
    mat.require_level2().map_err(|e| e.to_string())?;
    let rows = enumerate_all_mod2(mat.degree())
        .iter()
        .map(|m| {
            let z = chi(m, &mat).map_err(|e| e.to_string())?;
            Ok(json!({
                "m": m.to_string(),
                "even": m.is_even(),
                "chi": eighth_root_to_json(z),
            }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let exponents = extract_abelian_exponents(&mat).map_err(|e| e.to_string())?;
    let out = json!({
        "matrix": matrix_to_json(&mat),
        "level4": mat.is_level4(),
        "igusa48": mat.is_igusa48(),
        "exponents": exponents,
        "rows": rows,
    });
    Ok(out.to_string())
}

/// `theta_m(tau)` for every even `m` in `{0,1}^{2g}`.
pub fn theta_constants_json(point: &str) -> Result<String, String> {
    let tau = siegel_point_from_json(&parse(point)?).map_err(|e| e.to_string())?;
    if tau.degree() > MAX_DEGREE {
        return Err(format!("the demo supports g <= {MAX_DEGREE}"));
    }
    let rows = enumerate_even_mod2(tau.degree())
        .iter()
        .map(|m| {
            let z = theta_constant(m, &tau, DEFAULT_TAIL_TOL).map_err(|e| e.to_string())?;
            Ok(json!({ "m": m.to_string(), "re": z.re, "im": z.im, "abs": z.norm() }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({ "g": tau.degree(), "rows": rows }).to_string())
}

/// Numeric check of the transformation law at `(M, tau)`.
pub fn verify_json(input: &str, point: &str, tol: f64) -> Result<String, String> {
    let mat = to_matrix(&parse(input)?)?;
    let tau = siegel_point_from_json(&parse(point)?).map_err(|e| e.to_string())?;
    let report = verify_character(&mat, &tau, tol).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = chiTable)]
pub fn chi_table(input: &str) -> Result<String, JsValue> {
    chi_table_json(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = thetaConstants)]
pub fn theta_constants(point: &str) -> Result<String, JsValue> {
    theta_constants_json(point).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = verifyTransformation)]
pub fn verify_transformation(input: &str, point: &str, tol: f64) -> Result<String, JsValue> {
    verify_json(input, point, tol).map_err(|e| JsValue::from_str(&e))
}
