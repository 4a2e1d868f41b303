//! Bindings for the static demo page in `www/`. Each export is a thin
//! wrapper over a plain function so the logic also runs in native tests.

use serde_json::json;
use wasm_bindgen::prelude::*;

use rotorlab::horseshoe::{psi, TruncationParams};
use rotorlab::tracts::{grid_point, leading_set};
use rotorlab::Rational;

pub fn psi_json(alpha: &str, beta: &str, cap: usize) -> Result<String, String> {
    let a: Rational = alpha.parse().map_err(|e: rotorlab::Error| e.to_string())?;
    let b: Rational = beta.parse().map_err(|e: rotorlab::Error| e.to_string())?;
    let params = TruncationParams::new(a, b).map_err(|e| e.to_string())?;
    let v = psi(&params, cap);
    Ok(json!({
        "value": v.value.to_string(),
        "approx": v.value.to_f64(),
        "converged": v.converged(),
        "convergence": v.convergence,
    })
    .to_string())
}

/// Corners of `Z_{p/q}` as `[alpha, beta]` pairs of floats, for drawing.
pub fn staircase_points(p: u64, q: u64) -> Result<Vec<f64>, String> {
    let z = leading_set(p, q).map_err(|e| e.to_string())?;
    Ok(z.corners.iter().flat_map(|(a, b)| [a.to_f64(), b.to_f64()]).collect())
}

/// `ψ̂` on an `m × n` grid, row `j` (increasing `β`) after row `j - 1`.
pub fn psi_grid(m: usize, n: usize, cap: usize) -> Result<Vec<f64>, String> {
    if m < 2 || n < 2 {
        return Err(format!("grid must be at least 2x2, got {m}x{n}"));
    }
    let mut out = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let (a, b) = grid_point(i, j, m, n);
            let params = TruncationParams::new(a, b).map_err(|e| e.to_string())?;
            out.push(psi(&params, cap).value.to_f64());
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn psi_at(alpha: &str, beta: &str, cap: usize) -> Result<String, JsValue> {
    psi_json(alpha, beta, cap).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn staircase(p: u32, q: u32) -> Result<Vec<f64>, JsValue> {
    staircase_points(p as u64, q as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sweep_grid(m: usize, n: usize, cap: usize) -> Result<Vec<f64>, JsValue> {
    psi_grid(m, n, cap).map_err(|e| JsValue::from_str(&e))
}
