//! Browser bindings. Each export returns a JSON string for the page script;
//! the `*_json` functions hold the logic so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qfaulhaber::faulhaber;
use qfaulhaber::lgv::{self, LatticePoint, WeightConvention};
use qfaulhaber::render::{q_latex, q_string};
use qfaulhaber::{salie, TPoly};

/// Largest `m` the page will compute; keeps the UI responsive.
pub const M_LIMIT: usize = 14;
const FAMILY_BUDGET: u64 = 200_000;

fn check_m(m: usize) -> Result<(), String> {
    if m > M_LIMIT {
        Err(format!("m is capped at {M_LIMIT} in the demo"))
    } else {
        Ok(())
    }
}

fn coeff_strings(p: &TPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn faulhaber_poly_json(m: usize, k: usize) -> Result<Value, String> {
    check_m(m)?;
    let p = faulhaber::faulhaber_p(m, k).map_err(|e| e.to_string())?;
    let q = p.q_coeffs();
    let violation = (1..q.len().saturating_sub(1)).find(|&i| &q[i] * &q[i] < &q[i - 1] * &q[i + 1]);
    Ok(json!({
        "m": m,
        "k": k,
        "q_coeffs": q.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "text": q_string(p.as_tpoly()),
        "latex": q_latex(p.as_tpoly()),
        "palindromic": p.is_palindromic(),
        "log_concave": violation.is_none(),
        "first_violation": violation,
    }))
}

fn pt(p: &LatticePoint) -> [i64; 2] {
    [p.x, p.y]
}

pub fn lattice_families_json(m: usize, k: usize, limit: usize) -> Result<Value, String> {
    check_m(m)?;
    let (starts, ends) = lgv::endpoints(m, k).map_err(|e| e.to_string())?;
    let det = lgv::lgv_determinant(m, k, WeightConvention::EVEN).map_err(|e| e.to_string())?;
    let (total, families) = match lgv::nonintersecting_families(m, k, FAMILY_BUDGET) {
        Ok(fams) => {
            let shown: Vec<Value> = fams
                .iter()
                .take(limit)
                .map(|f| {
                    json!({
                        "weight": f.weight_exponent(WeightConvention::EVEN),
                        "paths": f.paths.iter().map(|p| p.points().iter().map(pt).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (Some(fams.len()), shown)
        }
        Err(lgv::LgvError::BudgetExceeded { .. }) => (None, Vec::new()),
        Err(e) => return Err(e.to_string()),
    };
    Ok(json!({
        "m": m,
        "k": k,
        "starts": starts.iter().map(pt).collect::<Vec<_>>(),
        "ends": ends.iter().map(pt).collect::<Vec<_>>(),
        "determinant": q_string(det.as_tpoly()),
        "determinant_at_1": det.eval_one().to_string(),
        "total_families": total,
        "families": families,
    }))
}

pub fn salie_table_json(m: usize) -> Result<Value, String> {
    if !(1..=5).contains(&m) {
        return Err("the demo fits 1 <= m <= 5".into());
    }
    let fit = salie::salie_fit(m, m + 2, None).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = fit
        .g
        .iter()
        .map(|(k, g)| {
            json!({
                "k": k,
                "text": q_string(g),
                "latex": q_latex(g),
                "t_coeffs": coeff_strings(g),
                "has_negative": g.has_negative_coeff(),
            })
        })
        .collect();
    Ok(json!({ "m": m, "residual_ok": fit.residual_ok, "rows": rows }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn faulhaber_poly(m: usize, k: usize) -> Result<String, JsError> {
    to_js(faulhaber_poly_json(m, k))
}

#[wasm_bindgen]
pub fn lattice_families(m: usize, k: usize, limit: usize) -> Result<String, JsError> {
    to_js(lattice_families_json(m, k, limit))
}

#[wasm_bindgen]
pub fn salie_table(m: usize) -> Result<String, JsError> {
    to_js(salie_table_json(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_3_1() {
        let v = faulhaber_poly_json(3, 1).unwrap();
        assert_eq!(v["text"], "2*q + 2");
        assert_eq!(v["q_coeffs"], json!(["2", "2"]));
        assert_eq!(v["palindromic"], true);
    }

    #[test]
    fn families_count_matches_determinant_at_one() {
        let v = lattice_families_json(5, 2, 3).unwrap();
        assert_eq!(v["total_families"].as_u64().unwrap().to_string(), v["determinant_at_1"].as_str().unwrap());
        assert_eq!(v["families"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn salie_marks_negative_cells() {
        let v = salie_table_json(3).unwrap();
        let neg: Vec<bool> = v["rows"].as_array().unwrap().iter().map(|r| r["has_negative"].as_bool().unwrap()).collect();
        assert_eq!(neg, [true, true, false]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(faulhaber_poly_json(M_LIMIT + 1, 0).is_err());
        assert!(lattice_families_json(2, 3, 1).is_err());
        assert!(salie_table_json(0).is_err());
    }
}
