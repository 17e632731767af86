//! Human-readable, LaTeX and JSON renderings of polynomials in `t = q^{1/2}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::TPoly;

/// `q`-power for a `t`-exponent, in plain-text syntax.
fn q_power_text(e: usize) -> String {
    match (e % 2, e / 2) {
        (0, 1) => "q".into(),
        (0, k) => format!("q^{k}"),
        (_, _) => format!("q^({e}/2)"),
    }
}

fn q_power_latex(e: usize) -> String {
    match (e % 2, e / 2) {
        (0, 1) => "q".into(),
        (0, k) => format!("q^{{{k}}}"),
        (_, _) => format!("q^{{{e}/2}}"),
    }
}

fn join_terms(p: &TPoly, coeff_sep: &str, power: fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let terms: Vec<(usize, &BigInt)> = p.terms().collect();
    for (i, (e, c)) in terms.into_iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if e == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power(e));
        } else {
            out.push_str(&format!("{mag}{coeff_sep}{}", power(e)));
        }
    }
    out
}

/// Plain text in descending powers of `q`, e.g. `2*q - q^(1/2) + 2`.
pub fn q_string(p: &TPoly) -> String {
    join_terms(p, "*", q_power_text)
}

/// LaTeX in descending powers of `q`, e.g. `2q - q^{1/2} + 2`.
pub fn q_latex(p: &TPoly) -> String {
    join_terms(p, "", q_power_latex)
}

/// Wire form of a polynomial: nonzero terms in ascending `t`-exponent with
/// decimal-string coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variable: String,
    pub note: String,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyJsonError {
    #[error("unsupported variable {0:?}, expected \"t\"")]
    Variable(String),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("terms must have strictly ascending exponents and nonzero coefficients")]
    NotCanonical,
}

impl From<&TPoly> for PolyJson {
    fn from(p: &TPoly) -> Self {
        PolyJson {
            variable: "t".into(),
            note: "q = t^2".into(),
            terms: p.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for TPoly {
    type Error = PolyJsonError;

    fn try_from(j: &PolyJson) -> Result<TPoly, PolyJsonError> {
        if j.variable != "t" {
            return Err(PolyJsonError::Variable(j.variable.clone()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &j.terms {
            let v: BigInt = c.parse().map_err(|_| PolyJsonError::Coefficient(c.clone()))?;
            if v.is_zero() || *e < coeffs.len() {
                return Err(PolyJsonError::NotCanonical);
            }
            coeffs.resize(*e, BigInt::zero());
            coeffs.push(v);
        }
        Ok(TPoly::new(coeffs))
    }
}
