//! The q-power sums `S_{m,n}(q)`, the polynomials `P_{m,k}`, and exact
//! verifiers for the identities that tie them together.
//!
//! Identities are always checked in denominator-cleared form so that both
//! sides live in ℤ[t] and equality is a coefficient-by-coefficient comparison.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::{ArithError, BiPoly, BinomialBase, QPoly, RationalFunction, TPoly};
use crate::lgv::{self, LgvError, WeightConvention};
use crate::linalg::{det_bareiss, invert_lower_triangular, to_rational, LinalgError, PolyMatrix};
use crate::qcombinatorics::{binomial, h_spec, q_factorial, q_int};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FaulhaberError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("inverse entry for P_{{{m},{k}}} does not reduce to a polynomial")]
    NotPolynomial { m: usize, k: usize },
    #[error("routes disagree on P_{{{m},{k}}}")]
    RouteMismatch { m: usize, k: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lgv(#[from] LgvError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn qi(k: usize) -> TPoly {
    q_int(k as i64).expect("non-negative").into_tpoly()
}

fn qf(k: usize) -> TPoly {
    q_factorial(k as i64).expect("non-negative").into_tpoly()
}

/// `[2k]/[2] = 1 + q² + … + q^{2(k-1)}`.
fn even_bracket_ratio(k: usize) -> TPoly {
    qi(2 * k).exact_div(&qi(2)).expect("[2] divides [2k]")
}

/// `S_{m,n}(q) = Σ_{k=1}^n [2k]/[2] · [k]^{m-1} · q^{(m+1)(n-k)/2}`, as a polynomial in `t`.
///
/// Even `m` produces genuine half powers of `q`. `m = 0` would need `[k]^{-1}` and is rejected.
pub fn power_sum(m: u32, n: u32) -> Result<TPoly, FaulhaberError> {
    if m == 0 {
        return Err(FaulhaberError::IndexOutOfRange("power_sum needs m >= 1".into()));
    }
    let (m, n) = (m as usize, n as usize);
    Ok((1..=n).fold(TPoly::zero(), |acc, k| {
        acc + (even_bracket_ratio(k) * qi(k).pow(m as u32 - 1)).shift((m + 1) * (n - k))
    }))
}

/// Lower-triangular matrix with entry `h_{2c-r}({1,q}^{r-c+1})` at row `r`, column `c`.
pub fn faulhaber_h_matrix(dim: usize) -> PolyMatrix<TPoly> {
    PolyMatrix::from_fn(dim, dim, |r, c| {
        let (r, c) = (r as i64, c as i64);
        h_spec(2 * c - r, r - c + 1).into_tpoly()
    })
}

/// The `k × k` determinant `det(h_{m-k-i+2j-1}({1,q}^{i-j+2}))`.
pub fn faulhaber_p_matrix(m: usize, k: usize) -> PolyMatrix<TPoly> {
    let (mi, ki) = (m as i64, k as i64);
    PolyMatrix::from_fn(k, k, |i, j| {
        let (i, j) = (i as i64, j as i64);
        h_spec(mi - ki - i + 2 * j - 1, i - j + 2).into_tpoly()
    })
}

/// `P_{m,k}` as a determinant of specialised complete homogeneous functions.
pub fn faulhaber_p(m: usize, k: usize) -> Result<QPoly, FaulhaberError> {
    if k > m {
        return Err(FaulhaberError::IndexOutOfRange(format!("need k <= m, got m={m}, k={k}")));
    }
    let det = det_bareiss(&faulhaber_p_matrix(m, k))?;
    Ok(QPoly::try_from(det)?)
}

/// The inverse of [`faulhaber_h_matrix`], kept so that many `P_{m,k}` can be read off it.
pub struct InverseRoute {
    inverse: PolyMatrix<RationalFunction>,
}

impl InverseRoute {
    pub fn new(dim: usize) -> Result<Self, FaulhaberError> {
        let inverse = invert_lower_triangular(&to_rational(&faulhaber_h_matrix(dim)))?;
        Ok(Self { inverse })
    }

    pub fn dim(&self) -> usize {
        self.inverse.rows()
    }

    pub fn inverse(&self) -> &PolyMatrix<RationalFunction> {
        &self.inverse
    }

    /// `P_{m,k} = (-1)^k · B_{m,m-k} · [m+1]! / [m-k]!`, which must be a polynomial.
    pub fn p(&self, m: usize, k: usize) -> Result<QPoly, FaulhaberError> {
        if k > m || m >= self.dim() {
            return Err(FaulhaberError::IndexOutOfRange(format!(
                "need k <= m < {}, got m={m}, k={k}",
                self.dim()
            )));
        }
        let scale = RationalFunction::new(qf(m + 1), qf(m - k))?;
        let value = self.inverse.get(m, m - k) * &scale;
        let value = if k.is_multiple_of(2) { value } else { -value };
        let poly = value.as_poly().ok_or(FaulhaberError::NotPolynomial { m, k })?;
        QPoly::try_from(poly.clone()).map_err(|_| FaulhaberError::NotPolynomial { m, k })
    }
}

/// `P_{m,k}` read off the inverse of the `dim`-dimensional h-matrix.
pub fn faulhaber_p_via_inverse(m: usize, k: usize, dim: usize) -> Result<QPoly, FaulhaberError> {
    if dim <= m {
        return Err(FaulhaberError::IndexOutOfRange(format!("need dim > m, got dim={dim}, m={m}")));
    }
    InverseRoute::new(dim)?.p(m, k)
}

/// Checks `[2]·[m+1]!·S_{2m+1,n} = Σ_k (-1)^{m-k}·[k]!·P_{m,m-k}·q^{(m-k)n}·([n][n+1])^{k+1}`.
pub fn verify_eq2(m: usize, n: usize) -> Result<Verdict, FaulhaberError> {
    if n == 0 {
        return Err(FaulhaberError::IndexOutOfRange("verify_eq2 needs n >= 1".into()));
    }
    let lhs = qi(2) * qf(m + 1) * power_sum(2 * m as u32 + 1, n as u32)?;
    let base = qi(n) * qi(n + 1);
    let mut rhs = TPoly::zero();
    for k in 0..=m {
        let p = faulhaber_p(m, m - k)?;
        if p.is_zero() {
            continue;
        }
        let term = (qf(k) * p.into_tpoly() * base.pow(k as u32 + 1)).shift(2 * (m - k) * n);
        rhs = if (m - k).is_multiple_of(2) { rhs + term } else { rhs - term };
    }
    Ok(Verdict::compare(format!("cleared power-sum identity m={m} n={n}"), &lhs, &rhs))
}

/// Builds `B_{r,c} = (-1)^{r-c}·[c]!/[r+1]!·P_{r,r-c}` and checks `A·B = I` exactly.
pub fn verify_inverse_theorem(dim: usize) -> Result<Verdict, FaulhaberError> {
    let a = to_rational(&faulhaber_h_matrix(dim));
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            if c > r {
                entries.push(RationalFunction::zero());
                continue;
            }
            let p = faulhaber_p(r, r - c)?.into_tpoly();
            let v = RationalFunction::new(qf(c) * p, qf(r + 1))?;
            entries.push(if (r - c).is_multiple_of(2) { v } else { -v });
        }
    }
    let b = PolyMatrix::new(dim, dim, entries)?;
    let product = a.mul(&b)?;
    let id = PolyMatrix::identity(dim);
    for r in 0..dim {
        for c in 0..dim {
            if product.get(r, c) != id.get(r, c) {
                return Ok(Verdict::compare(
                    format!("(A·B)[{r},{c}] for dim {dim}"),
                    product.get(r, c),
                    id.get(r, c),
                ));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn lemma1_lhs(m: usize) -> BiPoly {
    let e = m as u32 + 1;
    BiPoly::expand(BinomialBase::OneMinusQx, e) - BiPoly::expand(BinomialBase::QMinusX, e)
}

fn lemma1_rhs(m: usize) -> BiPoly {
    let one_minus_q = TPoly::one() - TPoly::q_power(1);
    let one_minus_x = BiPoly::new(vec![TPoly::one(), -TPoly::one()]);
    let one_plus_x = BiPoly::new(vec![TPoly::one(), TPoly::one()]);
    (0..=m / 2).fold(BiPoly::zero(), |acc, k| {
        let scalar = h_spec((m - 2 * k) as i64, k as i64 + 1).into_tpoly() * one_minus_q.pow(2 * k as u32 + 1);
        let term = BiPoly::x_monomial(scalar, k) * one_minus_x.pow((m - 2 * k) as u32) * one_plus_x.clone();
        acc + term
    })
}

/// Checks `(1-qx)^{m+1} - (q-x)^{m+1} = Σ_k h_{m-2k}({1,q}^{k+1})(1-q)^{2k+1}(1-x)^{m-2k}(1+x)x^k`.
pub fn verify_lemma1(m: usize) -> Verdict {
    Verdict::compare(format!("bivariate identity m={m}"), &lemma1_lhs(m), &lemma1_rhs(m))
}

/// Coefficient grid comparison for the left side of the bivariate identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1CoefficientReport {
    pub m: usize,
    pub cells_checked: usize,
    /// Cells with `s = r = m - r + 1`, recorded with their actual coefficient.
    pub collisions: Vec<(usize, usize, BigInt)>,
    pub verdict: Verdict,
}

/// Closed form for the coefficient of `q^r x^s`, `None` on the collision cell.
pub fn lemma1_closed_form(m: usize, r: usize, s: usize) -> Option<BigInt> {
    let diag = s == r;
    let anti = s + r == m + 1;
    let sign = |e: usize| if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let b = binomial(m as i64 + 1, r as i64);
    match (diag, anti) {
        (true, true) => None,
        (true, false) => Some(sign(r) * b),
        (false, true) => Some(sign(r + m) * b),
        (false, false) => Some(BigInt::zero()),
    }
}

pub fn lemma1_coefficient_check(m: usize) -> Result<Lemma1CoefficientReport, FaulhaberError> {
    let lhs = lemma1_lhs(m);
    let mut verdict = Verdict::Pass;
    let mut collisions = Vec::new();
    let mut cells = 0;
    for r in 0..=m + 1 {
        for s in 0..=m + 1 {
            let actual = lhs.coeff_extract(r, s)?;
            match lemma1_closed_form(m, r, s) {
                Some(expected) => {
                    cells += 1;
                    verdict = verdict.and(Verdict::compare(format!("m={m} q^{r} x^{s}"), &actual, &expected));
                }
                None => collisions.push((r, s, actual)),
            }
        }
    }
    Ok(Lemma1CoefficientReport { m, cells_checked: cells, collisions, verdict })
}

pub fn check_symmetry(m: usize, k: usize) -> Result<Verdict, FaulhaberError> {
    let p = faulhaber_p(m, k)?;
    Ok(if p.is_palindromic() {
        Verdict::Pass
    } else {
        Verdict::fail(format!("P_{{{m},{k}}} palindromic"), p.to_string(), "reversed coefficients differ")
    })
}

pub fn check_nonnegativity(m: usize, k: usize) -> Result<Verdict, FaulhaberError> {
    let p = faulhaber_p(m, k)?;
    Ok(if p.has_negative_coeff() {
        Verdict::fail(format!("P_{{{m},{k}}} nonnegative"), p.to_string(), "has a negative coefficient")
    } else {
        Verdict::Pass
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConcavityEntry {
    pub m: usize,
    pub k: usize,
    pub log_concave: bool,
    /// First `q`-exponent `i` with `c_i² < c_{i-1}·c_{i+1}`.
    pub first_violation: Option<usize>,
}

/// Observational report on `c_i² ≥ c_{i-1}c_{i+1}` for every `P_{m,k}` with `m ≤ m_max`.
pub fn logconcavity_report(m_max: usize) -> Result<Vec<LogConcavityEntry>, FaulhaberError> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        for k in 0..=m {
            let p = faulhaber_p(m, k)?;
            let c = p.q_coeffs();
            let lo = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
            let span = &c[lo.min(c.len())..];
            let first_violation = (1..span.len().saturating_sub(1))
                .find(|&i| &span[i] * &span[i] < &span[i - 1] * &span[i + 1])
                .map(|i| i + lo);
            out.push(LogConcavityEntry { m, k, log_concave: first_violation.is_none(), first_violation });
        }
    }
    Ok(out)
}

/// Checks the `q = 1` shadow of the cleared power-sum identity over plain integers:
/// `2·(m+1)!·Σ_{j≤n} j^{2m+1} = Σ_k (-1)^{m-k}·k!·P_{m,m-k}(1)·(n(n+1))^{k+1}`.
pub fn verify_classical_specialization(m: usize, n: usize) -> Result<Verdict, FaulhaberError> {
    let fact = |x: usize| (1..=x).fold(BigInt::one(), |a, i| a * i);
    let power_sum: BigInt = (1..=n).map(|j| Pow::pow(BigInt::from(j), 2 * m as u32 + 1)).sum();
    let lhs = BigInt::from(2) * fact(m + 1) * power_sum;
    let nn = BigInt::from(n * (n + 1));
    let mut rhs = BigInt::zero();
    for k in 0..=m {
        let term = fact(k) * faulhaber_p(m, m - k)?.eval_one() * Pow::pow(&nn, k as u32 + 1);
        rhs += if (m - k).is_multiple_of(2) { term } else { -term };
    }
    Ok(Verdict::compare(format!("classical identity m={m} n={n}"), &lhs, &rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Determinant,
    Inverse,
    LgvBruteforce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub poly: QPoly,
    pub provenance: Vec<Provenance>,
}

/// `P_{m,k}` for all `0 ≤ k ≤ m ≤ m_max`, each cell confirmed by every requested route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaulhaberTable {
    pub m_max: usize,
    pub cells: BTreeMap<(usize, usize), TableCell>,
}

impl FaulhaberTable {
    /// Computes every cell by each route in `routes` and insists they agree.
    ///
    /// The brute-force route covers only cells with `1 ≤ k` whose tuple count
    /// fits `budget`; other cells simply do not list it.
    pub fn build(m_max: usize, routes: &[Provenance], budget: u64) -> Result<Self, FaulhaberError> {
        let inverse = if routes.contains(&Provenance::Inverse) { Some(InverseRoute::new(m_max + 1)?) } else { None };
        let mut cells = BTreeMap::new();
        for m in 0..=m_max {
            for k in 0..=m {
                let mut found: Vec<(Provenance, QPoly)> = Vec::new();
                for &route in routes {
                    let value = match route {
                        Provenance::Determinant => Some(faulhaber_p(m, k)?),
                        Provenance::Inverse => Some(inverse.as_ref().expect("built above").p(m, k)?),
                        Provenance::LgvBruteforce if k >= 1 => {
                            match lgv::bruteforce_family_sum(m, k, WeightConvention::EVEN, budget) {
                                Ok(p) => Some(p),
                                Err(LgvError::BudgetExceeded { .. }) => None,
                                Err(e) => return Err(e.into()),
                            }
                        }
                        Provenance::LgvBruteforce => None,
                    };
                    if let Some(v) = value {
                        found.push((route, v));
                    }
                }
                let Some((_, poly)) = found.first().cloned() else {
                    return Err(FaulhaberError::IndexOutOfRange(format!("no route produced P_{{{m},{k}}}")));
                };
                if found.iter().any(|(_, v)| *v != poly) {
                    return Err(FaulhaberError::RouteMismatch { m, k });
                }
                let provenance = found.into_iter().map(|(r, _)| r).collect();
                cells.insert((m, k), TableCell { poly, provenance });
            }
        }
        Ok(Self { m_max, cells })
    }

    pub fn get(&self, m: usize, k: usize) -> Option<&QPoly> {
        self.cells.get(&(m, k)).map(|c| &c.poly)
    }

    /// Observed `q`-degree of each cell (`-1` for zero).
    pub fn degrees(&self) -> BTreeMap<(usize, usize), isize> {
        self.cells.iter().map(|(key, c)| (*key, c.poly.q_degree())).collect()
    }

    pub fn all_palindromic(&self) -> bool {
        self.cells.values().all(|c| c.poly.is_palindromic())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_q_i64s(c)
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(power_sum(3, 1).unwrap(), TPoly::one());
        assert_eq!(power_sum(1, 2).unwrap(), TPoly::from_q_i64s(&[1, 1, 1]));
        assert_eq!(power_sum(5, 0).unwrap(), TPoly::zero());
        assert!(power_sum(0, 3).is_err());
        // even m: (m+1)(n-k) odd gives half powers
        assert!(!power_sum(2, 2).unwrap().is_q_pure());
    }

    #[test]
    fn power_sum_at_q_one_is_classical() {
        for m in 1..=6u32 {
            for n in 0..=6u32 {
                let classical: BigInt = (1..=n).map(|j| Pow::pow(BigInt::from(j), m)).sum();
                assert_eq!(power_sum(m, n).unwrap().eval_one(), classical);
            }
        }
    }

    #[test]
    fn h_matrix_shape() {
        assert_eq!(faulhaber_h_matrix(1), PolyMatrix::identity(1));
        let a = faulhaber_h_matrix(3);
        assert_eq!(a.get(1, 1), &TPoly::from_q_i64s(&[1, 1]));
        assert_eq!(a.get(2, 0), &TPoly::zero());
        assert!(a.is_lower_triangular());
        let a = faulhaber_h_matrix(9);
        for i in 0..9 {
            assert_eq!(a.get(i, i), &qi(i + 1));
        }
    }

    #[test]
    fn p_values() {
        for m in 0..=8 {
            assert_eq!(faulhaber_p(m, 0).unwrap(), QPoly::one());
        }
        assert_eq!(faulhaber_p(1, 1).unwrap(), QPoly::zero());
        assert_eq!(faulhaber_p(3, 1).unwrap(), q(&[2, 2]));
        assert_eq!(faulhaber_p(2, 1).unwrap(), QPoly::one());
        assert_eq!(faulhaber_p(3, 2).unwrap(), q(&[2, 2]));
        for m in 1..=8 {
            assert_eq!(faulhaber_p(m, m).unwrap(), QPoly::zero());
        }
        assert!(faulhaber_p(2, 3).is_err());
    }

    #[test]
    fn p_determinant_cross_checked_by_cofactor() {
        use crate::linalg::det_cofactor;
        for m in 0..=8 {
            for k in 0..=m {
                let mat = faulhaber_p_matrix(m, k);
                assert_eq!(det_bareiss(&mat).unwrap(), det_cofactor(&mat).unwrap());
            }
        }
    }

    #[test]
    fn inverse_route_small() {
        assert_eq!(faulhaber_p_via_inverse(1, 0, 2).unwrap(), QPoly::one());
        assert_eq!(faulhaber_p_via_inverse(3, 1, 4).unwrap(), q(&[2, 2]));
        assert!(faulhaber_p_via_inverse(3, 1, 3).is_err());
    }

    #[test]
    fn eq2_small() {
        assert!(verify_eq2(1, 1).unwrap().is_pass());
        for n in 1..=6 {
            assert!(verify_eq2(0, n).unwrap().is_pass());
        }
        assert!(verify_eq2(2, 0).is_err());
    }

    #[test]
    fn inverse_theorem_small() {
        assert!(verify_inverse_theorem(1).unwrap().is_pass());
        assert!(verify_inverse_theorem(2).unwrap().is_pass());
    }

    #[test]
    fn lemma1_small() {
        assert!(verify_lemma1(0).is_pass());
        assert!(verify_lemma1(1).is_pass());
        let r0 = lemma1_coefficient_check(0).unwrap();
        assert!(r0.verdict.is_pass());
        assert_eq!(r0.cells_checked, 4);
        let r1 = lemma1_coefficient_check(1).unwrap();
        assert!(r1.verdict.is_pass());
        assert_eq!(r1.collisions, vec![(1, 1, BigInt::zero())]);
    }

    #[test]
    fn symmetry_and_sign_examples() {
        assert!(check_symmetry(3, 1).unwrap().is_pass());
        assert!(check_symmetry(1, 1).unwrap().is_pass());
        assert!(check_nonnegativity(3, 1).unwrap().is_pass());
        assert!(check_nonnegativity(1, 1).unwrap().is_pass());
    }

    #[test]
    fn logconcavity_report_examples() {
        let r = logconcavity_report(3).unwrap();
        assert_eq!(r.len(), 10);
        let cell = r.iter().find(|e| e.m == 3 && e.k == 1).unwrap();
        assert!(cell.log_concave);
        assert!(r.iter().filter(|e| e.k == 0).all(|e| e.log_concave));
    }

    #[test]
    fn classical_specialization_small() {
        for m in 0..=3 {
            for n in 0..=4 {
                assert!(verify_classical_specialization(m, n).unwrap().is_pass());
            }
        }
    }

    #[test]
    fn table_routes_agree() {
        let t = FaulhaberTable::build(
            4,
            &[Provenance::Determinant, Provenance::Inverse, Provenance::LgvBruteforce],
            lgv::DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(t.cells.len(), 15);
        assert!(t.all_palindromic());
        assert_eq!(t.cells[&(0, 0)].provenance, vec![Provenance::Determinant, Provenance::Inverse]);
        assert_eq!(t.cells[&(4, 2)].provenance.len(), 3);
        assert_eq!(t.degrees()[&(1, 1)], -1);
    }
}
