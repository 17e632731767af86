//! Dense exact matrices over `ℤ[t]` and `ℚ(t)`.
//!
//! Two determinant algorithms are provided: fraction-free Bareiss elimination
//! for real work, and Laplace expansion as a structurally independent check on
//! small inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{RationalFunction, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, expected: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    IncompatibleShapes(usize, usize, usize, usize),
    #[error("exact division failed during fraction-free elimination")]
    InternalDivisionFailed,
    #[error("cofactor expansion limited to dimension 8, got {0}")]
    TooLarge(usize),
    #[error("diagonal entry {0} is zero")]
    SingularDiagonal(usize),
    #[error("entry ({0}, {1}) above the diagonal is nonzero")]
    NotTriangular(usize, usize),
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
}

/// Commutative ring elements usable as matrix entries.
pub trait RingElement:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> RingElement for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: RingElement> PolyMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { rows, cols, expected: rows * cols });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: RingElement>(&self, f: impl Fn(&T) -> U) -> PolyMatrix<U> {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::IncompatibleShapes(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, l| {
                let (a, b) = (self.get(i, l), rhs.get(l, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        }))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.first_nonzero_above_diagonal().is_none()
    }

    fn first_nonzero_above_diagonal(&self) -> Option<(usize, usize)> {
        (0..self.rows).flat_map(|i| (i + 1..self.cols).map(move |j| (i, j))).find(|&(i, j)| !self.get(i, j).is_zero())
    }

    fn require_square(&self) -> Result<usize, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    fn check_lower_triangular(&self) -> Result<usize, LinalgError> {
        let n = self.require_square()?;
        if let Some((i, j)) = self.first_nonzero_above_diagonal() {
            return Err(LinalgError::NotTriangular(i, j));
        }
        if let Some(i) = (0..n).find(|&i| self.get(i, i).is_zero()) {
            return Err(LinalgError::SingularDiagonal(i));
        }
        Ok(n)
    }
}

impl<T: fmt::Display> fmt::Debug for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.entries[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// Every intermediate division is exact; a failure means a bug, not bad input.
pub fn det_bareiss(m: &PolyMatrix<TPoly>) -> Result<TPoly, LinalgError> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(TPoly::one());
    }
    let mut a: Vec<Vec<TPoly>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = TPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(TPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.exact_div(&prev).map_err(|_| LinalgError::InternalDivisionFailed)?;
            }
            a[i][k] = TPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Laplace expansion along the first row (dimension ≤ 8).
pub fn det_cofactor(m: &PolyMatrix<TPoly>) -> Result<TPoly, LinalgError> {
    let n = m.require_square()?;
    if n > 8 {
        return Err(LinalgError::TooLarge(n));
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(m, 0, &cols))
}

fn laplace(m: &PolyMatrix<TPoly>, row: usize, cols: &[usize]) -> TPoly {
    if cols.is_empty() {
        return TPoly::one();
    }
    let mut acc = TPoly::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &laplace(m, row + 1, &rest);
        acc = if pos.is_multiple_of(2) { acc + term } else { acc - term };
    }
    acc
}

/// Inverse of a lower-triangular matrix over ℚ(t) by forward substitution.
pub fn invert_lower_triangular(
    m: &PolyMatrix<RationalFunction>,
) -> Result<PolyMatrix<RationalFunction>, LinalgError> {
    let n = m.check_lower_triangular()?;
    let mut b = vec![RationalFunction::zero(); n * n];
    for j in 0..n {
        b[j * n + j] = m.get(j, j).recip().map_err(|_| LinalgError::SingularDiagonal(j))?;
        for i in j + 1..n {
            let s = (j..i).fold(RationalFunction::zero(), |acc, l| {
                let a = m.get(i, l);
                if a.is_zero() {
                    acc
                } else {
                    acc + a * &b[l * n + j]
                }
            });
            b[i * n + j] = (-s).checked_div(m.get(i, i)).map_err(|_| LinalgError::SingularDiagonal(i))?;
        }
    }
    PolyMatrix::new(n, n, b)
}

/// Entry `(n, k)` of `A⁻¹` for lower-triangular `A`, as
/// `(-1)^{n-k} / (A_kk ⋯ A_nn) · det(A_{k+i+1, k+j})_{i,j < n-k}`.
pub fn inverse_entry_formula(a: &PolyMatrix<TPoly>, n: usize, k: usize) -> Result<RationalFunction, LinalgError> {
    let dim = a.check_lower_triangular()?;
    if n >= dim || k > n {
        return Err(LinalgError::IndexOutOfRange { row: n, col: k, dim });
    }
    let size = n - k;
    let minor = PolyMatrix::from_fn(size, size, |i, j| a.get(k + i + 1, k + j).clone());
    let det = det_bareiss(&minor)?;
    let diag = (k..=n).fold(TPoly::one(), |acc, i| acc * a.get(i, i));
    let signed = if size.is_multiple_of(2) { det } else { -det };
    RationalFunction::new(signed, diag).map_err(|_| LinalgError::SingularDiagonal(k))
}

/// Lifts a polynomial matrix into the fraction field.
pub fn to_rational(m: &PolyMatrix<TPoly>) -> PolyMatrix<RationalFunction> {
    m.map(|p| RationalFunction::from_poly(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(c: &[i64]) -> TPoly {
        TPoly::from_q_i64s(c)
    }

    fn rf(p: TPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn determinant_examples() {
        let empty = PolyMatrix::<TPoly>::new(0, 0, vec![]).unwrap();
        let id = PolyMatrix::<TPoly>::identity(3);
        let tri = PolyMatrix::new(2, 2, vec![q(&[1]), q(&[1, 1]), TPoly::zero(), q(&[2, 2])]).unwrap();
        for det in [det_bareiss, det_cofactor] {
            assert_eq!(det(&empty).unwrap(), TPoly::one());
            assert_eq!(det(&id).unwrap(), TPoly::one());
            assert_eq!(det(&tri).unwrap(), q(&[2, 2]));
        }
    }

    #[test]
    fn bareiss_pivots_on_zero_leading_entry() {
        let m = PolyMatrix::new(2, 2, vec![TPoly::zero(), q(&[1, 1]), q(&[3]), q(&[5])]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), -q(&[3, 3]));
        let singular = PolyMatrix::new(2, 2, vec![TPoly::zero(), q(&[1]), TPoly::zero(), q(&[2])]).unwrap();
        assert_eq!(det_bareiss(&singular).unwrap(), TPoly::zero());
    }

    #[test]
    fn shape_errors() {
        let rect = PolyMatrix::from_fn(2, 3, |_, _| TPoly::one());
        assert_eq!(det_bareiss(&rect), Err(LinalgError::NotSquare { rows: 2, cols: 3 }));
        assert_eq!(det_cofactor(&PolyMatrix::<TPoly>::identity(9)), Err(LinalgError::TooLarge(9)));
        assert!(PolyMatrix::new(2, 2, vec![TPoly::one()]).is_err());
    }

    #[test]
    fn two_by_two_inverse() {
        let (a, b, c) = (q(&[1, 1]), q(&[0, 3]), q(&[2, 0, 1]));
        let m = PolyMatrix::new(2, 2, vec![rf(a.clone()), RationalFunction::zero(), rf(b.clone()), rf(c.clone())]).unwrap();
        let inv = invert_lower_triangular(&m).unwrap();
        assert_eq!(inv.get(0, 0), &rf(a.clone()).recip().unwrap());
        assert_eq!(inv.get(1, 1), &rf(c.clone()).recip().unwrap());
        assert_eq!(inv.get(0, 1), &RationalFunction::zero());
        assert_eq!(inv.get(1, 0), &RationalFunction::new(-b, &a * &c).unwrap());
        let id = PolyMatrix::<RationalFunction>::identity(3);
        assert_eq!(invert_lower_triangular(&id).unwrap(), id);
    }

    #[test]
    fn inversion_errors() {
        let upper = PolyMatrix::new(2, 2, vec![rf(q(&[1])), rf(q(&[1])), RationalFunction::zero(), rf(q(&[1]))]).unwrap();
        assert_eq!(invert_lower_triangular(&upper), Err(LinalgError::NotTriangular(0, 1)));
        let singular = PolyMatrix::new(2, 2, vec![rf(q(&[1])), RationalFunction::zero(), rf(q(&[1])), RationalFunction::zero()]).unwrap();
        assert_eq!(invert_lower_triangular(&singular), Err(LinalgError::SingularDiagonal(1)));
        let a = PolyMatrix::<TPoly>::identity(3);
        assert_eq!(inverse_entry_formula(&a, 3, 0), Err(LinalgError::IndexOutOfRange { row: 3, col: 0, dim: 3 }));
        assert_eq!(inverse_entry_formula(&a, 0, 1), Err(LinalgError::IndexOutOfRange { row: 0, col: 1, dim: 3 }));
    }

    #[test]
    fn inverse_entry_small_cases() {
        let a = PolyMatrix::new(
            2,
            2,
            vec![q(&[1, 1]), TPoly::zero(), q(&[0, 2]), q(&[1, 1, 1])],
        )
        .unwrap();
        assert_eq!(inverse_entry_formula(&a, 0, 0).unwrap(), rf(q(&[1, 1])).recip().unwrap());
        assert_eq!(
            inverse_entry_formula(&a, 1, 0).unwrap(),
            RationalFunction::new(-q(&[0, 2]), q(&[1, 1]) * q(&[1, 1, 1])).unwrap()
        );
    }

    fn small_poly() -> impl Strategy<Value = TPoly> {
        prop::collection::vec(-5i64..=5, 0..=4).prop_map(|c| TPoly::from_i64s(&c))
    }

    fn square(n: usize) -> impl Strategy<Value = PolyMatrix<TPoly>> {
        prop::collection::vec(small_poly(), n * n).prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
    }

    fn lower_triangular(n: usize) -> impl Strategy<Value = PolyMatrix<TPoly>> {
        square(n).prop_map(move |m| {
            PolyMatrix::from_fn(n, n, |i, j| {
                if j > i {
                    TPoly::zero()
                } else if i == j && m.get(i, j).is_zero() {
                    TPoly::one()
                } else {
                    m.get(i, j).clone()
                }
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn bareiss_agrees_with_cofactor(m in (1usize..=5).prop_flat_map(square)) {
            prop_assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        }

        #[test]
        fn determinant_is_multiplicative(
            (a, b) in (1usize..=4).prop_flat_map(|n| (square(n), square(n)))
        ) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det_bareiss(&ab).unwrap(), det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap());
        }

        #[test]
        fn determinant_transpose_invariant(m in (1usize..=5).prop_flat_map(square)) {
            prop_assert_eq!(det_bareiss(&m).unwrap(), det_bareiss(&m.transpose()).unwrap());
        }

        #[test]
        fn inverse_entry_matches_substitution(a in (1usize..=6).prop_flat_map(lower_triangular)) {
            let inv = invert_lower_triangular(&to_rational(&a)).unwrap();
            for n in 0..a.rows() {
                for k in 0..=n {
                    prop_assert_eq!(&inverse_entry_formula(&a, n, k).unwrap(), inv.get(n, k));
                }
            }
        }
    }

    #[test]
    fn double_inversion_round_trips() {
        // diagonal [k+1], arbitrary q-polynomials below
        let a = PolyMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                TPoly::from_q_i64s(&vec![1; i + 1])
            } else if j < i {
                q(&[i as i64, -(j as i64), 1])
            } else {
                TPoly::zero()
            }
        });
        let ar = to_rational(&a);
        let inv = invert_lower_triangular(&ar).unwrap();
        assert_eq!(invert_lower_triangular(&inv).unwrap(), ar);
        assert_eq!(ar.mul(&inv).unwrap(), PolyMatrix::identity(4));
        assert_eq!(inv.mul(&ar).unwrap(), PolyMatrix::identity(4));
    }
}
