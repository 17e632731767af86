use std::fmt;
use std::ops::{Add, Deref, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ArithError, TPoly};

/// A [`TPoly`] known to be a polynomial in `q = t²` (only even `t`-exponents).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly(TPoly);

impl QPoly {
    pub fn from_q_i64s(coeffs: &[i64]) -> Self {
        Self(TPoly::from_q_i64s(coeffs))
    }

    pub fn q_power(exp: usize) -> Self {
        Self(TPoly::q_power(exp))
    }

    pub fn as_tpoly(&self) -> &TPoly {
        &self.0
    }

    pub fn into_tpoly(self) -> TPoly {
        self.0
    }

    /// Coefficient of `q^i`.
    pub fn q_coeff(&self, i: usize) -> BigInt {
        self.0.coeff(2 * i)
    }

    /// Coefficients in `q`, ascending.
    pub fn q_coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().iter().step_by(2).cloned().collect()
    }

    /// Degree in `q`; `-1` for zero.
    pub fn q_degree(&self) -> isize {
        if self.0.is_zero() {
            -1
        } else {
            self.0.degree() / 2
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(self.0.pow(exp))
    }
}

impl TryFrom<TPoly> for QPoly {
    type Error = ArithError;

    fn try_from(p: TPoly) -> Result<Self, ArithError> {
        if p.is_q_pure() {
            Ok(Self(p))
        } else {
            Err(ArithError::HalfPowerPresent)
        }
    }
}

impl From<QPoly> for TPoly {
    fn from(p: QPoly) -> TPoly {
        p.0
    }
}

impl Deref for QPoly {
    type Target = TPoly;
    fn deref(&self) -> &TPoly {
        &self.0
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        Self(TPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for QPoly {
    fn one() -> Self {
        Self(TPoly::one())
    }
}

macro_rules! closed_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                QPoly($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                QPoly($tr::$method(self.0, rhs.0))
            }
        }
    };
}

closed_binop!(Add, add);
closed_binop!(Sub, sub);
closed_binop!(Mul, mul);

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self.0)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_half_powers() {
        let t = TPoly::from_i64s(&[2, -1, 2]);
        assert_eq!(QPoly::try_from(t), Err(ArithError::HalfPowerPresent));
        let q = QPoly::try_from(TPoly::from_i64s(&[1, 0, 3])).unwrap();
        assert_eq!(q.q_coeffs(), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(q.q_degree(), 1);
        assert_eq!(QPoly::zero().q_degree(), -1);
    }
}
