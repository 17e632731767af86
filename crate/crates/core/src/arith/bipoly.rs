use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ArithError, TPoly};
use crate::qcombinatorics::binomial;

/// Polynomial in `x` whose coefficients are [`TPoly`] values in `t`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<TPoly>,
}

/// The two binomial bases appearing in the bivariate identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialBase {
    /// `1 - q·x`
    OneMinusQx,
    /// `q - x`
    QMinusX,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<TPoly>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: TPoly) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^exp`.
    pub fn x_monomial(c: TPoly, exp: usize) -> Self {
        let mut coeffs = vec![TPoly::zero(); exp];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// Coefficient of `x^s`.
    pub fn x_coeff(&self, s: usize) -> TPoly {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn x_degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Binomial expansion of `base^exponent`, term by term.
    pub fn expand(base: BinomialBase, exponent: u32) -> Self {
        let e = i64::from(exponent);
        let coeffs = (0..=e)
            .map(|i| {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let c = binomial(e, i) * sign;
                match base {
                    BinomialBase::OneMinusQx => TPoly::monomial(c, 2 * i as usize),
                    BinomialBase::QMinusX => TPoly::monomial(c, 2 * (e - i) as usize),
                }
            })
            .collect();
        Self::new(coeffs)
    }

    /// Integer coefficient of `q^r x^s`.
    ///
    /// Fails with [`ArithError::HalfPowerPresent`] when the `x^s` coefficient is
    /// not a pure polynomial in `q`.
    pub fn coeff_extract(&self, r: usize, s: usize) -> Result<BigInt, ArithError> {
        let c = self.x_coeff(s);
        if !c.is_q_pure() {
            return Err(ArithError::HalfPowerPresent);
        }
        Ok(c.coeff(2 * r))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.x_coeff(i) + rhs.x_coeff(i)).collect())
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.x_coeff(i) - rhs.x_coeff(i)).collect())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![TPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(TPoly::one())
    }
}

impl From<TPoly> for BiPoly {
    fn from(c: TPoly) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                self.$inner(rhs)
            }
        }
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| match s {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{s}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
