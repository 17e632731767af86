//! Dense univariate polynomials over ℤ in the variable `t`, where `q = t²`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// A polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Coefficients are stored in ascending order: `coeffs[i]` multiplies `t^i`.
/// The zero polynomial is the empty vector; no trailing zeros are kept.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from coefficients in `q`: entry `i` multiplies `q^i = t^{2i}`.
    pub fn from_q_i64s(coeffs: &[i64]) -> Self {
        let mut out = vec![BigInt::zero(); coeffs.len() * 2];
        for (i, &c) in coeffs.iter().enumerate() {
            out[2 * i] = BigInt::from(c);
        }
        Self::new(out)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c · t^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self { coeffs }
    }

    pub fn t_power(exp: usize) -> Self {
        Self::monomial(1, exp)
    }

    pub fn q_power(exp: usize) -> Self {
        Self::monomial(1, 2 * exp)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero when absent.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree in `t`; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonzero terms as `(t_exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// True when every nonzero coefficient sits at an even `t`-exponent.
    pub fn is_q_pure(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// Palindromic over the support span `[low_degree, degree]`; zero counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        match self.low_degree() {
            None => true,
            Some(lo) => {
                let span = &self.coeffs[lo..];
                span.iter().eq(span.iter().rev())
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `t^exp`.
    pub fn shift(&self, exp: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at an integer point by Horner's rule.
    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Value at `t = 1` (equivalently `q = 1`).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Exact division by an integer; `None` if some coefficient is not a multiple.
    pub fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            out.push(quo);
        }
        Some(Self { coeffs: out })
    }

    /// Returns `c` with `divisor · c = self`, failing if no such `c` exists in ℤ[t].
    pub fn exact_div(&self, divisor: &TPoly) -> Result<TPoly, ArithError> {
        let lead = divisor.leading().ok_or(ArithError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Err(ArithError::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            if rem[i + dd].is_zero() {
                continue;
            }
            let (c, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return Err(ArithError::NotDivisible);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ArithError::NotDivisible);
        }
        Ok(Self::new(quot))
    }

    /// Pseudo-remainder of `self` by `b`, up to a power of `lc(b)`.
    fn pseudo_rem(&self, b: &TPoly) -> TPoly {
        let lead = b.leading().expect("pseudo_rem by zero");
        let db = b.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > db && !rem.is_empty() {
            let top = rem.pop().unwrap();
            let shift = rem.len() - db;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, d) in b.coeffs[..db].iter().enumerate() {
                rem[shift + j] -= &top * d;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient, by the primitive
    /// pseudo-remainder sequence over ℤ.
    pub fn gcd(&self, other: &TPoly) -> Result<TPoly, ArithError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(ArithError::BothZero),
            (false, true) => return Ok(self.primitive_part()),
            (true, false) => return Ok(other.primitive_part()),
            _ => {}
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return Ok(b);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    fn add_ref(&self, other: &TPoly) -> TPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::new(coeffs)
    }

    fn sub_ref(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, o) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= o;
        }
        Self::new(coeffs)
    }

    fn mul_ref(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }
}

impl Zero for TPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for TPoly {
    fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&TPoly> for &TPoly {
            type Output = TPoly;
            fn $method(self, rhs: &TPoly) -> TPoly {
                self.$inner(rhs)
            }
        }
        impl $tr<TPoly> for TPoly {
            type Output = TPoly;
            fn $method(self, rhs: TPoly) -> TPoly {
                self.$inner(&rhs)
            }
        }
        impl $tr<&TPoly> for TPoly {
            type Output = TPoly;
            fn $method(self, rhs: &TPoly) -> TPoly {
                self.$inner(rhs)
            }
        }
        impl $tr<TPoly> for &TPoly {
            type Output = TPoly;
            fn $method(self, rhs: TPoly) -> TPoly {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        *self = self.add_ref(rhs);
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -self.clone()
    }
}

impl From<BigInt> for TPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for TPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::q_string(self))
    }
}
