use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{ArithError, TPoly};

/// An element of ℚ(t), stored as a reduced quotient of integer polynomials.
///
/// Canonical form: numerator and denominator share no nonconstant factor and
/// no common integer content, and the denominator has a positive leading
/// coefficient. Zero is `0 / 1`. Equal values therefore compare equal field by field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: TPoly,
    den: TPoly,
}

impl RationalFunction {
    pub fn new(num: TPoly, den: TPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: TPoly) -> Self {
        Self { num: p, den: TPoly::one() }
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    /// The polynomial value, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&TPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduce(num: TPoly, den: TPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).expect("denominator is nonzero");
        let (mut num, mut den) = if g.degree() > 0 {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_integer(&c).expect("content divides numerator");
            den = den.div_integer(&c).expect("content divides denominator");
        }
        Self { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Self::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&-rhs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self { num: TPoly::zero(), den: TPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self { num: TPoly::one(), den: TPoly::one() }
    }
}

impl From<TPoly> for RationalFunction {
    fn from(p: TPoly) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
