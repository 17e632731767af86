//! Exact arithmetic: integers, rationals, polynomials in `t` (with `q = t²`),
//! bivariate polynomials and rational functions.

mod bipoly;
mod qpoly;
mod ratfun;
mod tpoly;

pub use bipoly::{BiPoly, BinomialBase};
pub use qpoly::QPoly;
pub use ratfun::RationalFunction;
pub use tpoly::TPoly;

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible over Z[t]")]
    NotDivisible,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("coefficient contains odd powers of t (half powers of q)")]
    HalfPowerPresent,
}
