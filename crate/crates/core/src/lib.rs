//! Exact computation of the q-Faulhaber polynomials `P_{m,k}`.
//!
//! Everything is computed over ℤ[t] with `q = t²`, so half-integer powers of
//! `q` need no separate representation. `P_{m,k}` is available by three
//! independent routes: a determinant of specialised complete homogeneous
//! symmetric functions, inversion of a lower-triangular matrix over ℚ(t), and
//! brute-force enumeration of weighted non-intersecting lattice path families.

pub mod arith;
pub mod faulhaber;
pub mod lgv;
pub mod linalg;
pub mod qcombinatorics;
pub mod render;
pub mod salie;
mod verdict;

pub use arith::{ArithError, BiPoly, BinomialBase, Integer, QPoly, Rational, RationalFunction, TPoly};
pub use verdict::{Mismatch, Verdict};
