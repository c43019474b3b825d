//! Exact arithmetic: sparse rational polynomials, rational functions,
//! expressions graded by half-powers of a fixed polynomial, gcd and exact
//! linear algebra.

mod gcd;
mod matrix;
pub mod mpoly;
mod parse;
mod radexpr;
mod ratfun;

pub type Rational = num_rational::BigRational;

pub use gcd::{poly_gcd, poly_lcm};
pub use matrix::RationalMatrix;
pub use mpoly::{grlex_cmp, rat_to_f64, rational_sqrt, vars_of, MPoly, Monomial};
pub use parse::{parse_poly, parse_ratfun};
pub use radexpr::{RadBase, RadExpr, MAX_HALF_GRADE};
pub use ratfun::RatFun;

/// Right nullspace of `m`; see [`RationalMatrix::rational_kernel`].
pub fn rational_kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.rational_kernel()
}
