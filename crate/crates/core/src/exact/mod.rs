//! Exact arithmetic: cyclotomic scalars, polynomials, rational functions
//! and divisors.

pub mod cyclo;
pub mod divisor;
pub mod literal;
pub mod matrix;
mod modular;
pub mod poly;
pub mod ratfn;

pub use cyclo::{q, qi, Cyclo, Q};
pub use divisor::{divisors, Divisor, FnDivisors, Point};
pub use literal::{parse_cyclo, parse_poly};
pub use matrix::{Field, Matrix};
pub use poly::Poly;
pub use ratfn::{PointValue, RatFn};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched cyclotomic orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("0/0 is not a rational function")]
    ZeroOverZero,
    #[error("operation needs a nonconstant function")]
    ConstantInput,
    #[error("pole at {0}")]
    PoleAt(String),
    #[error("parse error: {0}")]
    Parse(String),
}
