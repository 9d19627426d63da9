//! Exact rational arithmetic: the oracle layer.
//!
//! Rationals are `num_rational::BigRational`; on top of them sit dense
//! polynomials, terminating hypergeometric series (evaluated both exactly and
//! p-adically), and the polynomial and coefficient identities used to split
//! partial sums of central binomial coefficients.

mod hyper;
mod identities;
pub mod instances;
mod poly;
mod rational;

pub use hyper::{
    ek2004_sides, ek2004_t20_check, gauss_2f1, gauss_2f1_padic, pochhammer_exact, pow_rat, transform_check,
    transform_sides, HypSpec, Transform,
};
pub use identities::{binomial, coeffid_check, coeffid_sides, harmonic, polid_check, polid_sides, PolyIdentity};
pub use poly::Poly;
pub use rational::{p_valuation, rat, reduce_rational_mod, Rational};

use thiserror::Error;

use crate::modring::ModError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series does not terminate: no upper parameter is a nonpositive integer")]
    NonTerminating,
    #[error("lower parameter {param} makes a Pochhammer denominator vanish within the summation range")]
    ZeroLowerPochhammer { param: String },
    #[error("transform {0} needs p = 1 (mod 6), got p = {1}")]
    InapplicablePrime(&'static str, u64),
    #[error(transparent)]
    Mod(#[from] ModError),
}
