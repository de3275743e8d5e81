//! Exact polynomial and series kernel: coefficient rings, truncated
//! one-variable series, weighted sparse multivariate polynomials,
//! symmetric-function rewriting and linear algebra over `F_p`.

pub mod charpoly;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod series;
pub mod symmetric;

use thiserror::Error;

pub use poly::{grlex_cmp, monomials_up_to, Monomial, MultiPoly, MAX_VARS};
pub use ring::{CoeffRing, ModPrimePower, PolyRing, PrimeField, Rationals};
pub use series::TruncatedSeries;
pub use symmetric::{elementary_polys, express_in_elementary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("composition needs an inner series with zero constant term")]
    CompositionDomain,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("series is not divisible by x^{0}")]
    NotDivisible(usize),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("{value} is not {p}-integral")]
    NotIntegral { p: u64, value: String },
    #[error("{p}^{a} does not fit the machine modulus")]
    ModulusTooLarge { p: u64, a: u32 },
    #[error("at most {max} variables are supported, got {0}", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
