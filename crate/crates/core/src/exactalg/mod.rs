//! Exact algebra: coefficient fields, sparse polynomials, linear algebra,
//! Gröbner bases, resultants and the zero-dimensional scheme utilities built
//! on them.

pub mod field;
pub mod gcd;
pub mod groebner;
pub mod linalg;
pub mod mono;
pub mod parse;
pub mod points;
pub mod poly;
pub mod scheme;
pub mod upoly;

use thiserror::Error;

pub use field::{Extension, Field, FieldSpec, Gf, Rationals};
pub use groebner::{groebner_basis, GroebnerBasis, Ideal, Length};
pub use mono::{Mono, MonomialOrder};
pub use parse::{parse_poly, ParseError};
pub use poly::{Poly, T, X, Y, Z};
pub use upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("finite field too large for table arithmetic")]
    FieldTooLarge,
    #[error("the rationals have no finite extensions here")]
    NoExtension,
    #[error("coefficient {0} is not defined in this field")]
    BadCoefficient(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("a point is not rational over the base field")]
    NonRationalPoint,
    #[error("the scheme is not zero-dimensional")]
    NotZeroDimensional,
}
