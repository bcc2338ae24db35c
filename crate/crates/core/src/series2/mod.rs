//! Bivariate polynomials and truncated power series over a tower.

pub mod bipoly;
pub mod gcd;
pub mod series;

pub use bipoly::{BiPoly, Var};
pub use gcd::{bivariate_div_exact, bivariate_gcd};
pub use series::{scaling_solve, substitute, unit_inverse, unit_root, TruncSeries};

use crate::exactnum::ExactError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SeriesError {
    #[error("series is not a unit")]
    NotAUnit,
    #[error("root does not exist in the coefficient field")]
    RootNotInField,
    #[error("substituted series has a constant term")]
    OrderViolation,
    #[error("zero polynomial has no order")]
    ZeroPolynomial,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
