//! Branch parametrisations, valuation ideals (`I^ec`, `I^cd`), `δ` from
//! branch data and the inclusion-chain check.

pub mod chain;
pub mod puiseux;
pub mod valuation;

pub use chain::{inclusion_chain_check, ChainLink, ChainReport};
pub use puiseux::{puiseux, puiseux_with, BranchParam};
pub use valuation::{
    conductor_exponents, delta_branch, ideal_cd, ideal_ec, intersection_via_branches, pullback_order,
    valuation_ideal, ValuationConditions,
};

use crate::exactnum::ExactError;
use crate::germ::GermError;
use crate::groebner::GroebnerError;
use crate::series2::SeriesError;

/// Largest truncation order used to certify a valuation.
pub const PRECISION_CAP: usize = 512;

#[derive(Debug, Clone, thiserror::Error)]
pub enum BranchError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("non-reduced input")]
    NonReducedInput,
    #[error("Newton polygon iteration did not terminate")]
    DepthExceeded,
    #[error("valuation needs truncation beyond {PRECISION_CAP}")]
    PrecisionCap,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(ExactError),
    #[error(transparent)]
    Series(SeriesError),
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error(transparent)]
    Germ(GermError),
}

// Zero-divisor reports are lifted to the top so callers can split.
impl From<ExactError> for BranchError {
    fn from(e: ExactError) -> Self {
        BranchError::Exact(e)
    }
}

impl From<SeriesError> for BranchError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Exact(x) => BranchError::Exact(x),
            other => BranchError::Series(other),
        }
    }
}

impl From<GroebnerError> for BranchError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Exact(x) => BranchError::Exact(x),
            other => BranchError::Groebner(other),
        }
    }
}

impl From<GermError> for BranchError {
    fn from(e: GermError) -> Self {
        match e {
            GermError::Exact(x) => BranchError::Exact(x),
            other => BranchError::Germ(other),
        }
    }
}
