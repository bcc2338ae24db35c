//! Exact arithmetic: rationals, algebraic towers with dynamic evaluation,
//! univariate polynomials and factorisation.

pub mod factor;
pub mod linalg;
mod modp;
pub mod rational;
pub mod tower;
pub mod trager;
pub mod unipoly;

pub use factor::{factor_rational, rational_roots};
pub use rational::{rat, Integer, Rational};
pub use tower::{FieldElem, SplitEvent, Tower};
pub use trager::factor_over_number_field;
pub use unipoly::UniPoly;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor: relation of level {} splits into {} factors", .0.level, .0.factors.len())]
    Split(SplitEvent),
    #[error("relation is not squarefree")]
    NonSquarefreeMinpoly,
    #[error("relation must have degree at least 2")]
    DegreeTooLow,
    #[error("operation needs rational coefficients")]
    NotRational,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// How roots of univariate polynomials over a tower are separated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FactorMode {
    /// Irreducible factors over Q and over simple number fields; squarefree
    /// splitting with dynamic evaluation elsewhere.
    #[default]
    Full,
    /// Squarefree splitting only, above Q.
    Dynamic,
}

/// A monic factor whose roots form one cluster of conjugate roots.
#[derive(Clone, Debug)]
pub struct RootFactor {
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub irreducible: bool,
}

/// Splits `p` (coefficients in its own tower) into root clusters.
pub fn root_factors(p: &UniPoly, mode: FactorMode) -> Result<Vec<RootFactor>, ExactError> {
    let tower = p.tower();
    let (list, irreducible) = if tower.height() == 0 {
        (factor_rational(p)?, true)
    } else if mode == FactorMode::Full && tower.height() == 1 && tower.top_is_irreducible() {
        (factor_over_number_field(p)?, true)
    } else {
        (p.squarefree_decomposition()?, false)
    };
    Ok(list
        .into_iter()
        .map(|(factor, multiplicity)| RootFactor { factor, multiplicity, irreducible })
        .collect())
}
