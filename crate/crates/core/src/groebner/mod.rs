//! Gröbner bases, colength, colon ideals and localisation at the origin.

pub(crate) mod buchberger;
pub mod ideal;
pub mod order;

pub use ideal::{
    colon_principal, groebner_basis, ideal_compare, ideal_sum, is_groebner_basis, local_colength, localize,
    max_ideal_power, IdealBasis, IdealRelation,
};
pub use order::{MonomialOrder, OrderKind};

use crate::exactnum::ExactError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GroebnerError {
    #[error("local ideal is not primary to the maximal ideal (infinite colength)")]
    InfiniteColength,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
