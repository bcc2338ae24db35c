//! Plane curve germs at the origin relative to the divisor `y = 0`.

use crate::exactnum::{ExactError, UniPoly};
use crate::groebner::{local_colength, GroebnerError};
use crate::series2::{bivariate_gcd, BiPoly, Var};

#[derive(Debug, Clone, thiserror::Error)]
pub enum GermError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("non-reduced germ: a repeated factor passes through the origin")]
    NonReduced,
    #[error("the divisor y = 0 is a component of the curve")]
    DivisorComponent,
    #[error("coefficients must be rational")]
    NotRational,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `F = y·f + x^w·u` with `u(0) ≠ 0`.
#[derive(Clone, Debug)]
pub struct CurveGerm {
    pub poly: BiPoly,
    /// Intersection multiplicity with the divisor.
    pub w: u32,
    pub f: BiPoly,
    pub u: UniPoly,
}

impl CurveGerm {
    /// `y·F`, the curve together with the divisor.
    pub fn with_divisor(&self) -> BiPoly {
        &BiPoly::y() * &self.poly
    }

    pub fn partial(&self, v: Var) -> BiPoly {
        self.poly.partial(v)
    }

    /// Whether `u` is the constant one.
    pub fn is_monomial_tail(&self) -> bool {
        self.u.degree() == Some(0) && self.u.coeff(0).is_one()
    }
}

/// The divisor `D = {y = 0}`.
pub fn divisor() -> BiPoly {
    BiPoly::y()
}

/// Validates `p` and splits it as `y·f + x^w·u`.
pub fn normalize(p: &BiPoly) -> Result<CurveGerm, GermError> {
    if p.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    if !p.is_rational() {
        return Err(GermError::NotRational);
    }
    if !p.coeff(0, 0).is_zero() {
        return Err(GermError::NotThroughOrigin);
    }
    if !is_reduced_at_origin(p)? {
        return Err(GermError::NonReduced);
    }
    let restricted = p.restrict_y0();
    let Some(w) = restricted.order() else {
        return Err(GermError::DivisorComponent);
    };
    let u = UniPoly::new(restricted.coeffs()[w..].to_vec());
    let rest = p - &BiPoly::from_x_poly(&restricted);
    let f = rest.div_y_pow(1).expect("remaining terms contain y");
    Ok(CurveGerm { poly: p.clone(), w: w as u32, f, u })
}

/// Whether no repeated factor of `p` passes through the origin.
pub fn is_reduced_at_origin(p: &BiPoly) -> Result<bool, GermError> {
    // Content in Q[x]: a square factor through the origin means x^2 | content.
    let rows = p.y_coefficients();
    let mut content = UniPoly::zero();
    for r in &rows {
        content = UniPoly::gcd(&content, r)?;
    }
    if content.order().is_some_and(|k| k >= 2) {
        return Ok(false);
    }
    let g = bivariate_gcd(p, &p.partial(Var::Y))?;
    if g.degree_in(Var::Y).unwrap_or(0) > 0 && g.coeff(0, 0).is_zero() {
        return Ok(false);
    }
    Ok(true)
}

/// Local intersection multiplicity at the origin; `None` when the curves
/// share a component through the origin.
pub fn intersection_multiplicity(f: &BiPoly, g: &BiPoly) -> Result<Option<usize>, GermError> {
    if f.is_zero() || g.is_zero() {
        return Ok(None);
    }
    let common = bivariate_gcd(f, g)?;
    if common.total_degree().unwrap_or(0) > 0 && common.coeff(0, 0).is_zero() {
        return Ok(None);
    }
    Ok(local_colength(&[f.clone(), g.clone()])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
    }

    #[test]
    fn normal_form_pieces() {
        let g = normalize(&p(&[(1, 0, 2), (1, 2, 1), (1, 5, 0)])).unwrap();
        assert_eq!(g.w, 5);
        assert_eq!(g.f, p(&[(1, 0, 1), (1, 2, 0)]));
        assert_eq!(g.u, UniPoly::from_ints(&[1]));
        let h = normalize(&p(&[(1, 0, 3), (1, 2, 0), (1, 3, 0)])).unwrap();
        assert_eq!(h.w, 2);
        assert_eq!(h.u, UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(normalize(&p(&[(1, 1, 1)])), Err(GermError::DivisorComponent)));
        assert!(matches!(normalize(&p(&[(1, 0, 0), (1, 1, 0)])), Err(GermError::NotThroughOrigin)));
        // (y + x^2)^2
        assert!(matches!(normalize(&p(&[(1, 0, 2), (2, 2, 1), (1, 4, 0)])), Err(GermError::NonReduced)));
        assert!(matches!(normalize(&p(&[(1, 1, 2)])), Err(GermError::NonReduced)));
        assert!(matches!(normalize(&p(&[(1, 2, 0), (1, 2, 1)])), Err(GermError::NonReduced)));
        // A repeated factor away from the origin is fine: (y - 1)^2 (y + x^2).
        let far = &p(&[(1, 0, 2), (-2, 0, 1), (1, 0, 0)]) * &p(&[(1, 0, 1), (1, 2, 0)]);
        assert!(normalize(&far).is_ok());
    }

    #[test]
    fn intersection_numbers() {
        let a = p(&[(1, 0, 1), (1, 2, 0)]);
        let b = p(&[(1, 0, 1), (1, 3, 0)]);
        assert_eq!(intersection_multiplicity(&a, &b).unwrap(), Some(2));
        let cusp = p(&[(1, 0, 3), (1, 2, 0)]);
        assert_eq!(intersection_multiplicity(&cusp, &divisor()).unwrap(), Some(2));
        assert_eq!(intersection_multiplicity(&a, &(&a * &b)).unwrap(), None);
    }
}
