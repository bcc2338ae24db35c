//! Factorisation over a simple number field `Q(a)` by Trager's norm method.

use super::factor::factor_rational;
use super::linalg::{determinant, interpolate};
use super::rational::{int, Rational};
use super::tower::{FieldElem, Tower};
use super::unipoly::UniPoly;
use super::ExactError;

/// Norm `N_{K/Q}` of an element of a height-one tower.
pub fn norm(e: &FieldElem, tower: &Tower) -> Rational {
    let d = tower.degree();
    let a = tower.generator();
    let mut cols = Vec::with_capacity(d);
    let mut basis = FieldElem::one();
    for _ in 0..d {
        cols.push((e * &basis).lift_to(tower).to_rational_vector());
        basis = &basis * &a;
    }
    let m: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
    determinant(m)
}

/// Norm of a polynomial over `K`, a polynomial over Q.
fn poly_norm(g: &UniPoly, tower: &Tower) -> UniPoly {
    let n = tower.degree() * g.degree().unwrap_or(0);
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| norm(&g.eval(&FieldElem::from(x.clone())), tower)).collect();
    UniPoly::from_rationals(&interpolate(&xs, &ys))
}

/// Monic irreducible factors with multiplicities over a height-one tower
/// whose relation is irreducible over Q.
pub fn factor_over_number_field(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, ExactError> {
    let tower = p.tower();
    if tower.height() == 0 {
        return factor_rational(p);
    }
    assert!(tower.height() == 1 && tower.top_is_irreducible(), "number field required");
    let a = tower.generator();
    let mut out = Vec::new();
    for (g, mult) in p.lift_to(&tower).squarefree_decomposition()? {
        if g.degree() == Some(1) {
            out.push((g, mult));
            continue;
        }
        for s in 0i64.. {
            let shift = &a * &FieldElem::from(s);
            let gs = g.translate(&(-&shift));
            let nrm = poly_norm(&gs, &tower);
            let sq = UniPoly::gcd(&nrm, &nrm.derivative())?;
            if sq.degree() != Some(0) {
                continue;
            }
            for (ni, _) in factor_rational(&nrm)? {
                let h = UniPoly::gcd(&gs, &ni.lift_to(&tower))?;
                if h.degree().unwrap_or(0) > 0 {
                    out.push((h.translate(&shift).monic()?, mult));
                }
            }
            break;
        }
    }
    out.sort_by_key(|(f, m)| (f.degree(), *m));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn norm_of_quadratic_element() {
        let t = Tower::rationals().extend(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let e = &t.generator() + &FieldElem::from(3);
        // (3 + r)(3 - r) = 7
        assert_eq!(norm(&e, &t), int(7));
    }

    #[test]
    fn cube_roots_of_unity_split_over_eisenstein_field() {
        let t = Tower::rationals().extend(&UniPoly::from_ints(&[1, 1, 1])).unwrap();
        assert!(t.top_is_irreducible());
        let p = UniPoly::from_ints(&[1, 1, 1]).lift_to(&t);
        let f = factor_over_number_field(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, _)| g.degree() == Some(1)));
        let w = t.generator();
        assert!(f.iter().any(|(g, _)| g.eval(&w).is_zero()));
    }

    #[test]
    fn irreducible_stays_irreducible() {
        let t = Tower::rationals().extend(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let p = UniPoly::from_ints(&[-3, 0, 1]).lift_to(&t);
        let f = factor_over_number_field(&p).unwrap();
        assert_eq!(f.len(), 1);
        let q = UniPoly::new(vec![FieldElem::from(rat(-1, 2)), FieldElem::zero(), FieldElem::one()]).lift_to(&t);
        // z^2 - 1/2 = (z - r/2)(z + r/2)
        assert_eq!(factor_over_number_field(&q).unwrap().len(), 2);
    }
}
