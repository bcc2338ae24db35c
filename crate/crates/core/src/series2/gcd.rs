//! Bivariate gcd and exact division over Q, by primitive remainder sequences
//! in `Q[x][y]`.

use crate::exactnum::{ExactError, UniPoly};

use super::bipoly::BiPoly;

type Rows = Vec<UniPoly>;

fn trim(a: &mut Rows) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn content(a: &Rows) -> Result<UniPoly, ExactError> {
    let mut g = UniPoly::zero();
    for c in a {
        g = UniPoly::gcd(&g, c)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

fn divide_rows(a: &Rows, c: &UniPoly) -> Result<Rows, ExactError> {
    a.iter().map(|r| r.divrem(c).map(|(q, _)| q)).collect()
}

fn primitive(a: &Rows) -> Result<Rows, ExactError> {
    let c = content(a)?;
    if c.is_zero() {
        return Ok(Vec::new());
    }
    divide_rows(a, &c)
}

fn pseudo_rem(a: &Rows, b: &Rows) -> Rows {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > n {
        let d = r.len() - 1;
        let lr = r[d].clone();
        let shift = d - n;
        let mut next: Rows = r.iter().map(|c| c * lb).collect();
        for (i, bi) in b.iter().enumerate() {
            next[shift + i] = &next[shift + i] - &(bi * &lr);
        }
        next.pop();
        trim(&mut next);
        r = next;
    }
    r
}

fn to_rows(p: &BiPoly) -> Rows {
    let mut r = p.y_coefficients();
    trim(&mut r);
    r
}

/// Greatest common divisor of two polynomials with rational coefficients,
/// normalised to be monic in its leading `(y, x)` term.
pub fn bivariate_gcd(a: &BiPoly, b: &BiPoly) -> Result<BiPoly, ExactError> {
    if a.is_zero() {
        return normalise(b);
    }
    if b.is_zero() {
        return normalise(a);
    }
    let (ra, rb) = (to_rows(a), to_rows(b));
    let c = UniPoly::gcd(&content(&ra)?, &content(&rb)?)?;
    let mut p = primitive(&ra)?;
    let mut q = primitive(&rb)?;
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_empty() {
            break p;
        }
        if q.len() == 1 {
            break vec![UniPoly::one()];
        }
        let r = pseudo_rem(&p, &q);
        p = q;
        q = primitive(&r)?;
    };
    let g: Rows = g.iter().map(|r| r * &c).collect();
    normalise(&BiPoly::from_y_coefficients(&g))
}

fn normalise(p: &BiPoly) -> Result<BiPoly, ExactError> {
    let lead = p.terms().map(|(&(i, j), c)| ((j, i), c.clone())).max_by_key(|(k, _)| *k);
    match lead {
        None => Ok(BiPoly::zero()),
        Some((_, c)) => Ok(p.scale(&c.inv()?)),
    }
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn bivariate_div_exact(a: &BiPoly, b: &BiPoly) -> Result<Option<BiPoly>, ExactError> {
    let key = |p: &BiPoly| p.terms().map(|(&(i, j), c)| ((j, i), c.clone())).max_by_key(|(k, _)| *k);
    let Some(((bj, bi), bc)) = key(b) else {
        return Err(ExactError::DivisionByZero);
    };
    let bci = bc.inv()?;
    let mut r = a.clone();
    let mut q = BiPoly::zero();
    while let Some(((rj, ri), rc)) = key(&r) {
        if rj < bj || ri < bi {
            return Ok(None);
        }
        let t = BiPoly::monomial(&rc * &bci, ri - bi, rj - bj);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Ok(Some(q))
}

/// Whether `p` vanishes at the origin.
pub fn vanishes_at_origin(p: &BiPoly) -> bool {
    p.coeff(0, 0).is_zero()
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
    }

    #[test]
    fn common_branch_is_found() {
        let f = p(&[(1, 0, 1), (1, 2, 0)]); // y + x^2
        let a = &f * &p(&[(1, 0, 2), (1, 3, 0)]);
        let b = &f * &p(&[(1, 1, 0), (-1, 0, 1)]);
        assert_eq!(bivariate_gcd(&a, &b).unwrap(), f);
        assert_eq!(bivariate_div_exact(&a, &f).unwrap(), Some(p(&[(1, 0, 2), (1, 3, 0)])));
    }

    #[test]
    fn coprime_inputs_have_unit_gcd() {
        let a = p(&[(1, 0, 3), (1, 2, 0)]);
        let b = p(&[(1, 0, 2), (1, 5, 0)]);
        assert_eq!(bivariate_gcd(&a, &b).unwrap(), BiPoly::one());
        assert_eq!(bivariate_div_exact(&a, &b).unwrap(), None);
    }

    #[test]
    fn content_in_x_is_kept() {
        let a = p(&[(1, 1, 1), (1, 3, 0)]); // x(y + x^2)
        let b = p(&[(1, 1, 2), (1, 2, 0)]); // x(y^2 + x)
        assert_eq!(bivariate_gcd(&a, &b).unwrap(), BiPoly::x());
    }
}
