//! Truncated power series with explicit precision tracking.

use crate::exactnum::rational::rational_nth_root;
use crate::exactnum::{FieldElem, Rational, UniPoly};

use super::bipoly::BiPoly;
use super::SeriesError;

/// `poly + O(m^prec)`, or an exact polynomial when `prec` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    pub poly: BiPoly,
    pub prec: Option<u32>,
}

fn min_prec(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_prec(a: Option<u32>, k: Option<u32>) -> Option<u32> {
    match (a, k) {
        (Some(x), Some(y)) => Some(x.saturating_add(y)),
        _ => None,
    }
}

impl TruncSeries {
    pub fn exact(poly: BiPoly) -> Self {
        TruncSeries { poly, prec: None }
    }

    pub fn new(poly: BiPoly, prec: u32) -> Self {
        TruncSeries { poly: poly.truncate(prec), prec: Some(prec) }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Certified lower bound for the order; `None` means the exact zero.
    pub fn order_bound(&self) -> Option<u32> {
        min_prec(self.poly.mult_order(), self.prec)
    }

    fn normalised(poly: BiPoly, prec: Option<u32>) -> Self {
        match prec {
            Some(n) => TruncSeries::new(poly, n),
            None => TruncSeries::exact(poly),
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        TruncSeries::normalised(&self.poly + &other.poly, min_prec(self.prec, other.prec))
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        TruncSeries::normalised(&self.poly - &other.poly, min_prec(self.prec, other.prec))
    }

    /// Product with precision `min(N_a + ord b, N_b + ord a)`.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let prec = min_prec(add_prec(self.prec, other.order_bound()), add_prec(other.prec, self.order_bound()));
        // An exact zero factor makes the product exactly zero.
        if (self.is_exact() && self.poly.is_zero()) || (other.is_exact() && other.poly.is_zero()) {
            return TruncSeries::exact(BiPoly::zero());
        }
        let prod = match prec {
            Some(n) => &self.poly.truncate(n) * &other.poly.truncate(n),
            None => &self.poly * &other.poly,
        };
        TruncSeries::normalised(prod, prec)
    }
}

/// Inverse of a unit of `k[[x, y]]` modulo `m^n`.
pub fn unit_inverse(u: &BiPoly, n: u32) -> Result<TruncSeries, SeriesError> {
    let c0 = u.coeff(0, 0);
    if !c0.is_nonzero_checked()? {
        return Err(SeriesError::NotAUnit);
    }
    let c0i = c0.inv()?;
    let parts: Vec<BiPoly> = (0..n).map(|k| u.homogeneous_part(k)).collect();
    let mut s: Vec<BiPoly> = Vec::with_capacity(n as usize);
    s.push(BiPoly::constant(c0i.clone()));
    for k in 1..n as usize {
        let mut acc = BiPoly::zero();
        for j in 1..=k {
            acc = &acc + &(&parts[j] * &s[k - j]);
        }
        s.push(acc.scale(&-&c0i));
    }
    let poly = s.iter().fold(BiPoly::zero(), |a, b| &a + b);
    Ok(TruncSeries::new(poly, n))
}

/// A `d`-th root of `c` in its own field, when one exists there.
pub fn nth_root(c: &FieldElem, d: u32) -> Result<FieldElem, SeriesError> {
    if c.is_one() || d == 1 {
        return Ok(c.clone());
    }
    let q = c.as_rational().ok_or(SeriesError::RootNotInField)?;
    let r = rational_nth_root(&q, d).ok_or(SeriesError::RootNotInField)?;
    Ok(FieldElem::rational_in(c.tower(), &r))
}

/// Solution `s` of `s^d = c` for a nonzero integer `d`.
fn signed_root(c: &FieldElem, d: i32) -> Result<FieldElem, SeriesError> {
    if d == 0 {
        return Err(SeriesError::ZeroExponent);
    }
    let base = if d > 0 { c.clone() } else { c.inv()? };
    nth_root(&base, d.unsigned_abs())
}

/// `a·b mod x^n` for univariate series.
pub fn mul_trunc(a: &UniPoly, b: &UniPoly, n: usize) -> UniPoly {
    let mut out = vec![FieldElem::zero(); n];
    for (i, x) in a.coeffs().iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs().iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    UniPoly::new(out)
}

pub fn truncate_uni(a: &UniPoly, n: usize) -> UniPoly {
    UniPoly::new(a.coeffs().iter().take(n).cloned().collect())
}

/// Inverse of a univariate unit modulo `x^n`.
pub fn inv_trunc(a: &UniPoly, n: usize) -> Result<UniPoly, SeriesError> {
    let a0 = a.coeff(0);
    if !a0.is_nonzero_checked()? {
        return Err(SeriesError::NotAUnit);
    }
    let a0i = a0.inv()?;
    let mut s: Vec<FieldElem> = vec![a0i.clone()];
    for k in 1..n {
        let mut acc = FieldElem::zero();
        for j in 1..=k.min(a.coeffs().len().saturating_sub(1)) {
            acc = &acc + &(&a.coeff(j) * &s[k - j]);
        }
        s.push(-(&acc * &a0i));
    }
    Ok(UniPoly::new(s))
}

/// `a^k mod x^n` for an integer `k`; negative powers need a unit.
pub fn pow_trunc(a: &UniPoly, k: i32, n: usize) -> Result<UniPoly, SeriesError> {
    let base = if k >= 0 { truncate_uni(a, n) } else { inv_trunc(a, n)? };
    let mut acc = truncate_uni(&UniPoly::one(), n);
    for _ in 0..k.unsigned_abs() {
        acc = mul_trunc(&acc, &base, n);
    }
    Ok(acc)
}

/// `u(w) mod x^n` where `w(0) = 0`.
pub fn compose_trunc(u: &UniPoly, w: &UniPoly, n: usize) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in u.coeffs().iter().rev() {
        acc = &mul_trunc(&acc, w, n) + &UniPoly::constant(c.clone());
    }
    truncate_uni(&acc, n)
}

/// `r` with `r^d = u mod x^n` for a unit `u` and nonzero integer `d`.
pub fn unit_root(u: &UniPoly, d: i32, n: u32) -> Result<UniPoly, SeriesError> {
    let n = n as usize;
    let c0 = u.coeff(0);
    if !c0.is_nonzero_checked()? {
        return Err(SeriesError::NotAUnit);
    }
    let r0 = signed_root(&c0, d)?;
    let v = u.scale(&c0.inv()?);
    // r = v^a with a = 1/d, via n r_n = Σ ((a+1)k - n) v_k r_{n-k}.
    let a = Rational::new(1.into(), d.into());
    let mut r: Vec<FieldElem> = vec![FieldElem::one()];
    for m in 1..n {
        let mut acc = FieldElem::zero();
        for k in 1..=m {
            let vk = v.coeff(k);
            if vk.is_zero() {
                continue;
            }
            let w = (&a + Rational::from_integer(1.into())) * Rational::from_integer((k as i64).into())
                - Rational::from_integer((m as i64).into());
            acc = &acc + &(&(&FieldElem::from(w) * &vk) * &r[m - k]);
        }
        r.push(&acc * &FieldElem::from(Rational::new(1.into(), (m as i64).into())));
    }
    Ok(UniPoly::new(r).scale(&r0))
}

/// The unit `v` with `v^d · u(x·v^e) = 1 mod x^n`, built order by order.
pub fn scaling_solve(u: &UniPoly, d: i32, e: i32, n: u32) -> Result<UniPoly, SeriesError> {
    let n = n as usize;
    let a0 = u.coeff(0);
    if !a0.is_nonzero_checked()? {
        return Err(SeriesError::NotAUnit);
    }
    let s0 = signed_root(&a0.inv()?, d)?;
    let factor = -&(&s0 * &FieldElem::from(Rational::new(1.into(), d.into())));
    let mut v = UniPoly::constant(s0);
    let x = UniPoly::var();
    for k in 1..n {
        let m = k + 1;
        let vd = pow_trunc(&v, d, m)?;
        let inner = mul_trunc(&x, &pow_trunc(&v, e, m)?, m);
        let p = mul_trunc(&vd, &compose_trunc(u, &inner, m), m);
        let sk = &factor * &p.coeff(k);
        v = &v + &UniPoly::monomial(sk, k);
    }
    Ok(v)
}

/// Composition `p(sx, sy)` with certified precision.
pub fn substitute(p: &TruncSeries, sx: &TruncSeries, sy: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let mut tail = None;
    if let Some(np) = p.prec {
        let ox = sx.order_bound();
        let oy = sy.order_bound();
        if ox == Some(0) || oy == Some(0) {
            return Err(SeriesError::OrderViolation);
        }
        let m = match (ox, oy) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        tail = m.map(|m| np.saturating_mul(m));
        if m.is_none() {
            // Both substituted series are exactly zero.
            tail = None;
        }
    }
    let mut acc = TruncSeries::exact(BiPoly::zero());
    for (&(i, j), c) in p.poly.terms() {
        let mut t = TruncSeries::exact(BiPoly::constant(c.clone()));
        for _ in 0..i {
            t = t.mul(sx);
        }
        for _ in 0..j {
            t = t.mul(sy);
        }
        acc = acc.add(&t);
    }
    let prec = min_prec(acc.prec, tail);
    Ok(TruncSeries::normalised(acc.poly, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::from(rat(n, d))
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let u = &BiPoly::one() - &BiPoly::x();
        let s = unit_inverse(&u, 4).unwrap();
        let expect = BiPoly::from_terms((0..4).map(|i| ((i, 0), FieldElem::one())));
        assert_eq!(s.poly, expect);
        assert_eq!(s.prec, Some(4));
    }

    #[test]
    fn non_unit_is_rejected() {
        assert!(matches!(unit_inverse(&BiPoly::x(), 3), Err(SeriesError::NotAUnit)));
    }

    #[test]
    fn square_roots() {
        let r = unit_root(&UniPoly::from_ints(&[4]), 2, 3).unwrap();
        assert_eq!(r, UniPoly::from_ints(&[2]));
        let s = unit_root(&UniPoly::from_ints(&[1, 1]), 2, 3).unwrap();
        assert_eq!(s, UniPoly::new(vec![q(1, 1), q(1, 2), q(-1, 8)]));
        assert!(matches!(unit_root(&UniPoly::from_ints(&[2]), 2, 3), Err(SeriesError::RootNotInField)));
    }

    #[test]
    fn scaling_solution_example() {
        let v = scaling_solve(&UniPoly::from_ints(&[1, 1]), 1, 1, 3).unwrap();
        assert_eq!(v, UniPoly::from_ints(&[1, -1, 2]));
    }

    #[test]
    fn substitution_into_cusp_vanishes() {
        let f = &BiPoly::term(1, 0, 3) + &BiPoly::term(1, 2, 0);
        let sx = TruncSeries::exact(BiPoly::term(1, 3, 0));
        let sy = TruncSeries::exact(BiPoly::term(-1, 2, 0));
        let r = substitute(&TruncSeries::exact(f), &sx, &sy).unwrap();
        assert!(r.poly.is_zero());
        assert!(r.is_exact());
    }

    #[test]
    fn truncated_substitution_needs_positive_order() {
        let p = TruncSeries::new(&BiPoly::x() + &BiPoly::y(), 3);
        let bad = TruncSeries::exact(&BiPoly::one() + &BiPoly::x());
        assert!(matches!(substitute(&p, &bad, &bad), Err(SeriesError::OrderViolation)));
        let good = TruncSeries::exact(BiPoly::term(1, 2, 0));
        let r = substitute(&p, &good, &good).unwrap();
        assert_eq!(r.prec, Some(6));
    }

    #[test]
    fn product_precision_rule() {
        let a = TruncSeries::new(BiPoly::x(), 3);
        let b = TruncSeries::new(BiPoly::term(1, 2, 0), 5);
        assert_eq!(a.mul(&b).prec, Some(5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn inverse_times_unit_is_one(cs in proptest::collection::vec(-5i64..=5, 5), n in 1u32..7) {
            let mut u = BiPoly::one();
            for (k, c) in cs.iter().enumerate() {
                u = &u + &BiPoly::term(*c, (k % 3) as u32, (k / 3 + k % 2) as u32);
            }
            prop_assume!(!u.coeff(0, 0).is_zero());
            let s = unit_inverse(&u, n).unwrap();
            let prod = (&u * &s.poly).truncate(n);
            prop_assert_eq!(prod, BiPoly::one());
        }

        #[test]
        fn roots_power_back(cs in proptest::collection::vec(-4i64..=4, 1..5), d in prop_oneof![-3i32..=-1, 1i32..=3]) {
            let mut v = vec![1i64];
            v.extend(cs);
            let u = UniPoly::from_ints(&v);
            let n = 6usize;
            let r = unit_root(&u, d, n as u32).unwrap();
            prop_assert_eq!(pow_trunc(&r, d, n).unwrap(), truncate_uni(&u, n));
        }
    }
}
