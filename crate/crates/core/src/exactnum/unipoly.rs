//! Dense univariate polynomials over a tower.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::tower::{FieldElem, Repr, Tower};
use super::ExactError;

/// Coefficients lowest degree first, trailing zeros trimmed.
#[derive(Clone, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElem>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("z"))
    }
}

impl UniPoly {
    pub fn new(coeffs: Vec<FieldElem>) -> Self {
        let tower = common_tower(&coeffs);
        let mut coeffs: Vec<FieldElem> = coeffs.iter().map(|c| c.lift_to(&tower)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(qs: &[Rational]) -> Self {
        UniPoly::new(qs.iter().cloned().map(FieldElem::from).collect())
    }

    pub fn from_ints(ns: &[i64]) -> Self {
        UniPoly::new(ns.iter().map(|&n| FieldElem::from(n)).collect())
    }

    pub(crate) fn from_reprs(tower: &Tower, reprs: Vec<Repr>) -> Self {
        UniPoly::new(reprs.into_iter().map(|r| FieldElem::from_repr(tower, r)).collect())
    }

    pub(crate) fn reprs(&self, tower: &Tower) -> Vec<Repr> {
        self.coeffs.iter().map(|c| c.lift_to(tower).repr().clone()).collect()
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        UniPoly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    /// `c·z^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let mut v = vec![FieldElem::zero(); k];
        v.push(c);
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElem::zero_in(&self.tower()))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    /// Lowest index with a structurally nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn tower(&self) -> Tower {
        common_tower(&self.coeffs)
    }

    pub fn lift_to(&self, tower: &Tower) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.lift_to(tower)).collect() }
    }

    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FieldElem::zero_in(&self.tower()); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(v)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElem::from(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `p(z + c)`.
    pub fn translate(&self, c: &FieldElem) -> UniPoly {
        let lin = UniPoly::new(vec![c.clone(), FieldElem::one()]);
        let mut acc = UniPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(a.clone());
        }
        acc
    }

    /// `p(a·z)`.
    pub fn scale_var(&self, a: &FieldElem) -> UniPoly {
        let mut pw = FieldElem::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c * &pw);
            pw = &pw * a;
        }
        UniPoly::new(v)
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), ExactError> {
        let tower = common_tower(&[self.tower_elem(), d.tower_elem()]);
        let a = tower.arith();
        let (q, r) = a.pdivrem(&self.reprs(&tower), &d.reprs(&tower))?;
        Ok((UniPoly::from_reprs(&tower, q), UniPoly::from_reprs(&tower, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly, ExactError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Result<UniPoly, ExactError> {
        let tower = self.tower();
        let m = tower.arith().pmonic(&self.reprs(&tower))?;
        Ok(UniPoly::from_reprs(&tower, m))
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, ExactError> {
        let tower = common_tower(&[a.tower_elem(), b.tower_elem()]);
        let (g, _) = tower.arith().pxgcd(&a.reprs(&tower), &b.reprs(&tower))?;
        Ok(UniPoly::from_reprs(&tower, g))
    }

    /// Yun's algorithm: monic squarefree factors with multiplicities.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>, ExactError> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let a = self.monic()?;
        let da = a.derivative();
        let c = UniPoly::gcd(&a, &da)?;
        let mut w = a.divrem(&c)?.0;
        let mut y = da.divrem(&c)?.0;
        let mut z = &y - &w.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = UniPoly::gcd(&w, &z)?;
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.divrem(&g)?.0;
            y = z.divrem(&g)?.0;
            z = &y - &w.derivative();
            i += 1;
        }
        Ok(out)
    }

    fn tower_elem(&self) -> FieldElem {
        FieldElem::zero_in(&self.tower())
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            let cs = if c.as_rational().is_some() { cs } else { format!("({cs})") };
            parts.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn common_tower(cs: &[FieldElem]) -> Tower {
    cs.iter()
        .map(|c| c.tower())
        .max_by_key(|t| t.height())
        .cloned()
        .unwrap_or_else(Tower::rationals)
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let tower = common_tower(&[self.tower_elem(), rhs.tower_elem()]);
        let p = tower.arith().pmul(&self.reprs(&tower), &rhs.reprs(&tower));
        UniPoly::from_reprs(&tower, p)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = UniPoly::from_ints(&[1, 0, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = UniPoly::from_ints(&[-1, 1]); // z - 1
        let a = &f * &UniPoly::from_ints(&[2, 1]);
        let b = &f * &UniPoly::from_ints(&[3, 0, 1]);
        assert_eq!(UniPoly::gcd(&a, &b).unwrap(), f);
    }

    #[test]
    fn yun_multiplicities() {
        // (z-1)^3 (z+2)^2 z
        let p = &(&UniPoly::from_ints(&[-1, 1]).pow(3) * &UniPoly::from_ints(&[2, 1]).pow(2)) * &UniPoly::var();
        let sq = p.squarefree_decomposition().unwrap();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq[0], (UniPoly::from_ints(&[0, 1]), 1));
        assert_eq!(sq[1], (UniPoly::from_ints(&[2, 1]), 2));
        assert_eq!(sq[2], (UniPoly::from_ints(&[-1, 1]), 3));
    }

    #[test]
    fn translate_and_format() {
        let p = UniPoly::from_ints(&[0, 0, 1]).translate(&FieldElem::from(1));
        assert_eq!(p, UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(p.fmt_in("y"), "y^2 + 2*y + 1");
        assert_eq!(UniPoly::from_ints(&[-3, 0, -1]).fmt_in("y"), "-y^2 - 3");
    }
}
