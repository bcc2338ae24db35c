//! Sparse bivariate polynomials in `x` and `y` over a tower.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::rational::{binomial, Rational};
use crate::exactnum::{ExactError, FieldElem, Tower, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Terms keyed by `(deg_x, deg_y)`; zero coefficients are never stored.
#[derive(Clone, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(other.terms.iter()).all(|((k1, c1), (k2, c2))| k1 == k2 && c1 == c2)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(FieldElem::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(FieldElem::one(), 0, 1)
    }

    pub fn monomial(c: FieldElem, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// `c·x^i·y^j` with an integer coefficient.
    pub fn term(c: i64, i: u32, j: u32) -> Self {
        BiPoly::monomial(FieldElem::from(c), i, j)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), FieldElem)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Polynomial in `x` only.
    pub fn from_x_poly(u: &UniPoly) -> Self {
        BiPoly::from_terms(u.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    /// Polynomial in `y` only.
    pub fn from_y_poly(u: &UniPoly) -> Self {
        BiPoly::from_terms(u.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tower(&self) -> Tower {
        self.terms
            .values()
            .map(|c| c.tower())
            .max_by_key(|t| t.height())
            .cloned()
            .unwrap_or_else(Tower::rationals)
    }

    pub fn lift_to(&self, tower: &Tower) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.lift_to(tower))).collect() }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).max()
    }

    /// Lowest total degree of a structurally nonzero term.
    pub fn mult_order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    /// Lowest degree carrying a unit coefficient; lower coefficients must be
    /// zero, and a zero-divisor coefficient reports a split.
    pub fn mult_order_checked(&self) -> Result<Option<u32>, ExactError> {
        let mut degs: Vec<u32> = self.terms.keys().map(|(i, j)| i + j).collect();
        degs.sort_unstable();
        degs.dedup();
        for d in degs {
            let mut any = false;
            for c in self.homogeneous_part(d).terms.values() {
                if c.is_nonzero_checked()? {
                    any = true;
                }
            }
            if any {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().filter(|((i, j), _)| i + j == d).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// Terms of total degree below `n`.
    pub fn truncate(&self, n: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().filter(|((i, j), _)| i + j < n).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, v: Var) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| {
            let (k, ni, nj) = match v {
                Var::X => (i, i.checked_sub(1)?, j),
                Var::Y => (j, i, j.checked_sub(1)?),
            };
            Some(((ni, nj), c * &FieldElem::from(k as i64)))
        }))
    }

    /// `F(x, 0)` as a polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly {
        let n = self.degree_in(Var::X).unwrap_or(0) as usize;
        let mut v = vec![FieldElem::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                v[i as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    /// `F(0, y)` as a polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly {
        let n = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let mut v = vec![FieldElem::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                v[j as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    /// Coefficients of `y^j` as polynomials in `x`.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let n = self.degree_in(Var::Y).map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<FieldElem>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, FieldElem::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coefficients(cs: &[UniPoly]) -> BiPoly {
        BiPoly::from_terms(cs.iter().enumerate().flat_map(|(j, u)| {
            u.coeffs().iter().enumerate().map(move |(i, c)| ((i as u32, j as u32), c.clone())).collect::<Vec<_>>()
        }))
    }

    /// Exact division by `x^k`; `None` when some term has lower `x`-degree.
    pub fn div_x_pow(&self, k: u32) -> Option<BiPoly> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| Some(((i.checked_sub(k)?, j), c.clone())))
            .collect::<Option<Vec<_>>>()
            .map(BiPoly::from_terms)
    }

    pub fn div_y_pow(&self, k: u32) -> Option<BiPoly> {
        self.swap().div_x_pow(k).map(|p| p.swap())
    }

    /// `F(y, x)`.
    pub fn swap(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// `F(x, x·y)`.
    pub fn blow_up_chart_x(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + j, j), c.clone())).collect() }
    }

    /// `F(x·y, y)`.
    pub fn blow_up_chart_y(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i, i + j), c.clone())).collect() }
    }

    /// `F(x, y + c)`.
    pub fn shift_y(&self, c: &FieldElem) -> BiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let maxj = self.degree_in(Var::Y).unwrap_or(0);
        let pows: Vec<FieldElem> = (0..=maxj).map(|k| c.pow(k)).collect();
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for k in 0..=j {
                let b = FieldElem::from(Rational::from_integer(binomial(j, k)));
                out.add_term(i, k, &(a * &b) * &pows[(j - k) as usize]);
            }
        }
        out
    }

    /// Exact composition `F(P, Q)`.
    pub fn compose(&self, px: &BiPoly, qy: &BiPoly) -> BiPoly {
        let maxi = self.degree_in(Var::X).unwrap_or(0);
        let maxj = self.degree_in(Var::Y).unwrap_or(0);
        let mut xp = vec![BiPoly::one()];
        for k in 0..maxi as usize {
            let next = &xp[k] * px;
            xp.push(next);
        }
        let mut yp = vec![BiPoly::one()];
        for k in 0..maxj as usize {
            let next = &yp[k] * qy;
            yp.push(next);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = &out + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    /// Renders in the input grammar, terms ordered by decreasing `y`-degree
    /// and then decreasing `x`-degree.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
        let mut out = String::new();
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let mut cs = c.to_string();
            let rational = c.as_rational().is_some();
            let negative = rational && cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = mono_text(k.0, k.1);
            if !rational {
                cs = format!("({cs})");
            }
            if mono.is_empty() {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{cs}*{mono}"));
            }
        }
        out
    }
}

pub(crate) fn mono_text(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let (a, b) = (part("x", i), part("y", j));
    match (a.is_empty(), b.is_empty()) {
        (true, true) => String::new(),
        (false, true) => a,
        (true, false) => b,
        (false, false) => format!("{a}*{b}"),
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! owned_bipoly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { (&self).$m(&rhs) }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly { (&self).$m(rhs) }
        }
    )*};
}

owned_bipoly_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> BiPoly {
        &BiPoly::term(1, 0, 3) + &BiPoly::term(1, 2, 0)
    }

    #[test]
    fn partials_and_orders() {
        let f = cusp();
        assert_eq!(f.partial(Var::X), BiPoly::term(2, 1, 0));
        assert_eq!(f.partial(Var::Y), BiPoly::term(3, 0, 2));
        assert_eq!(f.mult_order(), Some(2));
        assert_eq!(f.to_text(), "y^3 + x^2");
    }

    #[test]
    fn blow_up_charts() {
        let f = cusp();
        // y = x·y1: x^3 y1^3 + x^2
        let g = f.blow_up_chart_x().div_x_pow(2).unwrap();
        assert_eq!(g, &BiPoly::term(1, 1, 3) + &BiPoly::term(1, 0, 0));
        let h = f.blow_up_chart_y().div_y_pow(2).unwrap();
        assert_eq!(h, &BiPoly::term(1, 0, 1) + &BiPoly::term(1, 2, 0));
    }

    #[test]
    fn shift_and_compose_agree() {
        let f = &cusp() + &BiPoly::term(-3, 1, 1);
        let c = FieldElem::from(2);
        let via_compose = f.compose(&BiPoly::x(), &(&BiPoly::y() + &BiPoly::constant(c.clone())));
        assert_eq!(f.shift_y(&c), via_compose);
    }

    #[test]
    fn printing_signs() {
        let f = &BiPoly::term(-1, 0, 2) + &BiPoly::monomial(FieldElem::from(crate::exactnum::rat(1, 2)), 3, 1);
        assert_eq!(f.to_text(), "-y^2 + 1/2*x^3*y");
    }
}
