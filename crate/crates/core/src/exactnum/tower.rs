//! Towers of simple algebraic extensions of Q with dynamic evaluation.
//!
//! A tower of height `h` is a chain `Q = K_0 ⊂ K_1 ⊂ … ⊂ K_h` where
//! `K_{i+1} = K_i[a_i]/(m_i)` and `m_i` is monic and squarefree over `K_i`.
//! The relations need not be irreducible: when an inversion meets a zero
//! divisor the computation reports a [`SplitEvent`] carrying a factorisation
//! of the offending relation, and the caller re-runs on each factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};
use super::unipoly::UniPoly;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Rat(Rational),
    /// Coefficients in the level below, lowest first, trimmed.
    Ext(Vec<Repr>),
}

#[derive(Debug)]
pub(crate) struct Level {
    /// Monic relation, coefficients at the height of this level.
    pub(crate) minpoly: Vec<Repr>,
    pub(crate) irreducible: bool,
    pub(crate) name: String,
}

impl Level {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// Zero-divisor report: relation `level` factors as `factors` (each monic,
/// coefficients in the tower of height `level`).
#[derive(Clone, Debug)]
pub struct SplitEvent {
    pub level: usize,
    pub factors: Vec<UniPoly>,
}

#[derive(Clone, Copy)]
pub(crate) struct Arith<'a> {
    pub(crate) levels: &'a [Arc<Level>],
}

impl<'a> Arith<'a> {
    pub(crate) fn new(levels: &'a [Arc<Level>]) -> Self {
        Arith { levels }
    }

    fn height(&self) -> usize {
        self.levels.len()
    }

    fn below(&self) -> Arith<'a> {
        Arith { levels: &self.levels[..self.levels.len() - 1] }
    }

    fn top(&self) -> &'a Level {
        &self.levels[self.levels.len() - 1]
    }

    pub(crate) fn zero(&self) -> Repr {
        if self.levels.is_empty() {
            Repr::Rat(Rational::zero())
        } else {
            Repr::Ext(Vec::new())
        }
    }

    pub(crate) fn one(&self) -> Repr {
        self.from_rat(&Rational::one())
    }

    pub(crate) fn from_rat(&self, q: &Rational) -> Repr {
        if self.levels.is_empty() {
            Repr::Rat(q.clone())
        } else if q.is_zero() {
            Repr::Ext(Vec::new())
        } else {
            Repr::Ext(vec![self.below().from_rat(q)])
        }
    }

    pub(crate) fn is_zero(a: &Repr) -> bool {
        match a {
            Repr::Rat(q) => q.is_zero(),
            Repr::Ext(v) => v.is_empty(),
        }
    }

    pub(crate) fn add(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            (Repr::Ext(u), Repr::Ext(v)) => Repr::Ext(self.below().padd(u, v)),
            _ => unreachable!("mismatched heights"),
        }
    }

    pub(crate) fn neg(&self, a: &Repr) -> Repr {
        match a {
            Repr::Rat(x) => Repr::Rat(-x),
            Repr::Ext(u) => {
                let b = self.below();
                Repr::Ext(u.iter().map(|c| b.neg(c)).collect())
            }
        }
    }

    pub(crate) fn sub(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x - y),
            (Repr::Ext(u), Repr::Ext(v)) => Repr::Ext(self.below().psub(u, v)),
            _ => unreachable!("mismatched heights"),
        }
    }

    pub(crate) fn mul(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            (Repr::Ext(u), Repr::Ext(v)) => {
                if u.is_empty() || v.is_empty() {
                    return Repr::Ext(Vec::new());
                }
                let p = self.below().pmul(u, v);
                self.reduce(p)
            }
            _ => unreachable!("mismatched heights"),
        }
    }

    /// Reduces a polynomial in the top generator modulo its relation.
    pub(crate) fn reduce(&self, v: Vec<Repr>) -> Repr {
        let b = self.below();
        Repr::Ext(b.prem_monic(v, &self.top().minpoly))
    }

    pub(crate) fn inv(&self, a: &Repr) -> Result<Repr, ExactError> {
        match a {
            Repr::Rat(x) => {
                if x.is_zero() {
                    Err(ExactError::DivisionByZero)
                } else {
                    Ok(Repr::Rat(x.recip()))
                }
            }
            Repr::Ext(u) => {
                if u.is_empty() {
                    return Err(ExactError::DivisionByZero);
                }
                let b = self.below();
                let m = &self.top().minpoly;
                let (g, s) = b.pxgcd(u, m)?;
                if g.len() == 1 {
                    return Ok(self.reduce(s));
                }
                let (cofactor, _) = b.pdivrem(m, &g)?;
                let tower = Tower::from_levels(b.levels.to_vec());
                let factors = [g, cofactor]
                    .into_iter()
                    .map(|p| UniPoly::from_reprs(&tower, p))
                    .collect();
                Err(ExactError::Split(SplitEvent { level: self.height() - 1, factors }))
            }
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.degree()).product()
    }

    pub(crate) fn flatten(&self, a: &Repr, out: &mut Vec<Rational>) {
        match a {
            Repr::Rat(q) => out.push(q.clone()),
            Repr::Ext(v) => {
                let b = self.below();
                let zero = b.zero();
                for i in 0..self.top().degree() {
                    b.flatten(v.get(i).unwrap_or(&zero), out);
                }
            }
        }
    }

    pub(crate) fn unflatten(&self, coords: &[Rational]) -> Repr {
        if self.levels.is_empty() {
            return Repr::Rat(coords[0].clone());
        }
        let b = self.below();
        let step = b.dim();
        let mut v: Vec<Repr> = coords.chunks(step).map(|c| b.unflatten(c)).collect();
        b.ptrim(&mut v);
        Repr::Ext(v)
    }

    // Dense univariate polynomials with coefficients at this height.

    pub(crate) fn ptrim(&self, v: &mut Vec<Repr>) {
        while v.last().is_some_and(Arith::is_zero) {
            v.pop();
        }
    }

    pub(crate) fn padd(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        let n = a.len().max(b.len());
        let zero = self.zero();
        let mut out: Vec<Repr> = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.ptrim(&mut out);
        out
    }

    pub(crate) fn psub(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        let n = a.len().max(b.len());
        let zero = self.zero();
        let mut out: Vec<Repr> = (0..n)
            .map(|i| self.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.ptrim(&mut out);
        out
    }

    pub(crate) fn pmul(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if Arith::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if Arith::is_zero(y) {
                    continue;
                }
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        self.ptrim(&mut out);
        out
    }

    pub(crate) fn pscale(&self, c: &Repr, a: &[Repr]) -> Vec<Repr> {
        let mut out: Vec<Repr> = a.iter().map(|x| self.mul(c, x)).collect();
        self.ptrim(&mut out);
        out
    }

    /// Remainder modulo a monic polynomial; never inverts anything.
    pub(crate) fn prem_monic(&self, mut a: Vec<Repr>, m: &[Repr]) -> Vec<Repr> {
        let d = m.len() - 1;
        self.ptrim(&mut a);
        while a.len() > d {
            let c = a.pop().expect("non-empty");
            let n = a.len();
            if !Arith::is_zero(&c) {
                for i in 0..d {
                    let t = self.mul(&c, &m[i]);
                    a[n - d + i] = self.sub(&a[n - d + i], &t);
                }
            }
            self.ptrim(&mut a);
        }
        a
    }

    pub(crate) fn pdivrem(&self, a: &[Repr], b: &[Repr]) -> Result<(Vec<Repr>, Vec<Repr>), ExactError> {
        if b.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = self.inv(b.last().expect("non-empty"))?;
        let db = b.len() - 1;
        let mut r = a.to_vec();
        self.ptrim(&mut r);
        if r.len() < b.len() {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let c = self.mul(r.last().expect("non-empty"), &inv);
            let shift = r.len() - 1 - db;
            for i in 0..db {
                let t = self.mul(&c, &b[i]);
                r[shift + i] = self.sub(&r[shift + i], &t);
            }
            r.pop();
            q[shift] = c;
            self.ptrim(&mut r);
        }
        self.ptrim(&mut q);
        Ok((q, r))
    }

    pub(crate) fn pmonic(&self, a: &[Repr]) -> Result<Vec<Repr>, ExactError> {
        let Some(lc) = a.last() else {
            return Ok(Vec::new());
        };
        let inv = self.inv(lc)?;
        let mut out = self.pscale(&inv, a);
        // Force an exact leading one.
        if let Some(last) = out.last_mut() {
            *last = self.one();
        }
        Ok(out)
    }

    /// Monic `g = gcd(a, b)` together with `s` such that `s·a ≡ g (mod b)`.
    pub(crate) fn pxgcd(&self, a: &[Repr], b: &[Repr]) -> Result<(Vec<Repr>, Vec<Repr>), ExactError> {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        self.ptrim(&mut r0);
        self.ptrim(&mut r1);
        let mut s0 = vec![self.one()];
        let mut s1: Vec<Repr> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(&r0, &r1)?;
            let s2 = self.psub(&s0, &self.pmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.is_empty() {
            return Ok((r0, s0));
        }
        let inv = self.inv(r0.last().expect("non-empty"))?;
        let g = self.pmonic(&r0)?;
        let s = self.pscale(&inv, &s0);
        Ok((g, s))
    }

    fn fmt_repr(&self, a: &Repr) -> String {
        match a {
            Repr::Rat(q) => fmt_rational(q),
            Repr::Ext(v) => {
                if v.is_empty() {
                    return "0".into();
                }
                let b = self.below();
                let name = &self.top().name;
                let mut parts = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if Arith::is_zero(c) {
                        continue;
                    }
                    let cs = b.fmt_repr(c);
                    let simple = matches!(c, Repr::Rat(_)) || matches!(c, Repr::Ext(w) if w.len() == 1);
                    let cs = if simple { cs } else { format!("({cs})") };
                    let mono = match i {
                        0 => String::new(),
                        1 => name.clone(),
                        _ => format!("{name}^{i}"),
                    };
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
    }
}

fn lift_repr(levels: &[Arc<Level>], from: usize, mut r: Repr) -> Repr {
    for _ in from..levels.len() {
        r = if Arith::is_zero(&r) { Repr::Ext(Vec::new()) } else { Repr::Ext(vec![r]) };
    }
    r
}

/// A tower of simple extensions over Q; cheap to clone.
#[derive(Clone)]
pub struct Tower {
    levels: Arc<[Arc<Level>]>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower{:?}", self.degrees())
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.levels.len() == other.levels.len() && self.is_prefix_of(other)
    }
}

impl Tower {
    pub fn rationals() -> Self {
        Tower { levels: Arc::from(Vec::new()) }
    }

    pub(crate) fn from_levels(levels: Vec<Arc<Level>>) -> Self {
        Tower { levels: Arc::from(levels) }
    }

    pub(crate) fn arith(&self) -> Arith<'_> {
        Arith::new(&self.levels)
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Dimension over Q.
    pub fn degree(&self) -> usize {
        self.arith().dim()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree()).collect()
    }

    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(other.levels.iter()).all(|(a, b)| Arc::ptr_eq(a, b))
    }

    /// Product of the relation degrees above `base`.
    pub fn degree_over(&self, base: &Tower) -> usize {
        debug_assert!(base.is_prefix_of(self));
        self.levels[base.height()..].iter().map(|l| l.degree()).product()
    }

    pub fn prefix(&self, h: usize) -> Tower {
        Tower::from_levels(self.levels[..h].to_vec())
    }

    pub fn top_is_irreducible(&self) -> bool {
        self.levels.last().is_some_and(|l| l.irreducible)
    }

    /// Relation of level `i` as a polynomial over the prefix of height `i`.
    pub fn relation(&self, i: usize) -> UniPoly {
        UniPoly::from_reprs(&self.prefix(i), self.levels[i].minpoly.clone())
    }

    /// Adjoins a root of a squarefree polynomial of degree at least two.
    pub fn extend(&self, minpoly: &UniPoly) -> Result<Tower, ExactError> {
        let p = minpoly.lift_to(self);
        match p.degree() {
            Some(d) if d >= 2 => {}
            _ => return Err(ExactError::DegreeTooLow),
        }
        let p = p.monic()?;
        let g = UniPoly::gcd(&p, &p.derivative())?;
        if g.degree() != Some(0) {
            return Err(ExactError::NonSquarefreeMinpoly);
        }
        let irreducible = if self.height() == 0 {
            let f = super::factor::factor_rational(&p)?;
            f.len() == 1 && f[0].1 == 1
        } else if self.height() == 1 && self.top_is_irreducible() {
            let f = super::trager::factor_over_number_field(&p)?;
            f.len() == 1 && f[0].1 == 1
        } else {
            false
        };
        Ok(self.extend_unchecked(&p, irreducible))
    }

    /// Adjoins a root of the monic squarefree `p` without further checks.
    pub(crate) fn extend_unchecked(&self, p: &UniPoly, irreducible: bool) -> Tower {
        let minpoly = p.lift_to(self).reprs(self);
        let mut levels = self.levels.to_vec();
        levels.push(Arc::new(Level { minpoly, irreducible, name: format!("a{}", self.height()) }));
        Tower::from_levels(levels)
    }

    /// The generator of the top level.
    pub fn generator(&self) -> FieldElem {
        assert!(self.height() > 0, "Q has no generator");
        let b = Arith::new(&self.levels[..self.height() - 1]);
        FieldElem { tower: self.clone(), repr: Repr::Ext(vec![b.zero(), b.one()]) }
    }

    /// Replaces relation `level` by its monic factor `factor` and rebuilds
    /// the levels above it.
    pub fn split_at(&self, level: usize, factor: &UniPoly) -> Tower {
        let base = self.prefix(level);
        let mut levels = base.levels.to_vec();
        levels.push(Arc::new(Level {
            minpoly: factor.lift_to(&base).reprs(&base),
            irreducible: false,
            name: self.levels[level].name.clone(),
        }));
        for h in level + 1..self.height() {
            let old = &self.levels[h];
            let minpoly = old
                .minpoly
                .iter()
                .map(|c| specialize_repr(&self.levels[..h], &levels, level, c))
                .collect::<Vec<_>>();
            let mut minpoly = minpoly;
            Arith::new(&levels).ptrim(&mut minpoly);
            levels.push(Arc::new(Level { minpoly, irreducible: false, name: old.name.clone() }));
        }
        Tower::from_levels(levels)
    }

    /// Image of `a` (from `self`) in a tower produced by [`Tower::split_at`].
    pub fn specialize(&self, target: &Tower, level: usize, a: &FieldElem) -> FieldElem {
        let a = a.lift_to(self);
        FieldElem { tower: target.clone(), repr: specialize_repr(&self.levels, &target.levels, level, &a.repr) }
    }
}

fn specialize_repr(old: &[Arc<Level>], new: &[Arc<Level>], level: usize, a: &Repr) -> Repr {
    let h = old.len();
    if h <= level {
        return a.clone();
    }
    let Repr::Ext(v) = a else { unreachable!("height mismatch") };
    let coeffs: Vec<Repr> = if h == level + 1 {
        v.clone()
    } else {
        v.iter().map(|c| specialize_repr(&old[..h - 1], &new[..h - 1], level, c)).collect()
    };
    Arith::new(&new[..h]).reduce(coeffs)
}

/// Element of a tower.
#[derive(Clone)]
pub struct FieldElem {
    tower: Tower,
    repr: Repr,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.arith().fmt_repr(&self.repr))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.tower.is_prefix_of(&other.tower) {
            self.lift_to(&other.tower).repr == other.repr
        } else if other.tower.is_prefix_of(&self.tower) {
            other.lift_to(&self.tower).repr == self.repr
        } else {
            false
        }
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem { tower: Tower::rationals(), repr: Repr::Rat(q) }
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from(Rational::from_integer(n.into()))
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::from(0)
    }

    pub fn one() -> Self {
        FieldElem::from(1)
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElem::from(q)
    }

    pub fn zero_in(tower: &Tower) -> Self {
        FieldElem { tower: tower.clone(), repr: tower.arith().zero() }
    }

    pub fn rational_in(tower: &Tower, q: &Rational) -> Self {
        FieldElem { tower: tower.clone(), repr: tower.arith().from_rat(q) }
    }

    pub(crate) fn from_repr(tower: &Tower, repr: Repr) -> Self {
        FieldElem { tower: tower.clone(), repr }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Structural zero test.
    pub fn is_zero(&self) -> bool {
        Arith::is_zero(&self.repr)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// `Ok(true)` for units, `Ok(false)` for zero, a split for zero divisors.
    pub fn is_nonzero_checked(&self) -> Result<bool, ExactError> {
        if self.is_zero() {
            return Ok(false);
        }
        self.inv().map(|_| true)
    }

    pub fn inv(&self) -> Result<FieldElem, ExactError> {
        let r = self.tower.arith().inv(&self.repr)?;
        Ok(FieldElem { tower: self.tower.clone(), repr: r })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, ExactError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> FieldElem {
        let mut acc = FieldElem::rational_in(&self.tower, &Rational::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, inverting for negative exponents.
    pub fn powi(&self, n: i64) -> Result<FieldElem, ExactError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inv()?.pow((-n) as u32))
        }
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let mut r = &self.repr;
        loop {
            match r {
                Repr::Rat(q) => return Some(q.clone()),
                Repr::Ext(v) => match v.len() {
                    0 => return Some(Rational::zero()),
                    1 => r = &v[0],
                    _ => return None,
                },
            }
        }
    }

    pub fn lift_to(&self, tower: &Tower) -> FieldElem {
        if self.tower.height() == tower.height() {
            return FieldElem { tower: tower.clone(), repr: self.repr.clone() };
        }
        assert!(self.tower.is_prefix_of(tower), "lift to a tower that does not extend the element's tower");
        FieldElem { tower: tower.clone(), repr: lift_repr(&tower.levels, self.tower.height(), self.repr.clone()) }
    }

    /// Coordinates in the power basis of the tower over Q.
    pub fn to_rational_vector(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.tower.degree());
        self.tower.arith().flatten(&self.repr, &mut out);
        out
    }

    pub fn from_rational_vector(tower: &Tower, coords: &[Rational]) -> FieldElem {
        FieldElem { tower: tower.clone(), repr: tower.arith().unflatten(coords) }
    }

    fn binary(&self, other: &FieldElem, f: impl Fn(&Arith, &Repr, &Repr) -> Repr) -> FieldElem {
        let h1 = self.tower.height();
        let h2 = other.tower.height();
        if h1 >= h2 {
            let b = if h1 == h2 { other.repr.clone() } else { other.lift_to(&self.tower).repr };
            FieldElem { tower: self.tower.clone(), repr: f(&self.tower.arith(), &self.repr, &b) }
        } else {
            let a = self.lift_to(&other.tower).repr;
            FieldElem { tower: other.tower.clone(), repr: f(&other.tower.arith(), &a, &other.repr) }
        }
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.binary(rhs, |a, x, y| a.add(x, y))
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.binary(rhs, |a, x, y| a.sub(x, y))
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.binary(rhs, |a, x, y| a.mul(x, y))
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { tower: self.tower.clone(), repr: self.tower.arith().neg(&self.repr) }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem { (&self).$m(rhs) }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { self.$m(&rhs) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn sqrt2() -> Tower {
        Tower::rationals().extend(&UniPoly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let t = sqrt2();
        let a = t.generator();
        assert_eq!(&a * &a, FieldElem::from(2));
        let inv = a.inv().unwrap();
        assert_eq!(&inv * &a, FieldElem::one());
        assert_eq!(inv, &a * &FieldElem::from(rat(1, 2)));
    }

    #[test]
    fn nested_tower_arithmetic() {
        // b^2 = a with a^2 = 2, so b^4 = 2.
        let t1 = sqrt2();
        let a = t1.generator();
        let t2 = t1.extend(&UniPoly::new(vec![-a.clone(), FieldElem::zero(), FieldElem::one()])).unwrap();
        let b = t2.generator();
        assert_eq!(b.pow(4), FieldElem::from(2));
        let x = &b + &FieldElem::from(1);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, FieldElem::one());
        assert_eq!(t2.degree(), 4);
        assert_eq!(t2.degree_over(&t1), 2);
    }

    #[test]
    fn zero_divisor_reports_split() {
        // z^2 - 1 is squarefree but reducible: (a - 1)(a + 1) = 0.
        let t = Tower::rationals().extend(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert!(!t.top_is_irreducible());
        let a = t.generator();
        let z = &a - &FieldElem::one();
        match z.inv() {
            Err(ExactError::Split(s)) => {
                assert_eq!(s.level, 0);
                assert_eq!(s.factors.len(), 2);
                let prod = &s.factors[0] * &s.factors[1];
                assert_eq!(prod, UniPoly::from_ints(&[-1, 0, 1]));
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn extend_rejects_bad_relations() {
        let q = Tower::rationals();
        assert!(matches!(q.extend(&UniPoly::from_ints(&[1, 1])), Err(ExactError::DegreeTooLow)));
        assert!(matches!(q.extend(&UniPoly::from_ints(&[1, 2, 1])), Err(ExactError::NonSquarefreeMinpoly)));
    }

    #[test]
    fn split_specialises_elements() {
        let t = Tower::rationals().extend(&UniPoly::from_ints(&[0, -1, 0, 1])).unwrap(); // z^3 - z
        let a = t.generator();
        let f = UniPoly::from_ints(&[-1, 0, 1]);
        let s = t.split_at(0, &f);
        let img = t.specialize(&s, 0, &(&a * &a));
        assert_eq!(img, FieldElem::one());
        assert_eq!(s.degree(), 2);
    }

    #[test]
    fn rational_vectors_round_trip() {
        let t = sqrt2();
        let e = &t.generator() * &FieldElem::from(int(3)) + FieldElem::from(rat(1, 2));
        let v = e.to_rational_vector();
        assert_eq!(v, vec![rat(1, 2), int(3)]);
        assert_eq!(FieldElem::from_rational_vector(&t, &v), e);
    }
}
