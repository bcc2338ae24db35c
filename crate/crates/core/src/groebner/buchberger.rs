//! Sparse distributed polynomials and Buchberger's algorithm with the sugar
//! selection strategy and the product and chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::exactnum::{ExactError, FieldElem};
use crate::series2::BiPoly;

use super::order::{self, Mono, MonomialOrder};

/// Terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GPoly {
    pub(crate) terms: Vec<(Mono, FieldElem)>,
}

impl GPoly {
    pub(crate) fn from_bipoly(p: &BiPoly, ord: &MonomialOrder) -> GPoly {
        GPoly::from_terms(p.terms().map(|(&(i, j), c)| ([i, j, 0], c.clone())).collect(), ord)
    }

    pub(crate) fn from_terms(mut terms: Vec<(Mono, FieldElem)>, ord: &MonomialOrder) -> GPoly {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, FieldElem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        GPoly { terms: out }
    }

    pub(crate) fn to_bipoly(&self) -> BiPoly {
        debug_assert!(self.terms.iter().all(|(m, _)| m[2] == 0));
        BiPoly::from_terms(self.terms.iter().map(|(m, c)| ((m[0], m[1]), c.clone())))
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &FieldElem {
        &self.terms[0].1
    }

    pub(crate) fn monic(&self) -> Result<GPoly, ExactError> {
        if self.is_zero() || self.lc().is_one() {
            return Ok(self.clone());
        }
        let inv = self.lc().inv()?;
        let mut terms: Vec<(Mono, FieldElem)> = self.terms.iter().map(|(m, c)| (*m, c * &inv)).collect();
        terms[0].1 = FieldElem::one();
        Ok(GPoly { terms })
    }

    /// `self - c·m·other`.
    pub(crate) fn sub_scaled(&self, c: &FieldElem, m: &Mono, other: &GPoly, ord: &MonomialOrder) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| order::mul(&other.terms[k].0, m);
        while i < self.terms.len() || j < other.terms.len() {
            if j >= other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let mj = shifted(j);
            if i >= self.terms.len() {
                out.push((mj, -&(c * &other.terms[j].1)));
                j += 1;
                continue;
            }
            match ord.cmp(&self.terms[i].0, &mj) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mj, -&(c * &other.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - &(c * &other.terms[j].1);
                    if !v.is_zero() {
                        out.push((mj, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GPoly { terms: out }
    }

    fn sugar(&self) -> u32 {
        self.terms.iter().map(|(m, _)| order::degree(m)).max().unwrap_or(0)
    }
}

/// Full reduction of `p` modulo monic `basis`.
pub(crate) fn reduce(p: &GPoly, basis: &[GPoly], ord: &MonomialOrder) -> GPoly {
    let mut rest = p.clone();
    let mut done: Vec<(Mono, FieldElem)> = Vec::new();
    while !rest.is_zero() {
        let (m, c) = rest.terms[0].clone();
        match basis.iter().find(|g| order::divides(g.lm(), &m)) {
            Some(g) => {
                let q = order::quotient(&m, g.lm());
                rest = rest.sub_scaled(&c, &q, g, ord);
                debug_assert!(rest.is_zero() || ord.cmp(rest.lm(), &m) == Ordering::Less);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    GPoly { terms: done }
}

fn spoly(a: &GPoly, b: &GPoly, ord: &MonomialOrder) -> GPoly {
    let l = order::lcm(a.lm(), b.lm());
    let qa = order::quotient(&l, a.lm());
    let qb = order::quotient(&l, b.lm());
    let lhs = GPoly { terms: a.terms.iter().map(|(m, c)| (order::mul(m, &qa), c.clone())).collect() };
    lhs.sub_scaled(&FieldElem::one(), &qb, b, ord)
}

struct Pair {
    i: usize,
    j: usize,
    sugar: u32,
    lcm: Mono,
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub(crate) fn groebner(gens: Vec<GPoly>, ord: &MonomialOrder) -> Result<Vec<GPoly>, ExactError> {
    let mut basis: Vec<GPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut init: Vec<GPoly> = Vec::new();
    for g in gens {
        let g = g.monic()?;
        if !g.is_zero() {
            init.push(g);
        }
    }
    init.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in init {
        let r = reduce(&g, &basis, ord).monic()?;
        if !r.is_zero() {
            let s = g.sugar();
            add_element(r, s, &mut basis, &mut sugars, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| ord.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .expect("non-empty");
        let Pair { i, j, lcm, .. } = pairs.swap_remove(best);
        pending.remove(&(i, j));
        let (a, b) = (&basis[i], &basis[j]);
        // Product criterion, and S-polynomials of two monomials vanish.
        if order::mul(a.lm(), b.lm()) == lcm || (a.terms.len() == 1 && b.terms.len() == 1) {
            continue;
        }
        // Chain criterion.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && order::divides(basis[k].lm(), &lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(a, b, ord);
        let sug = pairs_sugar(&basis, &sugars, i, j, &lcm);
        let r = reduce(&s, &basis, ord);
        if !r.is_zero() {
            let r = r.monic()?;
            add_element(r, sug, &mut basis, &mut sugars, &mut pairs, &mut pending);
        }
    }
    interreduce(basis, ord)
}

fn add_element(
    g: GPoly,
    s: u32,
    basis: &mut Vec<GPoly>,
    sugars: &mut Vec<u32>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
) {
    let k = basis.len();
    for (i, h) in basis.iter().enumerate() {
        let l = order::lcm(h.lm(), g.lm());
        let sugar = (sugars[i] + order::degree(&order::quotient(&l, h.lm())))
            .max(s + order::degree(&order::quotient(&l, g.lm())));
        pairs.push(Pair { i, j: k, sugar, lcm: l });
        pending.insert((i, k));
    }
    basis.push(g);
    sugars.push(s);
}

fn pairs_sugar(basis: &[GPoly], sugars: &[u32], i: usize, j: usize, l: &Mono) -> u32 {
    (sugars[i] + order::degree(&order::quotient(l, basis[i].lm())))
        .max(sugars[j] + order::degree(&order::quotient(l, basis[j].lm())))
}

pub(crate) fn interreduce(basis: Vec<GPoly>, ord: &MonomialOrder) -> Result<Vec<GPoly>, ExactError> {
    let mut minimal: Vec<GPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && order::divides(h.lm(), g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<GPoly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let head = GPoly { terms: vec![minimal[k].terms[0].clone()] };
        let tail = GPoly { terms: minimal[k].terms[1..].to_vec() };
        let r = reduce(&tail, &others, ord);
        let mut terms = head.terms;
        terms.extend(r.terms);
        out.push(GPoly { terms }.monic()?);
    }
    out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    Ok(out)
}

/// Whether every S-polynomial of `gens` reduces to zero.
pub(crate) fn is_groebner(gens: &[GPoly], ord: &MonomialOrder) -> Result<bool, ExactError> {
    let monic: Vec<GPoly> = gens.iter().map(|g| g.monic()).collect::<Result<_, _>>()?;
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let s = spoly(&monic[i], &monic[j], ord);
            if !reduce(&s, &monic, ord).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
