//! Ideals of `k[x, y]` given by reduced Gröbner bases, and local ideals at
//! the origin.

use std::fmt;

use crate::exactnum::{ExactError, FieldElem};
use crate::series2::{bivariate_div_exact, bivariate_gcd, BiPoly};

use super::buchberger::{self, GPoly};
use super::order::{Mono, MonomialOrder, T};
use super::GroebnerError;

/// Largest power of the maximal ideal tried when localising.
pub const LOCALIZE_CAP: u32 = 128;

#[derive(Clone)]
pub struct IdealBasis {
    gens: Vec<GPoly>,
    order: MonomialOrder,
}

impl fmt::Debug for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum IdealRelation {
    Equal,
    /// The first ideal is strictly contained in the second.
    Subset,
    /// The first ideal strictly contains the second.
    Superset,
    Incomparable,
}

impl IdealBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> Vec<BiPoly> {
        self.gens.iter().map(|g| g.to_bipoly()).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_text()).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.lm() == &[0, 0, 0])
    }

    pub fn leading_monomials(&self) -> Vec<(u32, u32)> {
        self.gens.iter().map(|g| (g.lm()[0], g.lm()[1])).collect()
    }

    pub fn normal_form(&self, p: &BiPoly) -> BiPoly {
        buchberger::reduce(&GPoly::from_bipoly(p, &self.order), &self.gens, &self.order).to_bipoly()
    }

    pub fn contains(&self, p: &BiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &IdealBasis) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// The same ideal with its reduced basis in another order.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<IdealBasis, GroebnerError> {
        if &self.order == order {
            return Ok(self.clone());
        }
        groebner_basis(&self.generators(), order)
    }

    /// Standard monomials in increasing order, or `None` when the quotient
    /// is infinite dimensional.
    pub fn monomial_basis(&self) -> Option<Vec<(u32, u32)>> {
        let lms = self.leading_monomials();
        let a = lms.iter().filter(|m| m.1 == 0).map(|m| m.0).min()?;
        let b = lms.iter().filter(|m| m.0 == 0).map(|m| m.1).min()?;
        let mut out: Vec<(u32, u32)> = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if !lms.iter().any(|&(p, q)| p <= i && q <= j) {
                    out.push((i, j));
                }
            }
        }
        out.sort_by(|m, n| self.order.cmp(&[m.0, m.1, 0], &[n.0, n.1, 0]));
        Some(out)
    }

    /// `dim k[x,y]/I`, `None` when infinite.
    pub fn colength(&self) -> Option<usize> {
        self.monomial_basis().map(|b| b.len())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[BiPoly], order: &MonomialOrder) -> Result<IdealBasis, GroebnerError> {
    let polys: Vec<GPoly> = gens.iter().map(|g| GPoly::from_bipoly(g, order)).collect();
    let gb = buchberger::groebner(polys, order)?;
    Ok(IdealBasis { gens: gb, order: order.clone() })
}

/// Whether `gens` already form a Gröbner basis (all S-pairs reduce to zero).
pub fn is_groebner_basis(gens: &[BiPoly], order: &MonomialOrder) -> Result<bool, GroebnerError> {
    let polys: Vec<GPoly> = gens.iter().map(|g| GPoly::from_bipoly(g, order)).collect();
    Ok(buchberger::is_groebner(&polys, order)?)
}

pub fn ideal_compare(a: &IdealBasis, b: &IdealBasis) -> IdealRelation {
    let a_in_b = b.contains_ideal(a);
    let b_in_a = a.contains_ideal(b);
    match (a_in_b, b_in_a) {
        (true, true) => IdealRelation::Equal,
        (true, false) => IdealRelation::Subset,
        (false, true) => IdealRelation::Superset,
        (false, false) => IdealRelation::Incomparable,
    }
}

/// `m^n` as a list of monomials.
pub fn max_ideal_power(n: u32) -> Vec<BiPoly> {
    (0..=n).map(|i| BiPoly::term(1, i, n - i)).collect()
}

/// `I_loc ∩ k[x, y]` for the localisation at the origin.  This is `I + m^k`
/// for the first `k` found with `m^k ⊆ I + m^(k+1)`, since Nakayama's lemma
/// then puts `m^k` in the local ideal.  The local colength is infinite
/// exactly when the generators share a factor through the origin.
pub fn localize(gens: &[BiPoly], order: &MonomialOrder) -> Result<IdealBasis, GroebnerError> {
    let common = gens
        .iter()
        .filter(|g| !g.is_zero())
        .try_fold(BiPoly::zero(), |acc, g| if acc.is_zero() { Ok(g.clone()) } else { bivariate_gcd(&acc, g) })?;
    if common.is_zero() || common.eval(&FieldElem::zero(), &FieldElem::zero()).is_zero() {
        return Err(GroebnerError::InfiniteColength);
    }
    let mut k = 0;
    while k <= LOCALIZE_CAP {
        let mut all = gens.to_vec();
        all.extend(max_ideal_power(k + 1));
        let gb = groebner_basis(&all, order)?;
        let power = max_ideal_power(k);
        if power.iter().all(|m| gb.contains(m)) {
            let mut reduced = gb.generators();
            reduced.extend(power);
            return groebner_basis(&reduced, order);
        }
        // Unit steps while the bases are cheap, then geometric ones.
        k += (k / 4).max(1);
    }
    Err(GroebnerError::InfiniteColength)
}

/// Colength of the local ideal at the origin, `None` when infinite.
pub fn local_colength(gens: &[BiPoly]) -> Result<Option<usize>, GroebnerError> {
    match localize(gens, &MonomialOrder::degrevlex()) {
        Ok(gb) => Ok(gb.colength()),
        Err(GroebnerError::InfiniteColength) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `I : g^power` by elimination: `I ∩ (g^power)` is the `t`-free part of a
/// basis of `t·I + (1 - t)·(g^power)`, then each element is divided by
/// `g^power`.
pub fn colon_principal(i: &IdealBasis, g: &BiPoly, power: u32) -> Result<IdealBasis, GroebnerError> {
    let gp = g.pow(power);
    if gp.is_zero() {
        return Err(GroebnerError::Exact(ExactError::DivisionByZero));
    }
    let elim = MonomialOrder::eliminate_t();
    let mut gens: Vec<GPoly> = Vec::new();
    for f in i.generators() {
        let terms: Vec<(Mono, FieldElem)> = f.terms().map(|(&(a, b), c)| ([a, b, 1], c.clone())).collect();
        gens.push(GPoly::from_terms(terms, &elim));
    }
    let mut terms: Vec<(Mono, FieldElem)> = Vec::new();
    for (&(a, b), c) in gp.terms() {
        terms.push(([a, b, 0], c.clone()));
        terms.push(([a, b, 1], -c));
    }
    gens.push(GPoly::from_terms(terms, &elim));
    let gb = buchberger::groebner(gens, &elim)?;
    let mut quotients = Vec::new();
    for h in gb.iter().filter(|h| h.terms.iter().all(|(m, _)| m[T] == 0)) {
        let q = bivariate_div_exact(&h.to_bipoly(), &gp)?.expect("element of I ∩ (g) is divisible by g");
        quotients.push(q);
    }
    groebner_basis(&quotients, &i.order)
}

/// `I + J`.
pub fn ideal_sum(a: &IdealBasis, b: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    let mut gens = a.generators();
    gens.extend(b.generators());
    groebner_basis(&gens, &a.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series2::Var;
    use proptest::prelude::*;

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
    }

    #[test]
    fn cusp_jacobian_ideal() {
        // y^2 + x^3: <2y, 3x^2, F> = <y, x^2>, colength 2.
        let f = p(&[(1, 0, 2), (1, 3, 0)]);
        let gb = groebner_basis(&[f.partial(Var::X), f.partial(Var::Y), f.clone()], &MonomialOrder::lex_y_x()).unwrap();
        assert_eq!(gb.to_strings(), vec!["x^2", "y"]);
        assert_eq!(gb.colength(), Some(2));
        assert_eq!(gb.monomial_basis(), Some(vec![(0, 0), (1, 0)]));
    }

    #[test]
    fn membership_and_comparison() {
        let a = groebner_basis(&[p(&[(1, 0, 1)]), p(&[(1, 4, 0)])], &MonomialOrder::lex_y_x()).unwrap();
        let b = groebner_basis(&[p(&[(1, 0, 1)]), p(&[(1, 3, 0)])], &MonomialOrder::lex_y_x()).unwrap();
        assert_eq!(ideal_compare(&a, &b), IdealRelation::Subset);
        assert_eq!(ideal_compare(&b, &a), IdealRelation::Superset);
        assert!(b.contains(&p(&[(1, 3, 0), (5, 1, 1)])));
        assert!(!b.contains(&p(&[(1, 2, 0)])));
    }

    #[test]
    fn colon_by_y() {
        // <x, y^2> : y = <x, y>
        let i = groebner_basis(&[p(&[(1, 1, 0)]), p(&[(1, 0, 2)])], &MonomialOrder::lex_y_x()).unwrap();
        let q = colon_principal(&i, &BiPoly::y(), 1).unwrap();
        assert_eq!(q.to_strings(), vec!["x", "y"]);
        let q0 = colon_principal(&i, &BiPoly::one(), 1).unwrap();
        assert_eq!(ideal_compare(&q0, &i), IdealRelation::Equal);
    }

    #[test]
    fn localisation_drops_far_components() {
        // <y, x(x-1)> has colength 2 globally and 1 at the origin.
        let gb = localize(&[BiPoly::y(), p(&[(1, 2, 0), (-1, 1, 0)])], &MonomialOrder::lex_y_x()).unwrap();
        assert_eq!(gb.to_strings(), vec!["x", "y"]);
        // A curve component through the origin has infinite colength.
        assert!(matches!(localize(&[p(&[(1, 0, 1), (1, 2, 0)])], &MonomialOrder::degrevlex()), Err(GroebnerError::InfiniteColength)));
    }

    #[test]
    fn unit_ideal() {
        let gb = groebner_basis(&[p(&[(1, 0, 0), (1, 1, 0)]), p(&[(1, 1, 0)])], &MonomialOrder::degrevlex()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.colength(), Some(0));
    }

    /// Linear-algebra oracle: `(I : g)/I` is the kernel of multiplication by
    /// `g` on the finite-dimensional quotient by `I`.
    fn colon_oracle_colength(i: &IdealBasis, g: &BiPoly) -> usize {
        let basis = i.monomial_basis().unwrap();
        // Columns: normal forms of g·m for standard monomials m.
        let mut rows: Vec<Vec<crate::exactnum::Rational>> = Vec::new();
        let n = basis.len();
        let cols: Vec<BiPoly> = basis.iter().map(|&(a, b)| i.normal_form(&(&BiPoly::term(1, a, b) * g))).collect();
        for r in 0..n {
            rows.push((0..n).map(|c| cols[c].coeff(basis[r].0, basis[r].1).as_rational().unwrap()).collect());
        }
        let kernel = crate::exactnum::linalg::nullspace(rows, n);
        // dim (I:g)/I = dim kernel, so colength(I:g) = colength(I) - dim kernel.
        n - kernel.len()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn colon_matches_linear_algebra(
            c in proptest::collection::vec(-3i64..=3, 4),
            k in 3u32..6,
        ) {
            let f = p(&[(1, 0, 2), (c[0], 1, 1), (c[1], 2, 0), (1, k, 0), (c[2], 0, 3)]);
            let i = localize(&[f.partial(Var::X), f.partial(Var::Y), f.clone()], &MonomialOrder::lex_y_x());
            prop_assume!(i.is_ok());
            let i = i.unwrap();
            let g = p(&[(1, 0, 1), (c[3], 1, 0)]);
            let q = colon_principal(&i, &g, 1).unwrap();
            prop_assert!(q.contains_ideal(&i));
            prop_assert_eq!(q.colength().unwrap(), colon_oracle_colength(&i, &g));
        }

        #[test]
        fn groebner_bases_pass_s_pair_test(
            c in proptest::collection::vec(-3i64..=3, 6),
        ) {
            let a = p(&[(1, 0, 2), (c[0], 1, 1), (c[1], 3, 0), (c[2], 0, 0)]);
            let b = p(&[(1, 2, 1), (c[3], 0, 1), (c[4], 1, 0), (c[5], 0, 3)]);
            for ord in [MonomialOrder::lex_y_x(), MonomialOrder::lex_x_y(), MonomialOrder::degrevlex()] {
                let gb = groebner_basis(&[a.clone(), b.clone()], &ord).unwrap();
                prop_assert!(is_groebner_basis(&gb.generators(), &ord).unwrap());
                prop_assert!(gb.contains(&a) && gb.contains(&b));
            }
        }

        #[test]
        fn colength_is_order_independent(
            c in proptest::collection::vec(-3i64..=3, 3),
            k in 2u32..6,
        ) {
            let f = p(&[(1, 0, 2), (c[0], 1, 1), (c[1], 2, 1), (1, k, 0), (c[2], 0, 3)]);
            let gens = [f.partial(Var::X), f.partial(Var::Y), f.clone()];
            let a = localize(&gens, &MonomialOrder::lex_y_x());
            let b = localize(&gens, &MonomialOrder::degrevlex());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.colength(), b.colength());
                    prop_assert_eq!(ideal_compare(&a, &b.with_order(&MonomialOrder::lex_y_x()).unwrap()), IdealRelation::Equal);
                    // Membership soundness: the maximal ideal to the colength lies in I.
                    for m in max_ideal_power(a.colength().unwrap() as u32) {
                        prop_assert!(a.contains(&m));
                    }
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "orders disagree on finiteness"),
            }
        }
    }
}
