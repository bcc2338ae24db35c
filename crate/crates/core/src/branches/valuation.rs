//! Valuations along branches and the valuation ideals they define.

use crate::exactnum::linalg::nullspace;
use crate::exactnum::{ExactError, FieldElem, Rational, UniPoly};
use crate::germ::CurveGerm;
use crate::groebner::{groebner_basis, local_colength, max_ideal_power, IdealBasis, MonomialOrder};
use crate::series2::series::mul_trunc;
use crate::series2::{bivariate_div_exact, bivariate_gcd, BiPoly, Var};

use super::puiseux::{puiseux, BranchParam};
use super::{BranchError, PRECISION_CAP};

/// Truncation tried before computing a certified bound.
const FIRST_PRECISION: usize = 16;

/// Per-branch order conditions `ord_t(h∘γ_i) ≥ N_i` and the degree bound
/// `d* = max N_i`; every monomial of degree `≥ d*` meets all of them since
/// both coordinates vanish on every branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationConditions {
    pub orders: Vec<u32>,
    pub degree_bound: u32,
}

impl ValuationConditions {
    pub fn new(orders: Vec<u32>) -> Self {
        let degree_bound = orders.iter().copied().max().unwrap_or(0);
        ValuationConditions { orders, degree_bound }
    }
}

/// Applies `f` to every branch; a zero divisor replaces the offending
/// branch by its factors and retries.
pub(crate) fn map_refining<T>(
    branches: &mut Vec<BranchParam>,
    mut f: impl FnMut(&BranchParam) -> Result<T, BranchError>,
) -> Result<Vec<T>, BranchError> {
    let mut out = Vec::with_capacity(branches.len());
    let mut i = 0;
    while i < branches.len() {
        match f(&branches[i]) {
            Ok(v) => {
                out.push(v);
                i += 1;
            }
            Err(BranchError::Exact(ExactError::Split(ev))) => {
                let parts = branches[i].split(&ev)?;
                branches.splice(i..i + 1, parts);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn first_nonzero(s: &UniPoly) -> Result<Option<u32>, ExactError> {
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_nonzero_checked()? {
            return Ok(Some(k as u32));
        }
    }
    Ok(None)
}

/// `ord_t h(γ(t))`, `None` when `h` vanishes on the branch.  Beyond a first
/// attempt the truncation is raised to `i_0(F/gcd(F,h), h) + 1`, which
/// bounds the order on any branch not contained in `h = 0`.
pub fn pullback_order(b: &BranchParam, h: &BiPoly) -> Result<Option<u32>, BranchError> {
    if h.is_zero() {
        return Ok(None);
    }
    if let Some(k) = first_nonzero(&b.pullback_series(h, FIRST_PRECISION)?)? {
        return Ok(Some(k));
    }
    let curve = b.curve();
    let common = bivariate_gcd(curve, h)?;
    let rest = bivariate_div_exact(curve, &common)?.ok_or_else(|| BranchError::Inconsistent("gcd does not divide".into()))?;
    let bound = if rest.coeff(0, 0).is_zero() {
        local_colength(&[rest, h.clone()])?
            .ok_or_else(|| BranchError::Inconsistent("cofactor shares a component with h".into()))?
    } else {
        0
    };
    let n = bound + 1;
    if n > PRECISION_CAP {
        return Err(BranchError::PrecisionCap);
    }
    if n <= FIRST_PRECISION {
        return Ok(None);
    }
    Ok(first_nonzero(&b.pullback_series(h, n)?)?)
}

/// Conductor exponent of each branch by Dedekind's formula
/// `ord(F_y∘γ) - ord(x'∘γ)` (with the roles of `x`, `y` exchanged on `x = 0`).
pub fn conductor_exponents(branches: &mut Vec<BranchParam>, curve: &BiPoly) -> Result<Vec<u32>, BranchError> {
    let fx = curve.partial(Var::X);
    let fy = curve.partial(Var::Y);
    map_refining(branches, |b| {
        let (h, shift) = if b.is_vertical() { (&fx, 0) } else { (&fy, b.ramification() - 1) };
        let ord = pullback_order(b, h)?.ok_or_else(|| BranchError::Inconsistent("derivative vanishes on a branch".into()))?;
        ord.checked_sub(shift).ok_or_else(|| BranchError::Inconsistent("negative conductor exponent".into()))
    })
}

/// `δ = ½ Σ deg_i·c_i` over the branches.
pub fn delta_branch(g: &CurveGerm) -> Result<usize, BranchError> {
    let mut branches = puiseux(&g.poly)?;
    let c = conductor_exponents(&mut branches, &g.poly)?;
    let total: usize = branches.iter().zip(&c).map(|(b, &c)| b.degree() * c as usize).sum();
    if !total.is_multiple_of(2) {
        return Err(BranchError::Inconsistent(format!("odd conductor degree {total}")));
    }
    Ok(total / 2)
}

/// `Σ deg_i·ord(h∘γ_i)`, `None` when `h` vanishes on some branch.
pub fn intersection_via_branches(curve: &BiPoly, h: &BiPoly) -> Result<Option<usize>, BranchError> {
    let mut branches = puiseux(curve)?;
    let orders = map_refining(&mut branches, |b| pullback_order(b, h))?;
    let mut total = 0;
    for (b, o) in branches.iter().zip(orders) {
        match o {
            Some(k) => total += b.degree() * k as usize,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// `{h : ord_t(h∘γ_i) ≥ N_i}` from the linear conditions on the
/// coefficients of monomials of degree `< d*`, plus `m^{d*}`.
pub fn valuation_ideal(branches: &[BranchParam], conds: &ValuationConditions) -> Result<IdealBasis, BranchError> {
    let order = MonomialOrder::lex_y_x();
    let dstar = conds.degree_bound;
    if dstar == 0 {
        return Ok(groebner_basis(&[BiPoly::one()], &order)?);
    }
    let monos: Vec<(u32, u32)> = (0..dstar).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (b, &n) in branches.iter().zip(&conds.orders) {
        if n == 0 {
            continue;
        }
        let n = n as usize;
        let x = b.x_series(n);
        let y = b.y_series(n)?;
        let tower = b.tower();
        let mut xp = vec![crate::series2::series::truncate_uni(&UniPoly::one(), n)];
        let mut yp = xp.clone();
        for k in 0..dstar as usize {
            xp.push(mul_trunc(&xp[k], &x, n));
            yp.push(mul_trunc(&yp[k], &y, n));
        }
        let series: Vec<UniPoly> = monos.iter().map(|&(i, j)| mul_trunc(&xp[i as usize], &yp[j as usize], n)).collect();
        for k in 0..n {
            let coords: Vec<Vec<Rational>> = series
                .iter()
                .map(|s| s.coeff(k).lift_to(tower).to_rational_vector())
                .collect();
            for c in 0..tower.degree() {
                let row: Vec<Rational> = coords.iter().map(|v| v[c].clone()).collect();
                if row.iter().any(|r| !num_traits::Zero::is_zero(r)) {
                    rows.push(row);
                }
            }
        }
    }
    let mut gens: Vec<BiPoly> = nullspace(rows, monos.len())
        .into_iter()
        .map(|v| {
            BiPoly::from_terms(monos.iter().zip(v).map(|(&(i, j), c)| ((i, j), FieldElem::from(c))))
        })
        .collect();
    gens.extend(max_ideal_power(dstar));
    Ok(groebner_basis(&gens, &order)?)
}

/// Branches of the germ with the equiclassical conditions
/// `N_i = min(ord F_x∘γ_i, ord F_y∘γ_i)`.
pub fn ec_conditions(g: &CurveGerm) -> Result<(Vec<BranchParam>, ValuationConditions), BranchError> {
    let mut branches = puiseux(&g.poly)?;
    let fx = g.poly.partial(Var::X);
    let fy = g.poly.partial(Var::Y);
    let orders = map_refining(&mut branches, |b| {
        let a = pullback_order(b, &fx)?;
        let c = pullback_order(b, &fy)?;
        match (a, c) {
            (Some(a), Some(c)) => Ok(a.min(c)),
            (Some(a), None) => Ok(a),
            (None, Some(c)) => Ok(c),
            (None, None) => Err(BranchError::Inconsistent("gradient vanishes on a branch".into())),
        }
    })?;
    Ok((branches, ValuationConditions::new(orders)))
}

/// Conductor conditions `N_i = c_i`.
pub fn cd_conditions(g: &CurveGerm) -> Result<(Vec<BranchParam>, ValuationConditions), BranchError> {
    let mut branches = puiseux(&g.poly)?;
    let c = conductor_exponents(&mut branches, &g.poly)?;
    Ok((branches, ValuationConditions::new(c)))
}

/// The equiclassical ideal.
pub fn ideal_ec(g: &CurveGerm) -> Result<IdealBasis, BranchError> {
    let (branches, conds) = ec_conditions(g)?;
    valuation_ideal(&branches, &conds)
}

/// The conductor ideal.
pub fn ideal_cd(g: &CurveGerm) -> Result<IdealBasis, BranchError> {
    let (branches, conds) = cd_conditions(g)?;
    valuation_ideal(&branches, &conds)
}
