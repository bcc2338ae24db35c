//! Equianalytic ideals of a germ relative to the divisor `y = 0`, their
//! colengths, the identities linking them, and semiuniversal families.

use crate::branches::{ideal_ec, BranchError};
use crate::exactnum::{FieldElem, Rational};
use crate::germ::{CurveGerm, GermError};
use crate::groebner::{colon_principal, ideal_compare, localize, GroebnerError, IdealBasis, IdealRelation, MonomialOrder};
use crate::resolution::{self, ResolutionError};
use crate::series2::{BiPoly, Var};

#[derive(Debug, Clone, thiserror::Error)]
pub enum LogError {
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("ideal has infinite colength at the origin")]
    InfiniteColength,
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// How `I^ea_log` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogRoute {
    /// `I^ea_{D,P} : y`.
    Colon,
    /// `⟨F_x, F_y, w·f·u - x·u·f_x + x·f·u_x⟩`.
    ClosedForm,
}

fn output_order() -> MonomialOrder {
    MonomialOrder::lex_y_x()
}

fn local(gens: &[BiPoly]) -> Result<IdealBasis, LogError> {
    match localize(gens, &output_order()) {
        Err(GroebnerError::InfiniteColength) => Err(LogError::InfiniteColength),
        r => Ok(r?),
    }
}

fn colength(i: &IdealBasis) -> Result<usize, LogError> {
    i.colength().ok_or(LogError::InfiniteColength)
}

/// Tjurina ideal `⟨p_x, p_y, p⟩` of any curve, localised at the origin.
pub fn tjurina_ideal(p: &BiPoly) -> Result<IdealBasis, LogError> {
    local(&[p.partial(Var::X), p.partial(Var::Y), p.clone()])
}

pub fn ideal_ea(g: &CurveGerm) -> Result<IdealBasis, LogError> {
    tjurina_ideal(&g.poly)
}

/// `m·⟨F_x, F_y⟩ + ⟨F⟩`.
pub fn ideal_ea_fix(g: &CurveGerm) -> Result<IdealBasis, LogError> {
    let (fx, fy) = (g.partial(Var::X), g.partial(Var::Y));
    let (x, y) = (BiPoly::x(), BiPoly::y());
    local(&[&x * &fx, &y * &fx, &x * &fy, &y * &fy, g.poly.clone()])
}

/// `{F_x, y·F_y, F}`, or `{x·F_x, y·F_x, y·F_y, F}` when the point is fixed.
pub fn ideal_ea_rel(g: &CurveGerm, fix_point: bool) -> Result<IdealBasis, LogError> {
    let (fx, fy) = (g.partial(Var::X), g.partial(Var::Y));
    let (x, y) = (BiPoly::x(), BiPoly::y());
    if fix_point {
        local(&[&x * &fx, &y * &fx, &y * &fy, g.poly.clone()])
    } else {
        local(&[fx, &y * &fy, g.poly.clone()])
    }
}

pub fn ideal_ea_log(g: &CurveGerm, route: LogRoute) -> Result<IdealBasis, LogError> {
    match route {
        LogRoute::Colon => Ok(colon_principal(&ideal_ea_rel(g, true)?, &BiPoly::y(), 1)?),
        LogRoute::ClosedForm => {
            let u = BiPoly::from_x_poly(&g.u);
            let ux = u.partial(Var::X);
            let fx = g.f.partial(Var::X);
            let w = FieldElem::from(g.w as i64);
            let x = BiPoly::x();
            let third = &(&(&g.f * &u).scale(&w) - &(&x * &(&u * &fx))) + &(&x * &(&g.f * &ux));
            local(&[g.partial(Var::X), g.partial(Var::Y), third])
        }
    }
}

/// Every colength of the equianalytic family, with the ideals behind them.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub w: u32,
    pub tau: usize,
    pub tau_fix: usize,
    pub tau_rel_d: usize,
    pub tau_rel_dp: usize,
    pub tau_log: usize,
    /// `τ(C ∪ D)`.
    pub tau_cup: usize,
    pub delta: usize,
    /// `τ^es(C ∪ D)`.
    pub tes_cup: usize,
    pub tes_log: usize,
    pub ideal_ea: IdealBasis,
    pub ideal_ea_fix: IdealBasis,
    pub ideal_ea_rel_d: IdealBasis,
    pub ideal_ea_rel_dp: IdealBasis,
    pub ideal_ea_log: IdealBasis,
    pub ideal_ea_cup: IdealBasis,
}

/// Computes each colength from its own ideal and checks
/// `τ_log = τ_{D,P} - w = τ_D - (w-1) = τ(C∪D) - (2w-1)`.
pub fn tau_report(g: &CurveGerm) -> Result<InvariantReport, LogError> {
    let ea = ideal_ea(g)?;
    let fix = ideal_ea_fix(g)?;
    let rel_d = ideal_ea_rel(g, false)?;
    let rel_dp = ideal_ea_rel(g, true)?;
    let log = ideal_ea_log(g, LogRoute::Colon)?;
    let cup = tjurina_ideal(&g.with_divisor())?;
    let w = g.w as i64;
    let tau_log = colength(&log)?;
    let tau_rel_d = colength(&rel_d)?;
    let tau_rel_dp = colength(&rel_dp)?;
    let tau_cup = colength(&cup)?;
    let checks = [
        ("tau_rel_DP - w", tau_rel_dp as i64 - w),
        ("tau_rel_D - (w-1)", tau_rel_d as i64 - (w - 1)),
        ("tau(C+D) - (2w-1)", tau_cup as i64 - (2 * w - 1)),
    ];
    for (name, value) in checks {
        if value != tau_log as i64 {
            return Err(LogError::IdentityViolation(format!("tau_log = {tau_log} but {name} = {value}")));
        }
    }
    let tes_cup = resolution::tau_es(&g.with_divisor())?;
    let tes_log = resolution::tes_log_from_cup(tes_cup, g.w);
    if tes_log < 0 {
        return Err(LogError::IdentityViolation(format!("tau_es(C+D) = {tes_cup} is below 2w-1")));
    }
    let delta = resolution::delta_res(&g.poly)?;
    Ok(InvariantReport {
        w: g.w,
        tau: colength(&ea)?,
        tau_fix: colength(&fix)?,
        tau_rel_d,
        tau_rel_dp,
        tau_log,
        tau_cup,
        delta,
        tes_cup,
        tes_log: tes_log as usize,
        ideal_ea: ea,
        ideal_ea_fix: fix,
        ideal_ea_rel_d: rel_d,
        ideal_ea_rel_dp: rel_dp,
        ideal_ea_log: log,
        ideal_ea_cup: cup,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Log,
    Absolute,
}

/// A semiuniversal family `F_t` over a `k`-dimensional base.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub flavor: Flavor,
    pub k: usize,
    /// Standard monomials in increasing order.
    pub basis: Vec<BiPoly>,
    /// `(t_i, monomial)`; `t1` goes with the largest monomial.
    pub params: Vec<(String, BiPoly)>,
    pub template: String,
    /// Whether each monomial is multiplied by `y` before being added to `F`.
    times_y: bool,
    /// `F = y·f + x^w` with `f` deformed in place.
    nested: bool,
    germ: CurveGerm,
}

impl DeformationFamily {
    /// The member of the family at the given parameter values.
    pub fn instantiate(&self, values: &[Rational]) -> BiPoly {
        let mut p = self.germ.poly.clone();
        for ((_, m), v) in self.params.iter().zip(values) {
            let term = if self.times_y { &BiPoly::y() * m } else { m.clone() };
            p = &p + &term.scale(&FieldElem::from(v.clone()));
        }
        p
    }

    pub fn is_nested(&self) -> bool {
        self.nested
    }
}

fn param_sum(params: &[(String, BiPoly)], times_y: bool) -> String {
    let mut s = String::new();
    for (t, m) in params {
        let mono = m.to_text();
        let body = match (times_y, mono.as_str()) {
            (false, "1") => t.clone(),
            (false, _) => format!("{t}*{mono}"),
            (true, "1") => format!("{t}*y"),
            (true, _) => format!("{t}*y*{mono}"),
        };
        s.push_str(" + ");
        s.push_str(&body);
    }
    s
}

pub fn semiuniversal_family(g: &CurveGerm, flavor: Flavor) -> Result<DeformationFamily, LogError> {
    let ideal = match flavor {
        Flavor::Log => ideal_ea_log(g, LogRoute::Colon)?,
        Flavor::Absolute => ideal_ea(g)?,
    };
    let basis: Vec<BiPoly> = ideal
        .monomial_basis()
        .ok_or(LogError::InfiniteColength)?
        .into_iter()
        .map(|(i, j)| BiPoly::term(1, i, j))
        .collect();
    let k = basis.len();
    let params: Vec<(String, BiPoly)> =
        basis.iter().rev().enumerate().map(|(i, m)| (format!("t{}", i + 1), m.clone())).collect();
    let nested = flavor == Flavor::Log && g.is_monomial_tail();
    let times_y = flavor == Flavor::Log;
    let template = if nested {
        let params_text = param_sum(&params, false);
        let xw = BiPoly::term(1, g.w, 0).to_text();
        format!("y*({}{}) + {}", g.f.to_text(), params_text, xw)
    } else {
        format!("{}{}", g.poly.to_text(), param_sum(&params, times_y))
    };
    Ok(DeformationFamily { flavor, k, basis, params, template, times_y, nested, germ: g.clone() })
}

/// Outcome of testing a candidate for `I^es_log`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certification {
    /// `τ_log = τ^es_log` forces `I^es_log = I^ea_log = candidate`.
    CertifiedEqual,
    /// `I^ea_log ⊆ candidate ⊆ I^ec` with the right colength.
    CertifiedSandwich,
    Refuted { reason: String },
}

/// Checks `I^ea_log ⊆ candidate ⊆ I^ec` and `colength(candidate) = τ^es_log`.
pub fn certify_es_log(g: &CurveGerm, candidate: &[BiPoly]) -> Result<Certification, LogError> {
    let cand = local(candidate)?;
    let log = ideal_ea_log(g, LogRoute::Colon)?;
    let ec = ideal_ec(g)?;
    let tau_log = colength(&log)?;
    let tes_log = resolution::tes_log(g)?;
    let c = colength(&cand)?;
    if !cand.contains_ideal(&log) {
        return Ok(Certification::Refuted { reason: "candidate does not contain I^ea_log".into() });
    }
    if !ec.contains_ideal(&cand) {
        return Ok(Certification::Refuted { reason: "candidate is not contained in I^ec".into() });
    }
    if c as i64 != tes_log {
        return Ok(Certification::Refuted { reason: format!("colength {c} differs from tes_log {tes_log}") });
    }
    if tau_log as i64 == tes_log {
        Ok(Certification::CertifiedEqual)
    } else {
        Ok(Certification::CertifiedSandwich)
    }
}

/// Whether `a ⊆ b`.
pub fn is_subideal(a: &IdealBasis, b: &IdealBasis) -> bool {
    matches!(ideal_compare(a, b), IdealRelation::Equal | IdealRelation::Subset)
}
