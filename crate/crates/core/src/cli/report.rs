//! The invariant report of one germ, as a JSON document or plain text.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use crate::branches::{delta_branch, ideal_cd, ideal_ec, inclusion_chain_check, ChainLink};
use crate::germ::{normalize, CurveGerm};
use crate::groebner::IdealBasis;
use crate::logideals::{ideal_ea_log, semiuniversal_family, tau_report, Flavor, LogError, LogRoute};
use crate::resolution::{self, NodeDump};
use crate::series2::BiPoly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    All,
    Tau,
    Tes,
    Ideals,
    Deformation,
    Resolution,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDoc {
    pub poly: String,
    pub w: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationDoc {
    pub flavor: Flavor,
    pub k: usize,
    pub basis: Vec<String>,
    pub params: Vec<String>,
    pub template: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionDoc {
    pub input: String,
    pub blowups: usize,
    pub nodes: Vec<NodeDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityDoc {
    pub stable: bool,
    /// `(w, τ_log, τ^es_log)`; absent values mark invalid members.
    pub values: Vec<(u32, Option<usize>, Option<usize>)>,
}

/// Report document; sections not requested are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub input: InputDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<BTreeMap<&'static str, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<ChainLink>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideals: Option<BTreeMap<&'static str, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_stability: Option<StabilityDoc>,
}

pub struct Report {
    pub germ: CurveGerm,
    pub doc: ReportDoc,
}

fn basis(i: &IdealBasis) -> Vec<String> {
    i.to_strings()
}

/// `y·f + x^w'·u` for each `w'` from `w` to `wmax`.
pub fn w_stability(g: &CurveGerm, wmax: u32) -> StabilityDoc {
    let u = BiPoly::from_x_poly(&g.u);
    let yf = &BiPoly::y() * &g.f;
    let mut values = Vec::new();
    for w in g.w..=wmax.max(g.w) {
        let member = &yf + &(&BiPoly::term(1, w, 0) * &u);
        let computed = normalize(&member)
            .map_err(LogError::from)
            .and_then(|h| tau_report(&h))
            .ok()
            .map(|r| (r.tau_log, r.tes_log));
        values.push((w, computed.map(|c| c.0), computed.map(|c| c.1)));
    }
    let valid: Vec<_> = values.iter().filter(|v| v.1.is_some()).collect();
    let stable = valid.len() == values.len() && valid.windows(2).all(|p| (p[0].1, p[0].2) == (p[1].1, p[1].2));
    StabilityDoc { stable, values }
}

pub fn build_report(p: &BiPoly, what: What, wmax_check: Option<u32>) -> Result<Report, LogError> {
    let g = normalize(p)?;
    let all = what == What::All;
    let mut doc = ReportDoc {
        schema_version: SCHEMA_VERSION,
        input: InputDoc { poly: g.poly.to_text(), w: g.w },
        invariants: None,
        chain: None,
        ideals: None,
        deformation: None,
        resolution: None,
        w_stability: None,
    };
    let needs_tau = all || matches!(what, What::Tau | What::Tes | What::Ideals);
    let r = if needs_tau { Some(tau_report(&g)?) } else { None };
    if let Some(r) = &r {
        let closed = ideal_ea_log(&g, LogRoute::ClosedForm)?;
        if basis(&closed) != basis(&r.ideal_ea_log) {
            return Err(LogError::IdentityViolation("colon and closed-form routes for I^ea_log differ".into()));
        }
        if r.tes_log > r.tau_log {
            return Err(LogError::IdentityViolation(format!("tes_log {} exceeds tau_log {}", r.tes_log, r.tau_log)));
        }
    }
    if let (true, Some(r)) = (all || matches!(what, What::Tau | What::Tes), &r) {
        let mut inv: BTreeMap<&'static str, i64> = BTreeMap::new();
        inv.insert("w", g.w as i64);
        inv.insert("tau_log", r.tau_log as i64);
        inv.insert("tes_log", r.tes_log as i64);
        inv.insert("tes_cup", r.tes_cup as i64);
        inv.insert("delta", r.delta as i64);
        if what != What::Tes {
            inv.insert("tau", r.tau as i64);
            inv.insert("tau_fix", r.tau_fix as i64);
            inv.insert("tau_rel_d", r.tau_rel_d as i64);
            inv.insert("tau_rel_dp", r.tau_rel_dp as i64);
            inv.insert("tau_cup", r.tau_cup as i64);
            inv.insert("delta_branch", delta_branch(&g)? as i64);
        }
        doc.invariants = Some(inv);
    }
    if all || what == What::Tes {
        doc.chain = Some(inclusion_chain_check(&g)?.links);
    }
    if let (true, Some(r)) = (all || what == What::Ideals, &r) {
        let mut ideals = BTreeMap::new();
        ideals.insert("ea", basis(&r.ideal_ea));
        ideals.insert("ea_fix", basis(&r.ideal_ea_fix));
        ideals.insert("ea_rel_d", basis(&r.ideal_ea_rel_d));
        ideals.insert("ea_rel_dp", basis(&r.ideal_ea_rel_dp));
        ideals.insert("ea_log", basis(&r.ideal_ea_log));
        ideals.insert("ea_cup", basis(&r.ideal_ea_cup));
        ideals.insert("ec", basis(&ideal_ec(&g)?));
        ideals.insert("cd", basis(&ideal_cd(&g)?));
        doc.ideals = Some(ideals);
    }
    if all || what == What::Deformation {
        let fam = semiuniversal_family(&g, Flavor::Log)?;
        doc.deformation = Some(DeformationDoc {
            flavor: fam.flavor,
            k: fam.k,
            basis: fam.basis.iter().map(|m| m.to_text()).collect(),
            params: fam.params.iter().map(|(t, _)| t.clone()).collect(),
            template: fam.template.clone(),
        });
    }
    if all || what == What::Resolution {
        let tree = resolution::resolve(&g.with_divisor())?;
        doc.resolution = Some(ResolutionDoc { input: tree.input.to_text(), blowups: tree.blowups, nodes: tree.dump() });
    }
    if let Some(wmax) = wmax_check {
        doc.w_stability = Some(w_stability(&g, wmax));
    }
    Ok(Report { germ: g, doc })
}

impl Report {
    pub fn to_text(&self) -> String {
        let d = &self.doc;
        let mut s = format!("poly: {}\nw: {}\n", d.input.poly, d.input.w);
        if let Some(inv) = &d.invariants {
            for (k, v) in inv.iter().filter(|(k, _)| **k != "w") {
                s.push_str(&format!("{k} = {v}\n"));
            }
        }
        if let Some(chain) = &d.chain {
            for l in chain {
                let tag = if l.holds { "holds" } else { "FAILS" };
                let witness = l.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default();
                s.push_str(&format!("chain {}: {tag}{witness}\n", l.name));
            }
        }
        if let Some(ideals) = &d.ideals {
            for (k, v) in ideals {
                s.push_str(&format!("I^{k} = <{}>\n", v.join(", ")));
            }
        }
        if let Some(def) = &d.deformation {
            s.push_str(&format!("deformation k = {}: {}\n", def.k, def.template));
        }
        if let Some(res) = &d.resolution {
            s.push_str(&format!("resolution of {}: {} blow-ups\n", res.input, res.blowups));
            for n in &res.nodes {
                let parent = n.parent.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
                s.push_str(&format!(
                    "  node {} (parent {parent}, {}): m={}, rtt={}, {}, {}, deg={}\n",
                    n.id,
                    n.step,
                    n.multiplicity,
                    n.rtt_multiplicity,
                    if n.free { "free" } else { "sat" },
                    if n.essential { "ess" } else { "-" },
                    n.degree
                ));
            }
        }
        if let Some(st) = &d.w_stability {
            s.push_str(&format!("w-stability: {} {:?}\n", if st.stable { "stable" } else { "NOT stable" }, st.values));
        }
        s
    }
}
