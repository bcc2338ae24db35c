//! The chain `I^ea ⊆ I^ea_log ⊆ I^ec ⊆ I^cd` and the colength sandwich
//! `τ_log ≥ τ^es_log ≥ colength(I^ec)`.

use serde::Serialize;

use super::{ideal_cd, ideal_ec};
use crate::germ::CurveGerm;
use crate::groebner::IdealBasis;
use crate::logideals::{ideal_ea, ideal_ea_log, LogError, LogRoute};
use crate::resolution;

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub name: String,
    pub holds: bool,
    /// A generator of the smaller ideal missing from the larger one, or
    /// the offending colengths.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub links: Vec<ChainLink>,
    pub tau_log: usize,
    pub tes_log: i64,
    pub tau_ec: usize,
    pub delta: usize,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

fn inclusion(name: &str, small: &IdealBasis, large: &IdealBasis) -> ChainLink {
    let witness = small.generators().into_iter().find(|g| !large.contains(g)).map(|g| g.to_text());
    ChainLink { name: name.to_string(), holds: witness.is_none(), witness }
}

fn inequality(name: &str, a: i64, b: i64) -> ChainLink {
    let holds = a >= b;
    ChainLink { name: name.to_string(), holds, witness: (!holds).then(|| format!("{a} < {b}")) }
}

pub fn inclusion_chain_check(g: &CurveGerm) -> Result<ChainReport, LogError> {
    let ea = ideal_ea(g)?;
    let log = ideal_ea_log(g, LogRoute::Colon)?;
    let ec = ideal_ec(g)?;
    let cd = ideal_cd(g)?;
    let colength = |i: &IdealBasis| i.colength().ok_or(LogError::InfiniteColength);
    let tau_log = colength(&log)?;
    let tau_ec = colength(&ec)?;
    let tes_log = resolution::tes_log(g)?;
    let delta = resolution::delta_res(&g.poly)?;
    let cd_len = colength(&cd)?;
    let links = vec![
        inclusion("I^ea <= I^ea_log", &ea, &log),
        inclusion("I^ea_log <= I^ec", &log, &ec),
        inclusion("I^ec <= I^cd", &ec, &cd),
        inequality("tau_log >= tes_log", tau_log as i64, tes_log),
        inequality("tes_log >= colength(I^ec)", tes_log, tau_ec as i64),
        ChainLink {
            name: "colength(I^cd) = delta".into(),
            holds: cd_len == delta,
            witness: (cd_len != delta).then(|| format!("{cd_len} != {delta}")),
        },
    ];
    Ok(ChainReport { links, tau_log, tes_log, tau_ec, delta })
}
