//! The classification of germs with small logarithmic equisingular Tjurina
//! number: model equations, their expected invariants, and a harness that
//! recomputes everything and reports differences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::branches::{delta_branch, ideal_cd, inclusion_chain_check};
use crate::germ::{normalize, CurveGerm, GermError};
use crate::groebner::{groebner_basis, MonomialOrder};
use crate::logideals::{certify_es_log, ideal_ea_log, tau_report, Certification, LogRoute};
use crate::series2::BiPoly;

/// Expected values; `None` means the value is not asserted.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub delta: Option<usize>,
    pub tau_log: Option<usize>,
    pub tes_log: Option<usize>,
    /// `τ^es(C ∪ D)`.
    pub tes_cup: Option<usize>,
    pub ea_log: Option<Vec<BiPoly>>,
    pub es_log: Option<Vec<BiPoly>>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub kind: &'static str,
    pub w: u32,
    pub poly: BiPoly,
    pub expected: Expected,
    /// Where the expectations come from.
    pub source: &'static str,
    /// Family name for entries instantiated over a range of `w`.
    pub w_family: Option<&'static str>,
    /// False for rows the classification leaves open.
    pub verified_against_source: bool,
}

fn poly(terms: &[(i64, u32, u32)]) -> BiPoly {
    terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
}

/// `y + x^k`.
fn graph(k: u32) -> BiPoly {
    poly(&[(1, 0, 1), (1, k, 0)])
}

fn ideal(gens: &[&[(i64, u32, u32)]]) -> Option<Vec<BiPoly>> {
    Some(gens.iter().map(|g| poly(g)).collect())
}

struct Builder {
    entries: Vec<CatalogEntry>,
}

impl Builder {
    fn add(&mut self, label: String, kind: &'static str, w: u32, poly: BiPoly, expected: Expected, source: &'static str) {
        self.entries.push(CatalogEntry {
            label,
            kind,
            w,
            poly,
            expected,
            source,
            w_family: None,
            verified_against_source: true,
        });
    }

    fn family(&mut self, family: &'static str) {
        if let Some(e) = self.entries.last_mut() {
            e.w_family = Some(family);
        }
    }

    fn gap(&mut self, label: String, kind: &'static str, w: u32, poly: BiPoly, delta: usize) {
        self.entries.push(CatalogEntry {
            label,
            kind,
            w,
            poly,
            expected: Expected { delta: Some(delta), ..Default::default() },
            source: "delta = 3 row; invariants not stated",
            w_family: None,
            verified_against_source: false,
        });
    }
}

/// All model germs with `w ≤ w_max`.
pub fn build_catalog(w_max: u32) -> Vec<CatalogEntry> {
    let mut b = Builder { entries: Vec::new() };
    let max_ideal = || ideal(&[&[(1, 1, 0)], &[(1, 0, 1)]]);
    for w in 2..=w_max {
        b.add(
            format!("A1, w={w}"),
            "A1",
            w,
            poly(&[(1, 1, 1), (1, w, 0)]),
            Expected { delta: Some(1), tau_log: Some(1), tes_log: Some(1), ea_log: max_ideal(), es_log: max_ideal(), ..Default::default() },
            "node",
        );
        b.family("A1");
    }
    b.add(
        "A2, w=2".into(),
        "A2",
        2,
        poly(&[(1, 0, 3), (1, 2, 0)]),
        Expected {
            delta: Some(1),
            tau_log: Some(2),
            tes_log: Some(2),
            tes_cup: Some(5),
            ea_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 2)]]),
            es_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 2)]]),
        },
        "cusp transversal to the divisor",
    );
    b.add(
        "A2, w=3".into(),
        "A2",
        3,
        poly(&[(1, 0, 2), (1, 3, 0)]),
        Expected {
            delta: Some(1),
            tau_log: Some(2),
            tes_log: Some(2),
            tes_cup: Some(7),
            ea_log: ideal(&[&[(1, 2, 0)], &[(1, 0, 1)]]),
            es_log: ideal(&[&[(1, 2, 0)], &[(1, 0, 1)]]),
        },
        "cusp tangent to the divisor",
    );
    b.add(
        "A3, w=2".into(),
        "A3",
        2,
        poly(&[(1, 0, 4), (1, 2, 0)]),
        Expected {
            delta: Some(2),
            tau_log: Some(3),
            tes_log: Some(3),
            tes_cup: Some(6),
            ea_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 3)]]),
            es_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 3)]]),
        },
        "tacnode transversal to the divisor",
    );
    for a in [1, 3] {
        b.add(
            format!("A3, w=4, a={a}"),
            "A3",
            4,
            poly(&[(1, 0, 2), (a, 2, 1), (1, 4, 0)]),
            Expected {
                delta: Some(2),
                tau_log: Some(3),
                tes_log: Some(2),
                tes_cup: (a == 1).then_some(9),
                ea_log: ideal(&[&[(2, 0, 1), (a, 2, 0)], &[(1, 3, 0)]]),
                es_log: ideal(&[&[(1, 0, 1)], &[(1, 2, 0)]]),
            },
            "tacnode with both branches tangent to the divisor",
        );
    }
    for w in 5..=w_max {
        b.add(
            format!("A3, w={w}"),
            "A3",
            w,
            &graph(2) * &graph(w - 2),
            Expected {
                delta: Some(2),
                tau_log: Some(2),
                tes_log: Some(2),
                ea_log: ideal(&[&[(1, 0, 1)], &[(1, 2, 0)]]),
                es_log: ideal(&[&[(1, 0, 1)], &[(1, 2, 0)]]),
                ..Default::default()
            },
            "two branches, contact 2",
        );
        b.family("A3");
    }
    b.add(
        "A4, w=2".into(),
        "A4",
        2,
        poly(&[(1, 0, 5), (1, 2, 0)]),
        Expected {
            delta: Some(2),
            tes_log: Some(3),
            tes_cup: Some(7),
            ea_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 4)]]),
            es_log: ideal(&[&[(1, 1, 0)], &[(1, 0, 4)]]),
            ..Default::default()
        },
        "A4 transversal to the divisor",
    );
    b.add(
        "A4, w=4".into(),
        "A4",
        4,
        poly(&[(1, 0, 2), (2, 2, 1), (1, 3, 1), (1, 4, 0)]),
        Expected {
            delta: Some(2),
            tau_log: Some(3),
            tes_log: Some(3),
            tes_cup: Some(10),
            ea_log: ideal(&[&[(1, 0, 1), (1, 2, 0)], &[(1, 3, 0)]]),
            es_log: ideal(&[&[(1, 0, 1), (1, 2, 0)], &[(1, 3, 0)]]),
        },
        "A4 with tangent equal to the divisor",
    );
    b.add(
        "A4, w=5, a=0".into(),
        "A4",
        5,
        poly(&[(1, 0, 2), (1, 5, 0)]),
        Expected {
            delta: Some(2),
            tau_log: Some(4),
            tes_log: Some(3),
            tes_cup: Some(12),
            ea_log: ideal(&[&[(1, 0, 1)], &[(1, 4, 0)]]),
            es_log: ideal(&[&[(1, 0, 1)], &[(1, 3, 0)]]),
        },
        "A4 tangent to the divisor, binomial",
    );
    for a in [1, 3] {
        b.add(
            format!("A4, w=5, a={a}"),
            "A4",
            5,
            poly(&[(1, 0, 2), (a, 3, 1), (1, 5, 0)]),
            Expected {
                delta: Some(2),
                tau_log: Some(3),
                tes_log: Some(3),
                tes_cup: Some(12),
                ea_log: ideal(&[&[(1, 0, 1)], &[(1, 3, 0)]]),
                es_log: ideal(&[&[(1, 0, 1)], &[(1, 3, 0)]]),
            },
            "A4 tangent to the divisor, trinomial",
        );
    }
    for k in [2u32, 3] {
        for w in (2 * k + 1)..=w_max {
            let k_usize = k as usize;
            b.add(
                format!("A{}, two branches k={k}, w={w}", 2 * k - 1),
                if k == 2 { "A3" } else { "A5" },
                w,
                &graph(k) * &graph(w - k),
                Expected {
                    delta: Some(k_usize),
                    tau_log: Some(k_usize),
                    tes_log: Some(k_usize),
                    ea_log: ideal(&[&[(1, 0, 1)], &[(1, k, 0)]]),
                    es_log: ideal(&[&[(1, 0, 1)], &[(1, k, 0)]]),
                    ..Default::default()
                },
                "two branches with contact k",
            );
            b.family(if k == 2 { "two branches k=2" } else { "two branches k=3" });
        }
    }
    for w in 7..=w_max {
        b.add(
            format!("A5, w={w}"),
            "A5",
            w,
            &graph(3) * &graph(w - 3),
            Expected {
                delta: Some(3),
                tau_log: Some(3),
                tes_log: Some(3),
                ea_log: ideal(&[&[(1, 0, 1)], &[(1, 3, 0)]]),
                es_log: ideal(&[&[(1, 0, 1)], &[(1, 3, 0)]]),
                ..Default::default()
            },
            "A5, two branches",
        );
        b.family("A5");
    }
    let d4_ideal = || ideal(&[&[(1, 2, 0)], &[(1, 1, 1)], &[(1, 0, 2)]]);
    for w in 4..=w_max {
        b.add(
            format!("D4, w={w}"),
            "D4",
            w,
            &(&BiPoly::x() * &poly(&[(1, 0, 1), (1, 1, 0)])) * &graph(w - 2),
            Expected { delta: Some(3), tau_log: Some(3), tes_log: Some(3), ea_log: d4_ideal(), es_log: d4_ideal(), ..Default::default() },
            "three smooth branches",
        );
        b.family("D4");
    }
    let d5_ideal = || ideal(&[&[(1, 2, 0)], &[(1, 1, 1)], &[(1, 0, 3)]]);
    for w in 5..=w_max {
        b.add(
            format!("D5, w={w}"),
            "D5",
            w,
            &graph(w - 2) * &poly(&[(1, 0, 3), (1, 2, 0)]),
            Expected { delta: Some(3), tau_log: Some(4), tes_log: Some(4), ea_log: d5_ideal(), es_log: d5_ideal(), ..Default::default() },
            "smooth branch and cusp",
        );
        b.family("D5");
    }
    b.gap("A5, w=6 (open row)".into(), "A5", 6, poly(&[(1, 0, 2), (1, 6, 0)]), 3);
    b.gap("A6, w=7 (open row)".into(), "A6", 7, poly(&[(1, 0, 2), (1, 7, 0)]), 3);
    b.gap("D4, w=3 (open row)".into(), "D4", 3, poly(&[(1, 3, 0), (-1, 1, 2)]), 3);
    b.gap("D5, w=4 (open row)".into(), "D5", 4, &graph(2) * &poly(&[(1, 0, 3), (1, 2, 0)]), 3);
    b.gap("E6, w=4 (open row)".into(), "E6", 4, poly(&[(1, 0, 3), (1, 4, 0)]), 3);
    b.entries
}

/// Values recomputed for one entry.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Computed {
    pub w: u32,
    pub delta_res: usize,
    pub delta_branch: usize,
    pub delta_cd: usize,
    pub tau: usize,
    pub tau_log: usize,
    pub tes_cup: usize,
    pub tes_log: usize,
    pub ea_log: Vec<String>,
    pub routes_agree: bool,
    pub chain_holds: bool,
    pub certification: Option<Certification>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub label: String,
    pub poly: String,
    pub source: String,
    pub verified_against_source: bool,
    pub passed: bool,
    pub diffs: Vec<String>,
    pub computed: Option<Computed>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityResult {
    pub family: String,
    pub stable: bool,
    /// `(w, τ_log, τ^es_log)` along the family.
    pub values: Vec<(u32, usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryResult {
    pub label: String,
    pub rejected: bool,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryResult>,
    pub stability: Vec<StabilityResult>,
    pub boundaries: Vec<BoundaryResult>,
}

impl CatalogReport {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.entries.len()
            && self.stability.iter().all(|s| s.stable)
            && self.boundaries.iter().all(|b| b.rejected)
    }
}

fn sorted_basis(gens: &[BiPoly]) -> Result<Vec<String>, crate::groebner::GroebnerError> {
    Ok(groebner_basis(gens, &MonomialOrder::lex_y_x())?.to_strings())
}

fn compare<T: PartialEq + std::fmt::Debug>(diffs: &mut Vec<String>, name: &str, expected: Option<T>, computed: T) {
    if let Some(e) = expected {
        if e != computed {
            diffs.push(format!("{name}: expected {e:?}, computed {computed:?}"));
        }
    }
}

fn compute(entry: &CatalogEntry, diffs: &mut Vec<String>) -> Result<Computed, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let g = normalize(&entry.poly).map_err(|x| e(&x))?;
    if g.w != entry.w {
        diffs.push(format!("w: expected {}, computed {}", entry.w, g.w));
    }
    let r = tau_report(&g).map_err(|x| e(&x))?;
    let closed = ideal_ea_log(&g, LogRoute::ClosedForm).map_err(|x| e(&x))?;
    let routes_agree = closed.to_strings() == r.ideal_ea_log.to_strings();
    if !routes_agree {
        diffs.push("I^ea_log: colon and closed-form routes differ".into());
    }
    let delta_branch = delta_branch(&g).map_err(|x| e(&x))?;
    let delta_cd = ideal_cd(&g).map_err(|x| e(&x))?.colength().ok_or("I^cd has infinite colength")?;
    if delta_branch != r.delta || delta_cd != r.delta {
        diffs.push(format!("delta routes disagree: resolution {}, branches {delta_branch}, I^cd {delta_cd}", r.delta));
    }
    let chain = inclusion_chain_check(&g).map_err(|x| e(&x))?;
    for link in chain.links.iter().filter(|l| !l.holds) {
        diffs.push(format!("chain link {} fails: {}", link.name, link.witness.clone().unwrap_or_default()));
    }
    let ex = &entry.expected;
    compare(diffs, "delta", ex.delta, r.delta);
    compare(diffs, "tau_log", ex.tau_log, r.tau_log);
    compare(diffs, "tes_log", ex.tes_log, r.tes_log);
    compare(diffs, "tau_es(yF)", ex.tes_cup, r.tes_cup);
    let ea_log = r.ideal_ea_log.to_strings();
    if let Some(stated) = &ex.ea_log {
        compare(diffs, "I^ea_log", Some(sorted_basis(stated).map_err(|x| e(&x))?), ea_log.clone());
    }
    let certification = match &ex.es_log {
        Some(stated) => {
            let c = certify_es_log(&g, stated).map_err(|x| e(&x))?;
            if let Certification::Refuted { reason } = &c {
                diffs.push(format!("stated I^es_log refuted: {reason}"));
            }
            Some(c)
        }
        None => None,
    };
    Ok(Computed {
        w: g.w,
        delta_res: r.delta,
        delta_branch,
        delta_cd,
        tau: r.tau,
        tau_log: r.tau_log,
        tes_cup: r.tes_cup,
        tes_log: r.tes_log,
        ea_log,
        routes_agree,
        chain_holds: chain.all_hold(),
        certification,
    })
}

pub fn verify_entry(entry: &CatalogEntry) -> EntryResult {
    let mut diffs = Vec::new();
    let computed = match compute(entry, &mut diffs) {
        Ok(c) => Some(c),
        Err(msg) => {
            diffs.push(format!("error: {msg}"));
            None
        }
    };
    EntryResult {
        label: entry.label.clone(),
        poly: entry.poly.to_text(),
        source: entry.source.to_string(),
        verified_against_source: entry.verified_against_source,
        passed: diffs.is_empty(),
        diffs,
        computed,
    }
}

/// `τ_log` and `τ^es_log` must not depend on `w` within a family.
pub fn w_stability(entries: &[CatalogEntry], results: &[EntryResult]) -> Vec<StabilityResult> {
    let mut families: Vec<&'static str> = entries.iter().filter_map(|e| e.w_family).collect();
    families.dedup();
    families
        .into_iter()
        .map(|family| {
            let values: Vec<(u32, usize, usize)> = entries
                .iter()
                .zip(results)
                .filter(|(e, _)| e.w_family == Some(family))
                .filter_map(|(e, r)| r.computed.as_ref().map(|c| (e.w, c.tau_log, c.tes_log)))
                .collect();
            let stable = values.windows(2).all(|p| (p[0].1, p[0].2) == (p[1].1, p[1].2));
            StabilityResult { family: family.to_string(), stable, values }
        })
        .collect()
}

/// The excluded parameters `a = ±2` of the `w = 4` tacnode family must not
/// give a tacnode.
pub fn genericity_boundaries() -> Vec<BoundaryResult> {
    [2, -2]
        .into_iter()
        .map(|a| {
            let label = format!("A3, w=4, a={a}");
            match normalize(&poly(&[(1, 0, 2), (a, 2, 1), (1, 4, 0)])) {
                Err(GermError::NonReduced) => BoundaryResult { label, rejected: true, reason: "non-reduced germ".into() },
                Err(e) => BoundaryResult { label, rejected: true, reason: e.to_string() },
                Ok(g) => match crate::resolution::delta_res(&g.poly) {
                    Ok(d) if d != 2 => BoundaryResult { label, rejected: true, reason: format!("delta = {d}") },
                    _ => BoundaryResult { label, rejected: false, reason: "still a tacnode".into() },
                },
            }
        })
        .collect()
}

pub fn verify_catalog(entries: &[CatalogEntry]) -> CatalogReport {
    let results: Vec<EntryResult> = entries.par_iter().map(verify_entry).collect();
    let stability = w_stability(entries, &results);
    CatalogReport { entries: results, stability, boundaries: genericity_boundaries() }
}

/// Catalog germs followed by `count` seeded random trinomials
/// `y^l + c·y^l'·x^k' + x^k` with `k ≤ 8`.
pub fn corpus(w_max: u32, seed: u64, count: usize) -> Vec<CurveGerm> {
    let mut germs: Vec<CurveGerm> = build_catalog(w_max).iter().filter_map(|e| normalize(&e.poly).ok()).collect();
    germs.extend(random_trinomials(seed, count));
    germs
}

pub fn random_trinomials(seed: u64, count: usize) -> Vec<CurveGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(2..=8u32);
        let l = rng.gen_range(2..=6u32);
        let kp = rng.gen_range(1..k);
        let lp = rng.gen_range(1..=l);
        let mut c = rng.gen_range(-4..=4i64);
        if c == 0 {
            c = 1;
        }
        if let Ok(g) = normalize(&poly(&[(1, 0, l), (c, kp, lp), (1, k, 0)])) {
            out.push(g);
        }
    }
    out
}
