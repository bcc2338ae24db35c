//! Embedded resolution by point blow-ups: the tree of infinitely near points
//! with multiplicities, free/satellite and essential flags, and the
//! invariants read off from it.

use std::fmt;

use crate::exactnum::{root_factors, ExactError, FactorMode, FieldElem, Tower, UniPoly};
use crate::germ::{self, CurveGerm, GermError};
use crate::series2::BiPoly;

pub const DEFAULT_MAX_BLOWUPS: usize = 50;
pub const MAX_BLOWUPS_ENV: &str = "CURVELOG_MAX_BLOWUPS";

#[derive(Debug, Clone, thiserror::Error)]
pub enum ResolutionError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("non-reduced input")]
    NonReducedInput,
    #[error("resolution needs more than {cap} blow-ups")]
    BlowupCapExceeded { cap: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Germ(#[from] GermError),
}

/// How a node was reached from its parent.
#[derive(Clone, Debug, PartialEq)]
pub enum ChartStep {
    Root,
    /// `x = x', y = x'·(y' + r)` with `r` a root of `center`.
    X { center: String },
    /// `x = x'·y', y = y'`, origin only.
    Y,
}

impl fmt::Display for ChartStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartStep::Root => f.write_str("root"),
            ChartStep::X { center } => write!(f, "x-chart at {center} = 0"),
            ChartStep::Y => f.write_str("y-chart origin"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub step: ChartStep,
    /// Strict transform in local coordinates at the point.
    pub equation: BiPoly,
    /// Number of exceptional curves through the point.
    pub exceptional: u32,
    pub multiplicity: u32,
    /// Multiplicity of the reduced total transform.
    pub rtt_multiplicity: u32,
    pub free: bool,
    pub essential: bool,
    /// Number of conjugate geometric points represented.
    pub degree: usize,
}

impl ResolutionNode {
    pub fn satellite(&self) -> bool {
        !self.free
    }

    pub fn label(&self) -> String {
        format!(
            "m={}, rtt={}, {}, {}, deg={}",
            self.multiplicity,
            self.rtt_multiplicity,
            if self.free { "free" } else { "sat" },
            if self.essential { "ess" } else { "-" },
            self.degree
        )
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub input: BiPoly,
    /// Nodes in blow-up (depth-first) order.
    pub nodes: Vec<ResolutionNode>,
    pub blowups: usize,
}

impl ResolutionTree {
    pub fn essential(&self) -> impl Iterator<Item = &ResolutionNode> {
        self.nodes.iter().filter(|n| n.essential)
    }

    /// `Σ m(m+1)/2 - #free - 1` over essential points; 0 without any.
    pub fn tau_es(&self) -> usize {
        if self.essential().next().is_none() {
            return 0;
        }
        let sum: usize = self.essential().map(|n| n.degree * triangle(n.multiplicity)).sum();
        let free: usize = self.essential().filter(|n| n.free).map(|n| n.degree).sum();
        sum - free - 1
    }

    /// `Σ m(m-1)/2` over all points on the curve.
    pub fn delta(&self) -> usize {
        self.nodes.iter().map(|n| n.degree * triangle(n.multiplicity.saturating_sub(1))).sum()
    }

    /// Sorted multiset of `(m, free, essential, degree)` over essential and
    /// singular points.
    pub fn signature(&self) -> Vec<(u32, bool, bool, usize)> {
        let mut v: Vec<_> = self
            .nodes
            .iter()
            .filter(|n| n.essential || n.multiplicity > 1)
            .flat_map(|n| std::iter::repeat_n((n.multiplicity, n.free, n.essential, 1), n.degree))
            .collect();
        v.sort();
        v
    }

    /// Graphviz rendering, one node per point.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph resolution {\n  node [shape=box];\n");
        for n in &self.nodes {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, n.label()));
        }
        for n in &self.nodes {
            if let Some(p) = n.parent {
                s.push_str(&format!("  n{} -> n{};\n", p, n.id));
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn dump(&self) -> Vec<NodeDump> {
        self.nodes
            .iter()
            .map(|n| NodeDump {
                id: n.id,
                parent: n.parent,
                step: n.step.to_string(),
                equation: n.equation.to_text(),
                multiplicity: n.multiplicity,
                rtt_multiplicity: n.rtt_multiplicity,
                exceptional: n.exceptional,
                free: n.free,
                essential: n.essential,
                degree: n.degree,
            })
            .collect()
    }
}

/// Serializable view of a node.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct NodeDump {
    pub id: usize,
    pub parent: Option<usize>,
    pub step: String,
    pub equation: String,
    pub multiplicity: u32,
    pub rtt_multiplicity: u32,
    pub exceptional: u32,
    pub free: bool,
    pub essential: bool,
    pub degree: usize,
}

fn triangle(m: u32) -> usize {
    (m as usize) * (m as usize + 1) / 2
}

#[derive(Clone, Copy, Debug)]
pub struct ResolveOptions {
    pub mode: FactorMode,
    pub max_blowups: usize,
}

impl Default for ResolveOptions {
    /// Full factorisation; the cap honours `CURVELOG_MAX_BLOWUPS`.
    fn default() -> Self {
        let max_blowups = std::env::var(MAX_BLOWUPS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_BLOWUPS);
        ResolveOptions { mode: FactorMode::Full, max_blowups }
    }
}

pub fn resolve(p: &BiPoly) -> Result<ResolutionTree, ResolutionError> {
    resolve_with(p, ResolveOptions::default())
}

pub fn resolve_with(p: &BiPoly, opts: ResolveOptions) -> Result<ResolutionTree, ResolutionError> {
    if p.is_zero() {
        return Err(ResolutionError::ZeroPolynomial);
    }
    if !p.coeff(0, 0).is_zero() {
        return Err(ResolutionError::NotThroughOrigin);
    }
    if !germ::is_reduced_at_origin(p)? {
        return Err(ResolutionError::NonReducedInput);
    }
    let base = p.tower();
    let engine = Engine { base: base.clone(), opts };
    let root = Local { eq: p.clone(), tower: base, ex_x: false, ex_y: false, step: ChartStep::Root };
    let mut blowups = 0;
    let sub = engine.explore(&root, &mut blowups, 0)?;
    let mut nodes = Vec::new();
    flatten(sub, None, &mut nodes);
    Ok(ResolutionTree { input: p.clone(), nodes, blowups })
}

/// `τ^es` of the curve `p`.
pub fn tau_es(p: &BiPoly) -> Result<usize, ResolutionError> {
    Ok(resolve(p)?.tau_es())
}

/// `δ` of the curve `p` from its multiplicity sequence.
pub fn delta_res(p: &BiPoly) -> Result<usize, ResolutionError> {
    Ok(resolve(p)?.delta())
}

/// `τ^es(y·F) - (2w - 1)`, or 0 when `y·F` is a node.
pub fn tes_log(g: &CurveGerm) -> Result<i64, ResolutionError> {
    Ok(tes_log_from_cup(tau_es(&g.with_divisor())?, g.w))
}

/// The node convention `τ^es = 0` would give -1 for a smooth germ with `w = 1`,
/// whose logarithmic equisingular deformations are trivial.
pub fn tes_log_from_cup(tes_cup: usize, w: u32) -> i64 {
    if tes_cup == 0 {
        0
    } else {
        tes_cup as i64 - (2 * w as i64 - 1)
    }
}

struct Local {
    eq: BiPoly,
    tower: Tower,
    ex_x: bool,
    ex_y: bool,
    step: ChartStep,
}

struct Sub {
    node: ResolutionNode,
    children: Vec<Sub>,
}

fn flatten(sub: Sub, parent: Option<usize>, out: &mut Vec<ResolutionNode>) {
    let id = out.len();
    let mut node = sub.node;
    node.id = id;
    node.parent = parent;
    out.push(node);
    for c in sub.children {
        flatten(c, Some(id), out);
    }
}

struct Engine {
    base: Tower,
    opts: ResolveOptions,
}

impl Engine {
    fn explore(&self, loc: &Local, blowups: &mut usize, depth: usize) -> Result<Sub, ResolutionError> {
        let cap = self.opts.max_blowups;
        if depth > cap {
            return Err(ResolutionError::BlowupCapExceeded { cap });
        }
        let m = loc.eq.mult_order_checked()?.ok_or(ResolutionError::ZeroPolynomial)?;
        let e = loc.ex_x as u32 + loc.ex_y as u32;
        let essential = !self.normal_crossing(loc, m, e)?;
        let node = ResolutionNode {
            id: 0,
            parent: None,
            step: loc.step.clone(),
            equation: loc.eq.clone(),
            exceptional: e,
            multiplicity: m,
            rtt_multiplicity: m + e,
            free: e <= 1,
            essential,
            degree: loc.tower.degree_over(&self.base),
        };
        let mut children = Vec::new();
        if !essential {
            return Ok(Sub { node, children });
        }
        *blowups += 1;
        if *blowups > cap {
            return Err(ResolutionError::BlowupCapExceeded { cap });
        }

        // Chart x: points of the new exceptional line x = 0 other than the y-direction.
        let g1 = loc.eq.blow_up_chart_x().div_x_pow(m).expect("order m");
        let tangent = g1.restrict_x0();
        let k = checked_order(&tangent)?;
        if k > 0 {
            let child = Local {
                eq: g1.clone(),
                tower: loc.tower.clone(),
                ex_x: true,
                ex_y: loc.ex_y,
                step: ChartStep::X { center: "y".into() },
            };
            children.extend(self.run_child(child, None, blowups, depth)?);
        }
        let rest = UniPoly::new(tangent.coeffs()[k..].to_vec());
        if rest.degree().unwrap_or(0) > 0 {
            for rf in root_factors(&rest, self.opts.mode)? {
                let f = rf.factor;
                if f.degree() == Some(1) {
                    let r = -&f.coeff(0);
                    let child = Local {
                        eq: g1.shift_y(&r),
                        tower: loc.tower.clone(),
                        ex_x: true,
                        ex_y: false,
                        step: ChartStep::X { center: f.fmt_in("y") },
                    };
                    children.extend(self.run_child(child, None, blowups, depth)?);
                } else {
                    let irreducible = rf.irreducible && f.tower().height() == loc.tower.height();
                    let level = loc.tower.height();
                    let t = loc.tower.extend_unchecked(&f, irreducible);
                    let alpha = t.generator();
                    let child = Local {
                        eq: g1.lift_to(&t).shift_y(&alpha),
                        tower: t,
                        ex_x: true,
                        ex_y: false,
                        step: ChartStep::X { center: f.fmt_in("y") },
                    };
                    children.extend(self.run_child(child, Some(level), blowups, depth)?);
                }
            }
        }

        // Chart y: only its origin is new.
        let g2 = loc.eq.blow_up_chart_y().div_y_pow(m).expect("order m");
        if !g2.coeff(0, 0).is_nonzero_checked()? {
            let child = Local { eq: g2, tower: loc.tower.clone(), ex_x: loc.ex_x, ex_y: true, step: ChartStep::Y };
            children.extend(self.run_child(child, None, blowups, depth)?);
        }
        Ok(Sub { node, children })
    }

    /// Explores a child; a zero divisor in the level the child introduced
    /// re-runs it once per factor of that relation.
    fn run_child(
        &self,
        child: Local,
        level: Option<usize>,
        blowups: &mut usize,
        depth: usize,
    ) -> Result<Vec<Sub>, ResolutionError> {
        let saved = *blowups;
        match self.explore(&child, blowups, depth + 1) {
            Ok(s) => Ok(vec![s]),
            Err(ResolutionError::Exact(ExactError::Split(ev))) if Some(ev.level) == level => {
                *blowups = saved;
                let mut out = Vec::new();
                for fac in &ev.factors {
                    let t = child.tower.split_at(ev.level, fac);
                    let eq = BiPoly::from_terms(
                        child.eq.terms().map(|(&k, c)| (k, child.tower.specialize(&t, ev.level, c))),
                    );
                    let step = ChartStep::X { center: t.relation(ev.level).fmt_in("y") };
                    let next = Local { eq, tower: t, ex_x: child.ex_x, ex_y: child.ex_y, step };
                    out.extend(self.run_child(next, level, blowups, depth)?);
                }
                Ok(out)
            }
            Err(e) => Err(e),
        }
    }

    /// Whether the reduced total transform is smooth or an ordinary node.
    fn normal_crossing(&self, loc: &Local, m: u32, e: u32) -> Result<bool, ExactError> {
        let eq = &loc.eq;
        Ok(match (m, e) {
            (m, e) if m + e <= 1 => true,
            (2, 0) => {
                let (a, b, c) = (eq.coeff(2, 0), eq.coeff(1, 1), eq.coeff(0, 2));
                let disc = &(&b * &b) - &(&FieldElem::from(4) * &(&a * &c));
                disc.is_nonzero_checked()?
            }
            (1, 1) => {
                // Tangent must differ from the exceptional line.
                let across = if loc.ex_x { eq.coeff(0, 1) } else { eq.coeff(1, 0) };
                across.is_nonzero_checked()?
            }
            _ => false,
        })
    }
}

/// Lowest index with a unit coefficient; zero divisors below it split.
fn checked_order(p: &UniPoly) -> Result<usize, ExactError> {
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_nonzero_checked()? {
            return Ok(i);
        }
    }
    Err(ExactError::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
        terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
    }

    fn with_y(f: &BiPoly) -> BiPoly {
        &BiPoly::y() * f
    }

    #[test]
    fn cusp_with_divisor_tree() {
        let t = resolve(&with_y(&p(&[(1, 0, 2), (1, 3, 0)]))).unwrap();
        let ess: Vec<(u32, bool)> = t.essential().map(|n| (n.multiplicity, n.free)).collect();
        assert_eq!(ess, vec![(3, true), (2, true), (1, false)]);
        assert_eq!(t.tau_es(), 7);
        assert_eq!(t.blowups, 3);
    }

    #[test]
    fn worked_tau_es_values() {
        assert_eq!(tau_es(&with_y(&p(&[(1, 0, 3), (1, 2, 0)]))).unwrap(), 5);
        assert_eq!(tau_es(&with_y(&p(&[(1, 0, 4), (1, 2, 0)]))).unwrap(), 6);
        assert_eq!(tau_es(&with_y(&p(&[(1, 0, 2), (1, 2, 1), (1, 4, 0)]))).unwrap(), 9);
        assert_eq!(tau_es(&with_y(&p(&[(1, 0, 2), (2, 2, 1), (1, 3, 1), (1, 4, 0)]))).unwrap(), 10);
        assert_eq!(tau_es(&with_y(&p(&[(1, 0, 2), (1, 5, 0)]))).unwrap(), 12);
    }

    #[test]
    fn tangential_a3_has_two_free_triple_points() {
        let t = resolve(&with_y(&p(&[(1, 0, 2), (1, 2, 1), (1, 4, 0)]))).unwrap();
        let triples = t.essential().filter(|n| n.multiplicity == 3 && n.free).map(|n| n.degree).sum::<usize>();
        assert_eq!(triples, 2);
    }

    #[test]
    fn normal_crossings_need_nothing() {
        let t = resolve(&p(&[(1, 1, 1)])).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.blowups, 0);
        assert_eq!(t.tau_es(), 0);
        assert_eq!(t.delta(), 1);
        let smooth = resolve(&p(&[(1, 0, 1), (1, 2, 0)])).unwrap();
        assert_eq!(smooth.nodes.len(), 1);
        assert_eq!(smooth.tau_es(), 0);
    }

    #[test]
    fn delta_from_multiplicities() {
        assert_eq!(delta_res(&p(&[(1, 0, 2), (1, 3, 0)])).unwrap(), 1);
        assert_eq!(delta_res(&p(&[(1, 0, 2), (1, 6, 0)])).unwrap(), 3);
        for l in 2..=5u32 {
            for k in l..=7u32 {
                if num_integer::gcd(k, l) == 1 {
                    let d = delta_res(&p(&[(1, 0, l), (1, k, 0)])).unwrap();
                    assert_eq!(d as u32, (k - 1) * (l - 1) / 2, "y^{l}+x^{k}");
                }
            }
        }
    }

    #[test]
    fn conjugate_points_carry_degree() {
        // Second-level points are the roots of y^2 + y + 1.
        let t = resolve(&p(&[(1, 0, 2), (1, 2, 1), (1, 4, 0)])).unwrap();
        assert!(t.nodes.iter().any(|n| n.degree == 2));
        let dynamic = resolve_with(
            &p(&[(1, 0, 2), (1, 2, 1), (1, 4, 0)]),
            ResolveOptions { mode: FactorMode::Dynamic, max_blowups: 50 },
        )
        .unwrap();
        assert_eq!(t.signature(), dynamic.signature());
    }

    #[test]
    fn zero_divisor_splits_subtree() {
        // Over Q(s), s^2 = -3, with roots r1, r2 of y^2 + y + 1:
        // ((y - r1 x)^2 + x^3)((y - r2 x)^2 + x^5); the two tangent
        // directions are conjugate over Q but behave differently.
        let s_tower = Tower::rationals().extend(&UniPoly::from_ints(&[3, 0, 1])).unwrap();
        let s = s_tower.generator();
        let half = FieldElem::from(crate::exactnum::rat(1, 2));
        let r1 = &(&s - &FieldElem::from(1)) * &half;
        let r2 = &(&(-&s) - &FieldElem::from(1)) * &half;
        let line = |r: &FieldElem| &BiPoly::y() - &BiPoly::x().scale(r);
        let a = &line(&r1).pow(2) + &p(&[(1, 3, 0)]);
        let b = &line(&r2).pow(2) + &p(&[(1, 5, 0)]);
        let f = &a * &b;
        let full = resolve(&f).unwrap();
        let dynamic = resolve_with(&f, ResolveOptions { mode: FactorMode::Dynamic, max_blowups: 50 }).unwrap();
        assert_eq!(full.signature(), dynamic.signature());
        assert_eq!(full.tau_es(), dynamic.tau_es());
        assert_eq!(full.delta(), dynamic.delta());
        // The dynamic run had to split the adjoined level.
        assert!(dynamic.nodes.iter().all(|n| n.degree == 1));
        assert!(dynamic.nodes.iter().any(|n| n.equation.tower().degrees().last() == Some(&1)));
    }

    #[test]
    fn chart_swap_symmetry() {
        let germs = [
            p(&[(1, 0, 3), (1, 2, 0)]),
            p(&[(1, 0, 2), (2, 2, 1), (1, 3, 1), (1, 4, 0)]),
            p(&[(1, 1, 2), (1, 2, 1), (1, 3, 1), (1, 4, 0)]),
        ];
        for g in germs {
            let a = resolve(&g).unwrap();
            let b = resolve(&g.swap()).unwrap();
            assert_eq!(a.signature(), b.signature());
            assert_eq!(a.tau_es(), b.tau_es());
        }
    }

    #[test]
    fn dot_and_dump_are_stable() {
        let t = resolve(&with_y(&p(&[(1, 0, 2), (1, 3, 0)]))).unwrap();
        let dot = t.to_dot();
        assert!(dot.contains("m=3, rtt=3, free, ess, deg=1"));
        assert!(dot.contains("m=1, rtt=3, sat, ess, deg=1"));
        assert_eq!(t.dump(), resolve(&with_y(&p(&[(1, 0, 2), (1, 3, 0)]))).unwrap().dump());
    }

    #[test]
    fn blowup_cap_is_enforced() {
        let r = resolve_with(&p(&[(1, 0, 2), (1, 9, 0)]), ResolveOptions { mode: FactorMode::Full, max_blowups: 2 });
        assert!(matches!(r, Err(ResolutionError::BlowupCapExceeded { cap: 2 })));
        let square = p(&[(1, 0, 2), (2, 2, 1), (1, 4, 0)]);
        assert!(matches!(resolve(&square), Err(ResolutionError::NonReducedInput)));
    }
}
