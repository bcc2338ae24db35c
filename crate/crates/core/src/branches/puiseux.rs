//! Rational Newton–Puiseux expansions.  Each step of the Newton polygon
//! substitutes `T = ξ^v·T'^q, Y = T'^p·(ξ^u + Y')` with `u·q - v·p = 1`, so
//! conjugate expansions stay distinct and one representative over a field
//! of degree `d` stands for `d` geometric branches.

use crate::exactnum::rational::rational_nth_root;
use crate::exactnum::{root_factors, ExactError, FactorMode, FieldElem, SplitEvent, Tower, UniPoly};
use crate::germ;
use crate::series2::series::{inv_trunc, mul_trunc, truncate_uni};
use crate::series2::{BiPoly, Var};

use super::BranchError;

/// Recursion guard for the polygon iteration.
const MAX_DEPTH: usize = 64;

/// `X = c·T^q`, `Y = A(T) + b·T^e·Y'`.
#[derive(Clone, Debug)]
struct Chart {
    c: FieldElem,
    q: u32,
    a: UniPoly,
    b: FieldElem,
    e: u32,
}

impl Chart {
    fn identity() -> Self {
        Chart { c: FieldElem::one(), q: 1, a: UniPoly::zero(), b: FieldElem::one(), e: 0 }
    }

    /// Composes with `T = ξ^v·T'^q, Y' = T'^p·(ξ^u + Y'')`.
    fn then(&self, xi: &FieldElem, p: u32, q: u32, u: u32, v: u32) -> Chart {
        let xv = xi.pow(v);
        let mut a = vec![FieldElem::zero(); (self.a.degree().unwrap_or(0) as u32 * q + 1) as usize];
        for (k, ak) in self.a.coeffs().iter().enumerate() {
            a[k * q as usize] = ak * &xv.pow(k as u32);
        }
        let head = UniPoly::new(a);
        let e = q * self.e + p;
        let bv = &self.b * &xv.pow(self.e);
        let a = &head + &UniPoly::monomial(&bv * &xi.pow(u), e as usize);
        Chart { c: &self.c * &xv.pow(self.q), q: q * self.q, a, b: bv, e }
    }

    fn specialize(&self, from: &Tower, to: &Tower, level: usize) -> Chart {
        let s = |x: &FieldElem| from.specialize(to, level, x);
        Chart {
            c: s(&self.c),
            q: self.q,
            a: UniPoly::new(self.a.coeffs().iter().map(s).collect()),
            b: s(&self.b),
            e: self.e,
        }
    }
}

fn specialize_poly(p: &BiPoly, from: &Tower, to: &Tower, level: usize) -> BiPoly {
    BiPoly::from_terms(p.terms().map(|(&k, c)| (k, from.specialize(to, level, c))))
}

/// One branch (or a conjugate cluster of `degree` branches) at the origin.
#[derive(Clone, Debug)]
pub struct BranchParam {
    /// The curve the branch belongs to.
    curve: BiPoly,
    base: Tower,
    tower: Tower,
    /// The branch `x = 0`, parametrised as `(0, t)`.
    vertical: bool,
    chart: Chart,
    /// Equation of `Y'` with a unit `Y'`-derivative at the origin; `None`
    /// when `Y' = 0` exactly.
    tail: Option<BiPoly>,
    /// `T = scale·t`.
    scale: FieldElem,
}

impl BranchParam {
    fn vertical(curve: &BiPoly, base: &Tower) -> Self {
        BranchParam {
            curve: curve.clone(),
            base: base.clone(),
            tower: base.clone(),
            vertical: true,
            chart: Chart::identity(),
            tail: None,
            scale: FieldElem::one(),
        }
    }

    fn finish(curve: &BiPoly, base: &Tower, tower: Tower, chart: Chart, tail: Option<BiPoly>) -> Self {
        // Make x an exact power of t when the leading coefficient allows it.
        let scale = chart
            .c
            .as_rational()
            .and_then(|c| rational_nth_root(&c, chart.q))
            .map(|r| FieldElem::from(r).inv().expect("nonzero root"))
            .unwrap_or_else(FieldElem::one);
        BranchParam { curve: curve.clone(), base: base.clone(), tower, vertical: false, chart, tail, scale }
    }

    pub fn curve(&self) -> &BiPoly {
        &self.curve
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Number of conjugate geometric branches represented.
    pub fn degree(&self) -> usize {
        self.tower.degree_over(&self.base)
    }

    pub fn is_vertical(&self) -> bool {
        self.vertical
    }

    /// `ord_t x(t)`, or 0 for the vertical branch.
    pub fn ramification(&self) -> u32 {
        if self.vertical {
            0
        } else {
            self.chart.q
        }
    }

    /// Whether `y(t)` is a polynomial known exactly.
    pub fn is_exact(&self) -> bool {
        self.tail.is_none()
    }

    pub fn x_series(&self, n: usize) -> UniPoly {
        if self.vertical {
            return UniPoly::zero();
        }
        let q = self.chart.q;
        truncate_uni(&UniPoly::monomial(&self.chart.c * &self.scale.pow(q), q as usize), n)
    }

    pub fn y_series(&self, n: usize) -> Result<UniPoly, BranchError> {
        if self.vertical {
            return Ok(truncate_uni(&UniPoly::var(), n));
        }
        let e = self.chart.e as usize;
        let mut y = truncate_uni(&self.chart.a, n);
        if let Some(g) = &self.tail {
            if n > e {
                let s = solve_tail(g, n - e)?;
                y = &y + &s.shift(e).scale(&self.chart.b);
            }
        }
        let coeffs = y.coeffs().iter().enumerate().map(|(k, c)| c * &self.scale.pow(k as u32)).collect();
        Ok(UniPoly::new(coeffs))
    }

    /// `h(x(t), y(t)) mod t^n`.
    pub fn pullback_series(&self, h: &BiPoly, n: usize) -> Result<UniPoly, BranchError> {
        let x = self.x_series(n);
        let y = self.y_series(n)?;
        let maxj = h.degree_in(Var::Y).unwrap_or(0) as usize;
        let maxi = h.degree_in(Var::X).unwrap_or(0) as usize;
        let mut ypow = vec![truncate_uni(&UniPoly::one(), n)];
        for j in 0..maxj {
            ypow.push(mul_trunc(&ypow[j], &y, n));
        }
        let mut xpow = vec![truncate_uni(&UniPoly::one(), n)];
        for i in 0..maxi {
            xpow.push(mul_trunc(&xpow[i], &x, n));
        }
        let mut acc = UniPoly::zero();
        for (&(i, j), c) in h.terms() {
            acc = &acc + &mul_trunc(&xpow[i as usize], &ypow[j as usize], n).scale(c);
        }
        Ok(acc)
    }

    /// Re-bases the branch on each factor of a split relation.
    pub fn split(&self, ev: &SplitEvent) -> Result<Vec<BranchParam>, BranchError> {
        if ev.level < self.base.height() || ev.level >= self.tower.height() {
            return Err(BranchError::Exact(ExactError::Split(ev.clone())));
        }
        Ok(ev
            .factors
            .iter()
            .map(|f| {
                let t = self.tower.split_at(ev.level, f);
                let s = |x: &FieldElem| self.tower.specialize(&t, ev.level, x);
                BranchParam {
                    curve: self.curve.clone(),
                    base: self.base.clone(),
                    tower: t.clone(),
                    vertical: self.vertical,
                    chart: self.chart.specialize(&self.tower, &t, ev.level),
                    tail: self.tail.as_ref().map(|g| specialize_poly(g, &self.tower, &t, ev.level)),
                    scale: s(&self.scale),
                }
            })
            .collect())
    }
}

/// `S(T) mod T^n` with `g(T, S) = 0`, `S(0) = 0`, by Newton iteration.
fn solve_tail(g: &BiPoly, n: usize) -> Result<UniPoly, BranchError> {
    let rows = g.y_coefficients();
    let drows = g.partial(Var::Y).y_coefficients();
    let horner = |rs: &[UniPoly], s: &UniPoly, prec: usize| {
        let mut acc = UniPoly::zero();
        for r in rs.iter().rev() {
            acc = &mul_trunc(&acc, s, prec) + &truncate_uni(r, prec);
        }
        acc
    };
    let mut s = UniPoly::zero();
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let val = horner(&rows, &s, prec);
        let der = horner(&drows, &s, prec);
        let corr = mul_trunc(&val, &inv_trunc(&der, prec)?, prec);
        s = &s - &corr;
    }
    Ok(truncate_uni(&s, n))
}

/// All branches of `f` through the origin.
pub fn puiseux(f: &BiPoly) -> Result<Vec<BranchParam>, BranchError> {
    puiseux_with(f, FactorMode::Full)
}

pub fn puiseux_with(f: &BiPoly, mode: FactorMode) -> Result<Vec<BranchParam>, BranchError> {
    if f.is_zero() {
        return Err(BranchError::ZeroPolynomial);
    }
    if !f.coeff(0, 0).is_zero() {
        return Err(BranchError::NotThroughOrigin);
    }
    if !germ::is_reduced_at_origin(f)? {
        return Err(BranchError::NonReducedInput);
    }
    let base = f.tower();
    let mut out = Vec::new();
    let mut g = f.clone();
    if let Some(h) = g.div_x_pow(1) {
        out.push(BranchParam::vertical(f, &base));
        g = h;
    }
    if !g.coeff(0, 0).is_nonzero_checked()? {
        let expander = Expander { curve: f.clone(), base: base.clone(), mode };
        expander.expand(g, Chart::identity(), base.clone(), &mut out, 0)?;
    }
    Ok(out)
}

struct Expander {
    curve: BiPoly,
    base: Tower,
    mode: FactorMode,
}

/// An edge of the Newton polygon: `Y ~ T^(p/q)` with its edge polynomial.
struct Edge {
    p: u32,
    q: u32,
    /// Weighted degree `q·i + p·j` along the edge.
    weight: u32,
    poly: UniPoly,
}

impl Expander {
    fn expand(
        &self,
        mut g: BiPoly,
        chart: Chart,
        tower: Tower,
        out: &mut Vec<BranchParam>,
        depth: usize,
    ) -> Result<(), BranchError> {
        if depth > MAX_DEPTH {
            return Err(BranchError::DepthExceeded);
        }
        if let Some(h) = g.div_y_pow(1) {
            out.push(BranchParam::finish(&self.curve, &self.base, tower.clone(), chart.clone(), None));
            g = h;
            if g.coeff(0, 0).is_nonzero_checked()? {
                return Ok(());
            }
        }
        if g.coeff(0, 1).is_nonzero_checked()? {
            out.push(BranchParam::finish(&self.curve, &self.base, tower, chart, Some(g)));
            return Ok(());
        }
        for edge in newton_polygon(&g)? {
            let (u, v) = bezout(edge.p, edge.q);
            for rf in root_factors(&edge.poly, self.mode)? {
                let f = rf.factor;
                if f.degree() == Some(1) {
                    let xi = -&f.coeff(0);
                    let (g2, c2) = self.step(&g, &chart, &edge, &xi, u, v);
                    self.expand(g2, c2, tower.clone(), out, depth + 1)?;
                } else {
                    let level = tower.height();
                    let irreducible = rf.irreducible && f.tower().height() == tower.height();
                    let t = tower.extend_unchecked(&f, irreducible);
                    let xi = t.generator();
                    let (g2, c2) = self.step(&g.lift_to(&t), &chart, &edge, &xi, u, v);
                    self.expand_catching(g2, c2, t, level, out, depth + 1)?;
                }
            }
        }
        Ok(())
    }

    /// Expands in a freshly extended tower; a zero divisor in that level
    /// re-runs the expansion once per factor.
    fn expand_catching(
        &self,
        g: BiPoly,
        chart: Chart,
        tower: Tower,
        level: usize,
        out: &mut Vec<BranchParam>,
        depth: usize,
    ) -> Result<(), BranchError> {
        let mark = out.len();
        match self.expand(g.clone(), chart.clone(), tower.clone(), out, depth) {
            Err(BranchError::Exact(ExactError::Split(ev))) if ev.level == level => {
                out.truncate(mark);
                for fac in &ev.factors {
                    let t = tower.split_at(level, fac);
                    let g2 = specialize_poly(&g, &tower, &t, level);
                    let c2 = chart.specialize(&tower, &t, level);
                    self.expand_catching(g2, c2, t, level, out, depth)?;
                }
                Ok(())
            }
            r => r,
        }
    }

    fn step(&self, g: &BiPoly, chart: &Chart, edge: &Edge, xi: &FieldElem, u: u32, v: u32) -> (BiPoly, Chart) {
        let px = BiPoly::monomial(xi.pow(v), edge.q, 0);
        let qy = &BiPoly::monomial(xi.pow(u), edge.p, 0) + &BiPoly::monomial(FieldElem::one(), edge.p, 1);
        let g2 = g.compose(&px, &qy).div_x_pow(edge.weight).expect("edge weight divides the transform");
        (g2, chart.then(xi, edge.p, edge.q, u, v))
    }
}

/// `(u, v)` with `u·q - v·p = 1` and `0 ≤ v < q`.
fn bezout(p: u32, q: u32) -> (u32, u32) {
    let v = (0..q).find(|&v| (v as u64 * p as u64 + 1).is_multiple_of(q as u64)).expect("p, q coprime");
    (((v as u64 * p as u64 + 1) / q as u64) as u32, v)
}

/// Edges of the lower Newton polygon from the `Y`-axis to the `T`-axis.
fn newton_polygon(g: &BiPoly) -> Result<Vec<Edge>, BranchError> {
    let mut pts: Vec<(u32, u32)> = Vec::new();
    for (&(i, j), c) in g.terms() {
        if c.is_nonzero_checked()? {
            pts.push((i, j));
        }
    }
    let j0 = pts.iter().filter(|p| p.0 == 0).map(|p| p.1).min().expect("T does not divide the equation");
    let mut cur = (0u32, j0);
    let mut edges = Vec::new();
    while cur.1 > 0 {
        // Smallest slope (i - i_c)/(j_c - j); ties go to the farthest point.
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in pts.iter().filter(|p| p.1 < cur.1) {
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    let lhs = (i as i64 - cur.0 as i64) * (cur.1 - bj) as i64;
                    let rhs = (bi as i64 - cur.0 as i64) * (cur.1 - j) as i64;
                    if lhs < rhs || (lhs == rhs && j < bj) {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        let (ni, nj) = best.expect("Y does not divide the equation");
        let di = ni - cur.0;
        let dj = cur.1 - nj;
        let gcd = num_integer::gcd(di, dj);
        let (p, q) = (di / gcd, dj / gcd);
        let len = (dj / q) as usize;
        let coeffs: Vec<FieldElem> = (0..=len)
            .map(|k| g.coeff(ni - k as u32 * p, nj + k as u32 * q))
            .collect();
        edges.push(Edge { p, q, weight: q * ni + p * nj, poly: UniPoly::new(coeffs) });
        cur = (ni, nj);
    }
    Ok(edges)
}
