//! Acceptance criteria, one PASS/FAIL line each. Every criterion is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};

use curvelog::branches::{delta_branch, ideal_cd, inclusion_chain_check};
use curvelog::catalog::corpus;
use curvelog::cli::{cmd_verify_catalog, Format};
use curvelog::exactnum::{rat, FactorMode, Rational, Tower, UniPoly};
use curvelog::germ::{normalize, CurveGerm};
use curvelog::groebner::{groebner_basis, is_groebner_basis, MonomialOrder};
use curvelog::logideals::{
    ideal_ea, ideal_ea_log, ideal_ea_rel, semiuniversal_family, tau_report, tjurina_ideal, Flavor, LogRoute,
};
use curvelog::resolution::{delta_res, resolve_with, tau_es, tes_log, tes_log_from_cup, ResolveOptions};
use curvelog::series2::{scaling_solve, BiPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 20240601;
const CORPUS_RANDOM: usize = 40;

type Check = Result<(), String>;

fn p(terms: &[(i64, u32, u32)]) -> BiPoly {
    terms.iter().fold(BiPoly::zero(), |acc, &(c, i, j)| &acc + &BiPoly::term(c, i, j))
}

fn germ(q: &BiPoly) -> Result<CurveGerm, String> {
    normalize(q).map_err(|e| format!("{q}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn test_corpus() -> Vec<CurveGerm> {
    corpus(10, CORPUS_SEED, CORPUS_RANDOM)
}

fn colength(i: &curvelog::groebner::IdealBasis) -> usize {
    i.colength().expect("finite colength")
}

fn catalog_table() -> Check {
    let out = cmd_verify_catalog(10, Format::Text);
    let failures: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("FAIL") || l.contains("diff:")).collect();
    ensure(out.code == 0, || failures.join("; "))
}

fn worked_tes_values() -> Check {
    let cases: [(&[(i64, u32, u32)], usize); 6] = [
        (&[(1, 0, 3), (1, 2, 0)], 5),
        (&[(1, 0, 4), (1, 2, 0)], 6),
        (&[(1, 0, 2), (1, 3, 0)], 7),
        (&[(1, 0, 2), (1, 2, 1), (1, 4, 0)], 9),
        (&[(1, 0, 2), (2, 2, 1), (1, 3, 1), (1, 4, 0)], 10),
        (&[(1, 0, 2), (1, 5, 0)], 12),
    ];
    for (terms, expected) in cases {
        let yf = &BiPoly::y() * &p(terms);
        let got = tau_es(&yf).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("tau_es({yf}) = {got}, expected {expected}"))?;
    }
    Ok(())
}

fn swapped_tes(g: &CurveGerm) -> Result<usize, String> {
    let opts = ResolveOptions { mode: FactorMode::Dynamic, ..Default::default() };
    let tree = resolve_with(&g.with_divisor().swap(), opts).map_err(|e| e.to_string())?;
    Ok(tree.tau_es())
}

fn tau_identities() -> Check {
    let germs = test_corpus();
    ensure(germs.len() >= 50, || format!("corpus has only {} germs", germs.len()))?;
    for g in &germs {
        let w = g.w as i64;
        let e = |x: &dyn std::fmt::Display| format!("{}: {x}", g.poly);
        let log = colength(&ideal_ea_log(g, LogRoute::ClosedForm).map_err(|x| e(&x))?) as i64;
        let rel_dp = colength(&ideal_ea_rel(g, true).map_err(|x| e(&x))?) as i64;
        let rel_d = colength(&ideal_ea_rel(g, false).map_err(|x| e(&x))?) as i64;
        let cup = colength(&tjurina_ideal(&g.with_divisor()).map_err(|x| e(&x))?) as i64;
        ensure(log == rel_dp - w && log == rel_d - (w - 1) && log == cup - (2 * w - 1), || {
            format!("{}: tau_log {log}, tau_rel_DP {rel_dp}, tau_rel_D {rel_d}, tau(C+D) {cup}, w {w}", g.poly)
        })?;
        let es_log = tes_log(g).map_err(|x| e(&x))?;
        let es_cup = swapped_tes(g)?;
        ensure(es_log == tes_log_from_cup(es_cup, g.w), || {
            format!("{}: tes_log {es_log} but swapped-chart tau_es(C+D) = {es_cup}", g.poly)
        })?;
    }
    Ok(())
}

fn lemma_formulas() -> Check {
    let lex_x_y = MonomialOrder::lex_x_y();
    let lex_y_x = MonomialOrder::lex_y_x();
    for k in 2..=8u32 {
        for l in 2..=k {
            let g = germ(&p(&[(1, 0, l), (1, k, 0)]))?;
            let stated = groebner_basis(&[p(&[(1, 0, l - 1)]), p(&[(1, k - 1, 0)])], &lex_y_x).unwrap();
            let ea = ideal_ea(&g).map_err(|e| e.to_string())?;
            let log = ideal_ea_log(&g, LogRoute::Colon).map_err(|e| e.to_string())?;
            ensure(ea.to_strings() == stated.to_strings() && log.to_strings() == stated.to_strings(), || {
                format!("binomial y^{l}+x^{k}: I^ea {:?}, I^ea_log {:?}", ea.to_strings(), log.to_strings())
            })?;
            let tau_log = colength(&log) as u32;
            ensure(tau_log == (k - 1) * (l - 1), || format!("binomial y^{l}+x^{k}: tau_log {tau_log}"))?;
        }
    }
    let mut tuples = 0;
    for k in 2..=8u32 {
        for kp in 1..k {
            for l in 1..=8u32 {
                for lp in l.div_ceil(2)..=l {
                    if k * lp + kp * l == k * l {
                        continue;
                    }
                    tuples += 1;
                    let g = germ(&p(&[(1, 0, l), (1, kp, lp), (1, k, 0)]))?;
                    let f1 = p(&[(k as i64, k - 1, 0), (kp as i64, kp - 1, lp)]);
                    let stated = vec![f1, p(&[(1, kp, lp - 1)]), p(&[(1, 0, l - 1)])];
                    let label = format!("y^{l} + y^{lp}x^{kp} + x^{k}");
                    ensure(is_groebner_basis(&stated, &lex_x_y).unwrap(), || format!("{label}: not a Groebner basis"))?;
                    let log = ideal_ea_log(&g, LogRoute::Colon).map_err(|e| e.to_string())?;
                    let same = groebner_basis(&stated, &lex_y_x).unwrap().to_strings() == log.to_strings();
                    ensure(same, || format!("{label}: stated basis generates a different ideal"))?;
                    let expected = (k - 1) * (lp - 1) + kp * (l - lp);
                    let got = colength(&log) as u32;
                    ensure(got == expected, || format!("{label}: tau_log {got}, expected {expected}"))?;
                }
            }
        }
    }
    ensure(tuples > 0, || "no admissible tuples".into())
}

fn routes_and_chain() -> Check {
    for g in test_corpus() {
        let a = ideal_ea_log(&g, LogRoute::Colon).map_err(|e| e.to_string())?;
        let b = ideal_ea_log(&g, LogRoute::ClosedForm).map_err(|e| e.to_string())?;
        ensure(a.to_strings() == b.to_strings(), || format!("{}: routes differ", g.poly))?;
        let chain = inclusion_chain_check(&g).map_err(|e| e.to_string())?;
        ensure(chain.all_hold(), || {
            let bad: Vec<String> = chain
                .links
                .iter()
                .filter(|l| !l.holds)
                .map(|l| format!("{} ({})", l.name, l.witness.clone().unwrap_or_default()))
                .collect();
            format!("{}: {}", g.poly, bad.join(", "))
        })?;
    }
    Ok(())
}

fn delta_agreement() -> Check {
    let check = |g: &CurveGerm| -> Result<usize, String> {
        let a = delta_res(&g.poly).map_err(|e| e.to_string())?;
        let b = delta_branch(g).map_err(|e| e.to_string())?;
        let c = colength(&ideal_cd(g).map_err(|e| e.to_string())?);
        ensure(a == b && b == c, || format!("{}: resolution {a}, branches {b}, I^cd {c}", g.poly))?;
        Ok(a)
    };
    for g in test_corpus() {
        check(&g)?;
    }
    for l in 2..=8u32 {
        for k in l..=8u32 {
            if num_integer::gcd(k, l) != 1 {
                continue;
            }
            let d = check(&germ(&p(&[(1, 0, l), (1, k, 0)]))?)? as u32;
            ensure(d == (k - 1) * (l - 1) / 2, || format!("y^{l}+x^{k}: delta {d}"))?;
        }
    }
    Ok(())
}

fn deformation_families() -> Check {
    let remarks: [(BiPoly, &str, Vec<BiPoly>); 3] = [
        (p(&[(1, 1, 1), (1, 5, 0)]), "y*(x + t1) + x^5", vec![BiPoly::one()]),
        (p(&[(1, 0, 3), (1, 2, 0)]), "y*(y^2 + t1*y + t2) + x^2", vec![BiPoly::one(), BiPoly::y()]),
        (p(&[(1, 0, 2), (1, 3, 0)]), "y*(y + t1*x + t2) + x^3", vec![BiPoly::one(), BiPoly::x()]),
    ];
    for (q, template, basis) in remarks {
        let fam = semiuniversal_family(&germ(&q)?, Flavor::Log).map_err(|e| e.to_string())?;
        ensure(fam.template == template && fam.basis == basis, || {
            format!("{q}: template {} basis {:?}", fam.template, fam.basis)
        })?;
    }
    for w in 2..=8u32 {
        let fam = semiuniversal_family(&germ(&p(&[(1, 1, 1), (1, w, 0)]))?, Flavor::Log).map_err(|e| e.to_string())?;
        ensure(fam.template == format!("y*(x + t1) + x^{w}"), || fam.template.clone())?;
    }
    for g in test_corpus() {
        let r = tau_report(&g).map_err(|e| e.to_string())?;
        let log = semiuniversal_family(&g, Flavor::Log).map_err(|e| e.to_string())?;
        let abs = semiuniversal_family(&g, Flavor::Absolute).map_err(|e| e.to_string())?;
        ensure(log.k == r.tau_log && abs.k == r.tau, || {
            format!("{}: k_log {} tau_log {}, k {} tau {}", g.poly, log.k, r.tau_log, abs.k, r.tau)
        })?;
    }
    Ok(())
}

// Truncated power series over Q, independent of the library's series code.
fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); n];
    out[0] = a[0].recip();
    for k in 1..n {
        let mut s = Rational::from_integer(0.into());
        for i in 1..=k.min(a.len() - 1) {
            s += &a[i] * &out[k - i];
        }
        out[k] = -s * &out[0];
    }
    out
}

fn series_pow(a: &[Rational], e: i32, n: usize) -> Vec<Rational> {
    let base = if e < 0 { series_inv(a, n) } else { a[..a.len().min(n)].to_vec() };
    let mut out = vec![Rational::from_integer(0.into()); n];
    out[0] = Rational::from_integer(1.into());
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, n);
    }
    out
}

/// `u(s)` for a series `s` without constant term.
fn series_compose(u: &[Rational], s: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); n];
    let mut power = series_pow(s, 0, n);
    for c in u {
        for (o, pw) in out.iter_mut().zip(&power) {
            *o += c * pw;
        }
        power = series_mul(&power, s, n);
    }
    out
}

fn scaling_solver() -> Check {
    const N: usize = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let exps = [-2, -1, 1, 2, 3];
    for trial in 0..100 {
        let deg = rng.gen_range(1..=6);
        let mut coeffs = vec![rat(1, 1)];
        for _ in 0..deg {
            coeffs.push(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        }
        let u = UniPoly::from_rationals(&coeffs);
        for &d in &exps {
            for &e in &exps {
                let v = scaling_solve(&u, d, e, N as u32).map_err(|x| x.to_string())?;
                let v: Vec<Rational> = v.as_rationals().ok_or("non-rational solution")?;
                let mut xv = vec![Rational::from_integer(0.into())];
                xv.extend(series_pow(&v, e, N).into_iter().take(N - 1));
                let residual = series_mul(&series_pow(&v, d, N), &series_compose(&coeffs, &xv, N), N);
                let one = series_pow(&[rat(1, 1)], 0, N);
                ensure(residual == one, || format!("unit #{trial} (d, e) = ({d}, {e}): residual {residual:?}"))?;
            }
        }
    }
    Ok(())
}

fn conjugate_soundness() -> Check {
    let f = p(&[(1, 0, 2), (1, 2, 1), (1, 4, 0)]);
    let yf = &BiPoly::y() * &f;
    let dynamic = resolve_with(&yf, ResolveOptions { mode: FactorMode::Dynamic, ..Default::default() })
        .map_err(|e| e.to_string())?;
    ensure(dynamic.nodes.iter().any(|n| n.degree == 2), || "no conjugate node found".into())?;
    // Adjoin a root of y^2 + y + 1 up front so that the conjugate points are rational.
    let tower = Tower::rationals().extend(&UniPoly::from_ints(&[1, 1, 1])).map_err(|e| e.to_string())?;
    let split = resolve_with(&yf.lift_to(&tower), ResolveOptions { mode: FactorMode::Full, ..Default::default() })
        .map_err(|e| e.to_string())?;
    ensure(split.nodes.iter().all(|n| n.degree == 1), || "explicit extension left a conjugate node".into())?;
    let (a, b) = (dynamic.tau_es(), split.tau_es());
    ensure(a == b && a == 9, || format!("dynamic {a}, explicit extension {b}"))?;
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("classification table via verify-catalog --wmax 10", catalog_table),
        ("worked tau_es(yF) values", worked_tes_values),
        ("tau and tau_es identities on the corpus", tau_identities),
        ("binomial and trinomial lemma formulas", lemma_formulas),
        ("route equality and inclusion chain", routes_and_chain),
        ("delta by resolution, branches and I^cd", delta_agreement),
        ("semiuniversal log deformations", deformation_families),
        ("scaling solver residuals", scaling_solver),
        ("conjugate infinitely near points", conjugate_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
