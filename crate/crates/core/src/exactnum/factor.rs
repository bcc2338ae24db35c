//! Factorisation over Q: squarefree decomposition, then Zassenhaus
//! (modular factorisation, Hensel lifting, recombination).

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::rational::{common_denominator, Rational};
use super::unipoly::UniPoly;
use super::ExactError;

type IntPoly = Vec<BigInt>;

/// Monic irreducible factors over Q with multiplicities, sorted by degree
/// and then by coefficients.  The product reproduces `p` up to its leading
/// coefficient.
pub fn factor_rational(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, ExactError> {
    p.as_rationals().ok_or(ExactError::NotRational)?;
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, mult) in p.squarefree_decomposition()? {
        let qs = g.as_rationals().expect("rational");
        for h in factor_squarefree_integer(&primitive_integer(&qs)) {
            let hq: Vec<Rational> = h.into_iter().map(Rational::from_integer).collect();
            out.push((UniPoly::from_rationals(&hq).monic()?, mult));
        }
    }
    out.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Rational roots with multiplicities, in increasing order.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(Rational, usize)>, ExactError> {
    let mut roots: Vec<(Rational, usize)> = factor_rational(p)?
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, m)| (-f.coeff(0).as_rational().expect("rational"), m))
        .collect();
    roots.sort();
    Ok(roots)
}

fn sort_key(p: &UniPoly) -> (usize, Vec<Rational>) {
    (p.degree().unwrap_or(0), p.as_rationals().unwrap_or_default())
}

/// Clears denominators and content; makes the leading coefficient positive.
pub(crate) fn primitive_integer(qs: &[Rational]) -> IntPoly {
    let d = common_denominator(qs);
    let mut v: IntPoly = qs.iter().map(|q| (q * Rational::from_integer(d.clone())).to_integer()).collect();
    let c = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !c.is_zero() {
        for x in v.iter_mut() {
            *x /= &c;
        }
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

fn degree(f: &IntPoly) -> usize {
    f.len() - 1
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect();
    modp::trim(&mut v);
    v
}

/// Irreducible primitive integer factors of a squarefree primitive polynomial.
pub(crate) fn factor_squarefree_integer(f: &IntPoly) -> Vec<IntPoly> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    // Pull out powers of the variable first.
    let z = f.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if z > 0 {
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        let rest: IntPoly = f[z..].to_vec();
        if rest.len() > 1 {
            out.extend(factor_squarefree_integer(&rest));
        }
        return out;
    }
    let n = degree(f);
    let lc = f[n].clone();
    let p = small_primes()
        .find(|&p| {
            let fp = reduce_mod(f, p);
            fp.len() == n + 1 && modp::gcd(&fp, &modp::derivative(&fp, p), p).len() == 1
        })
        .expect("a good prime exists for squarefree input");
    let fp = modp::monic(&reduce_mod(f, p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut local = modp::factor_squarefree(&fp, p, &mut rng);
    if local.len() == 1 {
        return vec![f.clone()];
    }
    local.sort();
    // Coefficient bound for factors of lc·f.
    let maxc = f.iter().map(|c| c.abs()).max().expect("non-empty");
    let bound = &lc.abs() * BigInt::from(n + 1) * (BigInt::one() << n) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &local, p, k);
    recombine(f.clone(), lifted, &modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mod_poly(a: &IntPoly, m: &BigInt) -> IntPoly {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn to_int(a: &Fp) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts the monic factorisation `f ≡ lc(f)·∏ facs (mod p)` to `p^k`.
fn hensel_lift(f: &IntPoly, facs: &[Fp], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    if facs.len() == 1 {
        let li = mod_inverse(f.last().expect("non-empty"), &pk);
        let g: IntPoly = f.iter().map(|c| (c * &li).mod_floor(&pk)).collect();
        return vec![g];
    }
    let g0 = facs[0].clone();
    let lcp = f.last().expect("non-empty").mod_floor(&BigInt::from(p)).to_u64().expect("small");
    let h0 = facs[1..].iter().fold(vec![lcp], |acc, g| modp::mul(&acc, g, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &facs[1..], p, k));
    out
}

fn lift_pair(f: &IntPoly, g0: &Fp, h0: &Fp, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = modp::xgcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = to_int(g0);
    let mut h = to_int(h0);
    let mut m = pb.clone();
    for _ in 1..k {
        let mp = &m * &pb;
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let e: IntPoly = (0..n)
            .map(|i| {
                let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                d.mod_floor(&mp) / &m
            })
            .collect();
        let ep = reduce_mod(&e, p);
        let (q, r) = modp::divrem(&modp::mul(&t, &ep, p), g0, p);
        let big_h = modp::add(&modp::mul(&s, &ep, p), &modp::mul(&q, h0, p), p);
        for (i, c) in r.iter().enumerate() {
            g[i] += &m * BigInt::from(*c);
        }
        for (i, c) in big_h.iter().enumerate() {
            if i < h.len() {
                h[i] += &m * BigInt::from(*c);
            } else {
                debug_assert_eq!(*c, 0);
            }
        }
        m = mp;
        g = mod_poly(&g, &m);
        h = mod_poly(&h, &m);
    }
    (g, h)
}

fn symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: &IntPoly) -> IntPoly {
    let c = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut v: IntPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|x| x.sign() == Sign::Minus) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Exact quotient `f / g` over Z, if it exists.
fn int_divide(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    if g.len() > f.len() {
        return None;
    }
    let mut r = f.clone();
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for shift in (0..q.len()).rev() {
        let c = &r[shift + dg];
        if c.is_zero() {
            continue;
        }
        if !(c % lg).is_zero() {
            return None;
        }
        let c = c / lg;
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] -= &c * gi;
        }
        q[shift] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(mut f: IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lc = f.last().expect("non-empty").clone();
        for subset in combinations(lifted.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| mod_poly(&int_mul(&acc, &lifted[i]), modulus));
            let g = primitive(&symmetric(&prod, modulus));
            if let Some(q) = int_divide(&f, &g) {
                out.push(g);
                f = q;
                let keep: Vec<IntPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p.clone())
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use crate::exactnum::FieldElem;
    use proptest::prelude::*;

    /// Brute-force rational roots: candidates ±a/b with a | c0, b | lc.
    fn brute_force_roots(coeffs: &[i64]) -> Vec<Rational> {
        let divisors = |n: i64| -> Vec<i64> { (1..=n.abs()).filter(|d| n % d == 0).collect() };
        let c0 = coeffs.iter().copied().find(|&c| c != 0).unwrap();
        let lc = *coeffs.last().unwrap();
        let p = UniPoly::from_ints(coeffs);
        let mut roots = Vec::new();
        if coeffs[0] == 0 {
            roots.push(int(0));
        }
        for a in divisors(c0) {
            for b in divisors(lc) {
                for r in [rat(a, b), rat(-a, b)] {
                    if !roots.contains(&r) && p.eval(&FieldElem::from(r.clone())).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    #[test]
    fn example_factorisations() {
        let f = factor_rational(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::from_ints(&[1, 1]), 1)]);
        let g = factor_rational(&UniPoly::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(g, vec![(UniPoly::from_ints(&[1, 1, 1]), 1)]);
        let h = factor_rational(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn swinnerton_dyer_like_inputs_stay_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
        let f = factor_rational(&UniPoly::from_ints(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.len(), 1);
        // x^4 + 1 likewise.
        let g = factor_rational(&UniPoly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 = product of six cyclotomic polynomials.
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_rational(&UniPoly::from_ints(&c)).unwrap();
        assert_eq!(f.len(), 6);
        let degs: Vec<usize> = f.iter().map(|(p, _)| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn non_rational_coefficients_are_rejected() {
        let t = crate::exactnum::Tower::rationals().extend(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        let p = UniPoly::new(vec![t.generator(), FieldElem::one()]);
        assert!(matches!(factor_rational(&p), Err(ExactError::NotRational)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_of_factors_reproduces_input(
            a in proptest::collection::vec(-6i64..=6, 1..4),
            b in proptest::collection::vec(-6i64..=6, 1..4),
            c in proptest::collection::vec(-6i64..=6, 1..3),
        ) {
            let mk = |v: &Vec<i64>| { let mut w = v.clone(); w.push(1); UniPoly::from_ints(&w) };
            let p = &(&mk(&a) * &mk(&b)) * &mk(&c);
            let f = factor_rational(&p).unwrap();
            let mut prod = UniPoly::one();
            for (g, m) in &f {
                prop_assert!(g.degree().unwrap() >= 1);
                prod = &prod * &g.pow(*m as u32);
            }
            prop_assert_eq!(prod, p.monic().unwrap());
        }

        #[test]
        fn rational_roots_match_brute_force(
            roots in proptest::collection::vec((-5i64..=5, 1i64..=3), 0..4),
            extra in proptest::collection::vec(-4i64..=4, 2..4),
        ) {
            let mut p = UniPoly::from_ints(&[1, 0, 1]);
            for (n, d) in &roots {
                p = &p * &UniPoly::from_ints(&[-n, *d]);
            }
            let mut e = extra.clone();
            e.push(1);
            p = &p * &UniPoly::from_ints(&e);
            let coeffs: Vec<i64> = p.as_rationals().unwrap().iter().map(|q| q.to_integer().to_i64().unwrap()).collect();
            let mut got: Vec<Rational> = rational_roots(&p).unwrap().into_iter().map(|(r, _)| r).collect();
            got.dedup();
            prop_assert_eq!(got, brute_force_roots(&coeffs));
        }
    }
}
