//! Rational helpers on top of `num-rational`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact `d`-th root of a non-negative integer, if it exists.
pub fn int_nth_root(n: &BigInt, d: u32) -> Option<BigInt> {
    if d == 0 {
        return None;
    }
    if n.is_negative() {
        if d.is_multiple_of(2) {
            return None;
        }
        return int_nth_root(&-n, d).map(|r| -r);
    }
    if n.is_zero() || n.is_one() {
        return Some(n.clone());
    }
    let r = n.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `d`-th root of a rational number, if it is rational.
pub fn rational_nth_root(q: &Rational, d: u32) -> Option<Rational> {
    let n = int_nth_root(q.numer(), d)?;
    let m = int_nth_root(q.denom(), d)?;
    Some(Rational::new(n, m))
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_negative(q: &Rational) -> bool {
    q.numer().sign() == Sign::Minus
}

/// Least common multiple of the denominators.
pub fn common_denominator(qs: &[Rational]) -> BigInt {
    qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_exact() {
        assert_eq!(rational_nth_root(&rat(4, 9), 2), Some(rat(2, 3)));
        assert_eq!(rational_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_nth_root(&rat(2, 1), 2), None);
        assert_eq!(rational_nth_root(&rat(-4, 1), 2), None);
    }

    #[test]
    fn rationals_are_normalised() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
    }
}
