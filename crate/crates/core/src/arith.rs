//! Small number-theoretic helpers shared by the rest of the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Generalized binomial coefficient `n(n-1)...(n-k+1)/k!`.
///
/// Defined for every integer `n`; zero when `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// `binomial` for a big upper argument, used with degrees like `3^12`.
pub fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= n - BigInt::from(t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.abs();
    while (&y % &p).is_zero() {
        y /= &p;
        v += 1;
    }
    v
}

pub fn valuation_u64(mut x: u64, p: u64) -> u32 {
    assert!(x != 0, "valuation of zero");
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Sum of the base-`p` digits of `x`.
pub fn digit_sum(mut x: u64, p: u64) -> u64 {
    let mut s = 0;
    while x > 0 {
        s += x % p;
        x /= p;
    }
    s
}

/// `floor(log_p(x))` by repeated division; `x >= 1`.
pub fn ilog(x: u64, p: u64) -> u32 {
    assert!(x >= 1 && p >= 2);
    let mut v = 0;
    let mut y = x;
    while y >= p {
        y /= p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Reduces an integer into `[0, m)`.
pub fn reduce_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

pub fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}
