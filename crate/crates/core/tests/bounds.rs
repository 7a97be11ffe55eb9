mod common;

use brauer_core::arith::{binomial_big, digit_sum, factorial, valuation};
use brauer_core::djp::{djp_obstructed, djp_solution_family, zero_point_admissible};
use brauer_core::driver::failure_degree_bound;
use brauer_core::{AlgebraContext, BrauerClassSpec};
use common::q;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exponent of `p` in `m!`, by counting multiples.
fn legendre(m: u64, p: u64) -> i64 {
    (1..=m)
        .map(|k| {
            let mut k = k;
            let mut v = 0;
            while k % p == 0 {
                k /= p;
                v += 1;
            }
            v
        })
        .sum()
}

#[test]
fn failure_degree_is_never_obstructed() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in 3..=6 {
        let ctx = AlgebraContext::new(g).unwrap();
        for p in [2u64, 3] {
            for r in [1u32, 2] {
                let n = p.pow(r);
                let d = p.pow(failure_degree_bound(g, p, r).unwrap().rs as u32);
                for _ in 0..20 {
                    let coords: Vec<u64> = (0..ctx.rank(2)).map(|_| rng.gen_range(0..n)).collect();
                    let spec = BrauerClassSpec::from_coordinates(&ctx, &coords, n).unwrap();
                    assert!(!djp_obstructed(&spec, d).unwrap(), "g={g} n={n} {coords:?}");
                    assert!(zero_point_admissible(&spec, d).unwrap());
                    let fam = djp_solution_family(&spec, d, 1).unwrap().unwrap();
                    assert!(fam.contains(&vec![q(0, 1); g]).unwrap());
                }
            }
        }
    }
}

#[test]
fn valuation_identity() {
    for g in 3..=12usize {
        for p in [2u64, 3, 5, 7] {
            for r in [1u32, 2, 3] {
                let bp = failure_degree_bound(g, p, r).unwrap();
                let top = BigInt::from(p).pow(bp.rs as u32);
                for i in (1..=12u64).filter(|&i| BigInt::from(i) <= top) {
                    let lhs = valuation(&(binomial_big(&top, i) * factorial(i)), p) as i64
                        - (r as u64 * i) as i64;
                    let by_digits = ((i - 1 - digit_sum(i - 1, p)) / (p - 1)) as i64;
                    assert_eq!(by_digits, legendre(i - 1, p));
                    // r(s − i) = rs − ri.
                    assert_eq!(lhs, bp.rs as i64 - (r as u64 * i) as i64 + by_digits, "g={g} p={p} r={r} i={i}");
                }
            }
        }
    }
}

#[test]
fn bound_parameter_examples() {
    let s = |g, p, r| failure_degree_bound(g, p, r).unwrap().s_text();
    assert_eq!(s(4, 2, 1), "3");
    assert_eq!(s(4, 2, 2), "7/2");
    assert_eq!(failure_degree_bound(4, 2, 2).unwrap().rs, 7);
    assert_eq!(s(12, 3, 2), "11");
    assert_eq!(failure_degree_bound(12, 3, 2).unwrap().rs, 22);
    // For p^r = 2 the formula collapses to ⌊log₂(g−1)⌋ + 2.
    for g in 2..40usize {
        let expect = (usize::BITS - 1 - (g - 1).leading_zeros()) as u64 + 2;
        assert_eq!(failure_degree_bound(g, 2, 1).unwrap().rs, expect);
    }
    assert!(failure_degree_bound(1, 2, 1).is_err());
    assert!(failure_degree_bound(4, 4, 1).is_err());
}
