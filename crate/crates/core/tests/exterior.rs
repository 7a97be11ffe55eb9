mod common;

use std::sync::Arc;

use brauer_core::{AlgebraContext, MultiVector};
use common::{fourfold_form, q, xy};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn vol(ctx: &Arc<AlgebraContext>) -> MultiVector {
    (1..=ctx.g()).fold(MultiVector::one(ctx), |acc, k| acc.wedge(&MultiVector::omega(ctx, k)))
}

#[test]
fn generator_signs() {
    let ctx = AlgebraContext::new(1).unwrap();
    let xy1 = MultiVector::x(&ctx, 1).wedge(&MultiVector::y(&ctx, 1));
    let yx1 = MultiVector::y(&ctx, 1).wedge(&MultiVector::x(&ctx, 1));
    assert_eq!(xy1.coefficient(0b11), q(1, 1));
    assert_eq!(yx1.coefficient(0b11), q(-1, 1));
}

#[test]
fn fourfold_identities() {
    let b = fourfold_form();
    let ctx = b.context().clone();
    let theta = MultiVector::theta(&ctx);
    let w = |k| MultiVector::omega(&ctx, k);
    let expected = w(1).wedge(&w(2)).scaled_int(&BigInt::from(2))
        + (w(1) + w(2)).wedge(&(w(3) + w(4)))
        + (xy(&ctx, 1, 3) + xy(&ctx, 3, 1)).wedge(&(w(2) + w(4)));
    assert_eq!(b.wedge(&theta), expected);
    assert!(b.power(4).is_zero());

    let big_b = b.scaled(&q(1, 2));
    for m1 in [-3i64, 1, 2, 5] {
        let c1 = theta.scaled_int(&BigInt::from(m1));
        assert_eq!(big_b.power(3).wedge(&c1), vol(&ctx).scaled(&q(-3 * m1, 4)));
    }
    for m3 in [1i64, 7] {
        let c3 = MultiVector::theta_power_integral(&ctx, 3).scaled_int(&BigInt::from(m3));
        assert_eq!(big_b.wedge(&c3), vol(&ctx).scaled_int(&BigInt::from(m3)));
    }
}

#[test]
fn theta_powers() {
    let ctx = AlgebraContext::new(2).unwrap();
    let t = MultiVector::theta(&ctx);
    assert_eq!(t.power(2), vol(&ctx).scaled_int(&BigInt::from(2)));
    let ctx = AlgebraContext::new(4).unwrap();
    let t = MultiVector::theta(&ctx);
    assert_eq!(t.power(4), vol(&ctx).scaled_int(&BigInt::from(24)));
    assert_eq!(MultiVector::theta_power_integral(&ctx, 4), vol(&ctx));
    assert_eq!(MultiVector::theta_power_integral(&ctx, 1), t);
    assert!(MultiVector::theta_power_integral(&ctx, 5).is_zero());
    let ctx = AlgebraContext::new(3).unwrap();
    let t2 = MultiVector::theta_power_integral(&ctx, 2);
    let w = |k| MultiVector::omega(&ctx, k);
    assert_eq!(t2, w(1).wedge(&w(2)) + w(1).wedge(&w(3)) + w(2).wedge(&w(3)));
}

#[test]
fn coordinates_and_reduction() {
    let ctx = AlgebraContext::new(2).unwrap();
    let t = MultiVector::theta(&ctx);
    assert!(t.coordinates(1).iter().all(|c| *c == q(0, 1)));
    let c2 = t.coordinates(2);
    assert_eq!(c2.len(), 6);
    let omega_sum = MultiVector::omega(&ctx, 1) + MultiVector::omega(&ctx, 2);
    assert_eq!(c2, omega_sum.coordinates(2));
    assert!(t.power(2).scaled(&q(1, 2)).is_integral());
    assert!(!t.scaled(&q(1, 2)).is_integral());
    assert!(t.scaled_int(&BigInt::from(2)).reduce_mod(2).unwrap().is_zero());
    assert!(t.scaled(&q(1, 2)).reduce_mod(2).is_err());
}

#[test]
fn ranks_by_enumeration() {
    for g in 1..=8usize {
        let ctx = AlgebraContext::new(g).unwrap();
        let mut counts = vec![0usize; 2 * g + 1];
        let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); 2 * g + 1];
        for mask in 0u32..(1 << (2 * g)) {
            counts[mask.count_ones() as usize] += 1;
            by_degree[mask.count_ones() as usize].push(mask);
        }
        for k in 0..=2 * g {
            assert_eq!(ctx.rank(k), counts[k], "g={g}, k={k}");
            // Colex order on bit-sets is numeric order.
            assert_eq!(ctx.basis(k), &by_degree[k][..]);
        }
    }
}

fn multivector(g: usize) -> impl Strategy<Value = Vec<(u32, i64, i64)>> {
    let blades = 1u32 << (2 * g);
    prop::collection::vec((0..blades, -4i64..=4, 1i64..=3), 0..6)
}

fn build(ctx: &Arc<AlgebraContext>, terms: &[(u32, i64, i64)]) -> MultiVector {
    terms.iter().fold(MultiVector::zero(ctx), |acc, &(b, n, d)| {
        acc + MultiVector::from_blade(ctx, b, BigRational::new(n.into(), d.into()))
    })
}

fn homogeneous(g: usize) -> impl Strategy<Value = (usize, Vec<(usize, i64)>)> {
    (0..=2 * g).prop_flat_map(move |k| {
        let n = AlgebraContext::new(g).unwrap().rank(k);
        (Just(k), prop::collection::vec((0..n, -3i64..=3), 0..4))
    })
}

fn build_homogeneous(ctx: &Arc<AlgebraContext>, k: usize, terms: &[(usize, i64)]) -> MultiVector {
    terms.iter().fold(MultiVector::zero(ctx), |acc, &(i, c)| {
        acc + MultiVector::from_blade(ctx, ctx.basis(k)[i], q(c, 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn wedge_is_associative_and_bilinear(
        (g, a, b, c) in (1usize..=3).prop_flat_map(|g| (Just(g), multivector(g), multivector(g), multivector(g)))
    ) {
        let ctx = AlgebraContext::new(g).unwrap();
        let (u, v, w) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(u.wedge(&v).wedge(&w), u.wedge(&v.wedge(&w)));
        prop_assert_eq!(u.wedge(&(v.clone() + w.clone())), u.wedge(&v) + u.wedge(&w));
        let r = q(2, 3);
        prop_assert_eq!(u.scaled(&r).wedge(&v), u.wedge(&v).scaled(&r));
    }
}

proptest! {
    #[test]
    fn graded_anticommutativity((k, a) in homogeneous(3), (l, b) in homogeneous(3)) {
        let ctx = AlgebraContext::new(3).unwrap();
        let u = build_homogeneous(&ctx, k, &a);
        let v = build_homogeneous(&ctx, l, &b);
        let vu = v.wedge(&u);
        let expected = if (k * l) % 2 == 1 { vu.neg() } else { vu };
        prop_assert_eq!(u.wedge(&v), expected);
    }

    #[test]
    fn one_forms_square_to_zero(coeffs in prop::collection::vec(-5i64..=5, 8)) {
        let ctx = AlgebraContext::new(4).unwrap();
        let v = coeffs.iter().enumerate().fold(MultiVector::zero(&ctx), |acc, (i, c)| {
            acc + MultiVector::generator(&ctx, i + 1).scaled_int(&BigInt::from(*c))
        });
        prop_assert!(v.wedge(&v).is_zero());
    }

    #[test]
    fn theta_power_products(g in 1usize..=5, k in 0usize..=5, j in 0usize..=5) {
        let ctx = AlgebraContext::new(g).unwrap();
        let lhs = MultiVector::theta_power_integral(&ctx, k)
            .wedge(&MultiVector::theta_power_integral(&ctx, j));
        let c = brauer_core::arith::binomial((k + j) as i64, k as i64);
        let rhs = MultiVector::theta_power_integral(&ctx, k + j).scaled_int(&c);
        prop_assert_eq!(lhs, rhs);
    }
}
