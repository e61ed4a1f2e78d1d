use std::collections::BTreeSet;

use geodiag::kahler::{
    angles_in_product, approximate_angle, grassmannian_product_embeddings, realize_angle,
};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cosines(k: u64) -> BTreeSet<Rational64> {
    angles_in_product(k).unwrap().iter().map(|a| a.cosine()).collect()
}

#[test]
fn realize_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let b: i64 = rng.random_range(1..=500);
        let a: i64 = rng.random_range(0..=b);
        let q = Rational64::new(a, b);
        let m: u64 = rng.random_range(1..=4);
        let r = realize_angle(q, m).unwrap();
        // independent check: |2s - k| / k recomputed here
        let direct = Rational64::new((2 * r.s as i64 - r.k as i64).abs(), r.k as i64);
        assert_eq!(direct, q, "{q}");
        assert!(r.s <= r.k);
        assert_eq!(r.n, r.k * m);
        assert_eq!(r.ambient.k, r.k);
        let lowest = *q.denom();
        assert!(r.k as i64 == lowest || r.k as i64 == 2 * lowest, "{q}: k={}", r.k);
        assert!(cosines(r.k).contains(&q));
        assert_eq!(r.equal_parts().total() as u64, r.n);
    }
}

#[test]
fn one_fifth_needs_five_copies() {
    for m in 1..=3 {
        let r = realize_angle(Rational64::new(1, 5), m).unwrap();
        assert_eq!((r.k, r.s), (5, 2));
    }
    for k in 1..5 {
        assert!(!cosines(k).contains(&Rational64::new(1, 5)), "k={k}");
    }
}

#[test]
fn partitions_counted_independently() {
    // p(n, k) by the recurrence p(n, k) = p(n-1, k-1) + p(n-k, k)
    fn p(n: usize, k: usize) -> usize {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) => 0,
            (n, k) if k > n => 0,
            _ => p(n - 1, k - 1) + p(n - k, k),
        }
    }
    for n in 1..=10 {
        for k in 1..=n {
            let parts = grassmannian_product_embeddings(k, n).unwrap();
            assert_eq!(parts.len(), p(n, k), "n={n} k={k}");
            assert!(parts.iter().all(|q| q.len() == k && q.total() == n));
        }
    }
}

#[test]
fn approximation_meets_epsilon() {
    // With k ≤ 2000 the smallest non-zero angle is arccos(1998/2000), so
    // targets in (ε, that - ε) need more copies; everywhere else the bound
    // holds.
    let eps = 1e-3;
    let smallest = (1998.0f64 / 2000.0).acos();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..400 {
        let target: f64 = if i % 4 == 0 {
            rng.random_range(0.0..0.06)
        } else {
            rng.random_range(0.0..=std::f64::consts::FRAC_PI_2)
        };
        let r = approximate_angle(target, eps, 1).unwrap();
        assert!((r.angle().radians() - target).abs() < eps, "{target}");
        if target > eps && target < smallest - eps {
            assert!(r.k > 2000, "{target}: k={}", r.k);
        } else {
            assert!(r.k <= 2000, "{target}: k={}", r.k);
        }
    }
}

proptest! {
    #[test]
    fn angle_set_is_symmetric_under_s_to_k_minus_s(k in 1u64..200, s in 0u64..200) {
        let s = s % (k + 1);
        let c = |s: u64| Rational64::new((2 * s as i64 - k as i64).abs(), k as i64);
        prop_assert_eq!(c(s), c(k - s));
        prop_assert!(cosines(k).contains(&c(s)));
    }

    #[test]
    fn cosine_numerators_have_parity_of_k(k in 1u64..200) {
        for c in cosines(k) {
            // c = j / k with j ≡ k (mod 2) before reduction
            let j = c * Rational64::from_integer(k as i64);
            prop_assert!(j.is_integer());
            prop_assert_eq!(j.to_integer() % 2, k as i64 % 2);
        }
        prop_assert_eq!(cosines(k).len() as u64, k / 2 + 1);
    }

    #[test]
    fn angle_sets_refine(k in 1u64..60, t in 1u64..6) {
        prop_assert!(cosines(k).is_subset(&cosines(k * t)));
    }
}
