//! Classification checks against independent oracles: a brute-force class
//! counter, closed-form catalogue sizes and the three-factor example with
//! real, complex and quaternionic factors.
use std::collections::BTreeSet;

use geodiag::catalog::{
    are_homothetic, is_totally_geodesic, list_totally_geodesic, Field, Improper, RankOneSpace,
};
use geodiag::rational::{self, Rational};
use geodiag::tableaux::{classify, count_classes, diagonal_curvature, ProductSpace};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn space(field: Field, n: u32, c: Rational) -> RankOneSpace {
    RankOneSpace::new(field, n, c).unwrap()
}

fn product(spaces: Vec<RankOneSpace>) -> ProductSpace {
    ProductSpace::new(spaces).unwrap()
}

/// Every normalized space of dimension at most 8 at unit curvature.
fn small_spaces() -> Vec<RankOneSpace> {
    let mut out = BTreeSet::new();
    for n in 1..=8 {
        for field in [Field::R, Field::C, Field::H, Field::O] {
            if let Ok(s) = RankOneSpace::new(field, n, rational::one()) {
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn catalogue_sizes_match_closed_forms() {
    // proper, non-flat entries per ambient; for HH^n: HH^k (2 ≤ k < n),
    // CH^k (2 ≤ k ≤ n), RH^k(c/4) (2 ≤ k ≤ n) and RH^2, RH^3, RH^4 at c
    for n in 2..=8u32 {
        let rh = list_totally_geodesic(&space(Field::R, n, rational::one()), Improper::Exclude).unwrap();
        assert_eq!(rh.len() as u32, n - 2, "RH{n}");
        let ch = list_totally_geodesic(&space(Field::C, n, rational::one()), Improper::Exclude).unwrap();
        assert_eq!(ch.len() as u32, 2 * n - 2, "CH{n}");
        let hh = list_totally_geodesic(&space(Field::H, n, rational::one()), Improper::Exclude).unwrap();
        assert_eq!(hh.len() as u32, 3 * n - 1, "HH{n}");
    }
    let oh = list_totally_geodesic(&space(Field::O, 2, rational::one()), Improper::Exclude).unwrap();
    assert_eq!(oh.len(), 10);
}

#[test]
fn totally_geodesic_is_transitive() {
    for ambient in small_spaces() {
        for outer in list_totally_geodesic(&ambient, Improper::Exclude).unwrap() {
            for inner in list_totally_geodesic(&outer.sub, Improper::Exclude).unwrap() {
                assert!(
                    is_totally_geodesic(&inner.sub, &ambient),
                    "{} ⊂ {} ⊂ {}",
                    inner.sub,
                    outer.sub,
                    ambient
                );
            }
        }
    }
}

#[test]
fn every_listed_sub_is_a_member_with_smaller_dimension() {
    for ambient in small_spaces() {
        for inc in list_totally_geodesic(&ambient, Improper::Exclude).unwrap() {
            assert!(is_totally_geodesic(&inc.sub, &ambient));
            assert!(inc.sub.real_dim() < ambient.real_dim());
            assert!(inc.sub.is_normalized());
        }
    }
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=60).prop_map(|(a, b)| rational::ratio(a, b))
}

fn any_field_space() -> impl Strategy<Value = RankOneSpace> {
    prop_oneof![
        (2u32..=8).prop_map(|n| (Field::R, n)),
        (1u32..=8).prop_map(|n| (Field::C, n)),
        (1u32..=6).prop_map(|n| (Field::H, n)),
        (1u32..=2).prop_map(|n| (Field::O, n)),
    ]
    .prop_map(|(f, n)| space(f, n, rational::one()))
}

proptest! {
    #[test]
    fn catalogue_scales_with_curvature(s in any_field_space(), t in positive_rational()) {
        let base = list_totally_geodesic(&s, Improper::Include).unwrap();
        let scaled = list_totally_geodesic(&s.rescaled(&t), Improper::Include).unwrap();
        let expect: BTreeSet<_> = base.iter().map(|i| i.sub.rescaled(&t)).collect();
        let got: BTreeSet<_> = scaled.iter().map(|i| i.sub.clone()).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn harmonic_identity(cs in prop::collection::vec(positive_rational(), 1..=6)) {
        let c = diagonal_curvature(&cs).unwrap();
        let inv: Rational = cs.iter().map(|x| x.recip()).fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(c.recip(), inv);
    }

    #[test]
    fn diagonal_curvature_is_symmetric(cs in prop::collection::vec(positive_rational(), 1..=6), rot in 0usize..6) {
        let mut perm = cs.clone();
        perm.reverse();
        let len = perm.len();
        perm.rotate_left(rot % len);
        prop_assert_eq!(diagonal_curvature(&cs).unwrap(), diagonal_curvature(&perm).unwrap());
    }

    #[test]
    fn single_argument_identity(c in positive_rational()) {
        prop_assert_eq!(diagonal_curvature(std::slice::from_ref(&c)).unwrap(), c);
    }
}

/// Independent class counter. Each factor of a subset gets a row label
/// (all labelings, not just restricted growth strings) and a catalogued sub;
/// a tableau is the set of its rows, each row a set of (factor, sub) pairs.
fn brute_force_count(m: &ProductSpace) -> usize {
    let r = m.rank();
    let subs: Vec<Vec<RankOneSpace>> = m
        .factors()
        .iter()
        .map(|f| {
            list_totally_geodesic(f, Improper::Include)
                .unwrap()
                .into_iter()
                .map(|i| i.sub)
                .collect()
        })
        .collect();
    let mut total = 0;
    for mask in 0u32..(1 << r) {
        let chosen: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let s = chosen.len();
        let mut tableaux: BTreeSet<BTreeSet<BTreeSet<(usize, RankOneSpace)>>> = BTreeSet::new();
        // labels in 0..s for each chosen factor, sub index for each
        let label_count = (s as u64).pow(s as u32).max(1);
        for code in 0..label_count {
            let mut c = code;
            let labels: Vec<usize> = chosen
                .iter()
                .map(|_| {
                    let l = (c % s.max(1) as u64) as usize;
                    c /= s.max(1) as u64;
                    l
                })
                .collect();
            let mut picks = vec![0usize; s];
            loop {
                let mut rows: Vec<BTreeSet<(usize, RankOneSpace)>> = vec![BTreeSet::new(); s];
                for (j, &f) in chosen.iter().enumerate() {
                    rows[labels[j]].insert((f, subs[f][picks[j]].clone()));
                }
                let homothetic = rows.iter().all(|row| {
                    let v: Vec<_> = row.iter().map(|(_, x)| x).collect();
                    v.windows(2).all(|w| are_homothetic(w[0], w[1]))
                });
                if homothetic {
                    tableaux.insert(rows.into_iter().filter(|r| !r.is_empty()).collect());
                }
                // odometer over sub choices
                let mut j = 0;
                while j < s {
                    picks[j] += 1;
                    if picks[j] < subs[chosen[j]].len() {
                        break;
                    }
                    picks[j] = 0;
                    j += 1;
                }
                if j == s {
                    break;
                }
            }
        }
        total += tableaux.len() * (r - s + 1);
    }
    total
}

fn parse(spec: &str) -> ProductSpace {
    geodiag::cli::parse_product(spec).unwrap()
}

#[test]
fn brute_force_counts_agree() {
    assert_eq!(brute_force_count(&parse("RH2(1)")), 3);
    assert_eq!(brute_force_count(&parse("OH2(1)")), 13);
    assert_eq!(brute_force_count(&parse("RH2(1) x RH2(1)")), 9);
    for spec in [
        "RH2(1)",
        "OH2(1)",
        "RH2(1) x RH2(1)",
        "RH3(1) x CH2(1)",
        "CH2(1) x CH2(3)",
        "RH2(1) x RH2(2) x RH2(1)",
        "RH3(1) x CH3(2) x HH3(1)",
        "CH2(1) x HH2(1) x RH4(1/2)",
        "RH2(1) x CH1(1) x RH3(1) x CH2(1)",
    ] {
        let m = parse(spec);
        let oracle = brute_force_count(&m);
        assert_eq!(count_classes(&m), oracle, "{spec}");
        assert_eq!(classify(&m).count(), oracle, "{spec}");
    }
}

#[test]
fn classify_stream_is_duplicate_free() {
    let m = parse("RH3(1) x CH3(2) x HH3(1)");
    let mut seen = BTreeSet::new();
    for e in classify(&m) {
        let key = format!("{:?}|{}", e.tableau, e.flat_dim);
        assert!(seen.insert(key), "duplicate {e:?}");
    }
}

fn curvatures_of(m: &ProductSpace) -> Vec<Vec<Rational>> {
    classify(m)
        .map(|e| e.semisimple_factors.iter().map(|s| s.curvature.clone()).collect())
        .collect()
}

#[test]
fn three_factor_example_entries() {
    let (c1, c2, c3) = (rational::int(1), rational::int(2), rational::int(1));
    let m = product(vec![
        space(Field::R, 3, c1.clone()),
        space(Field::C, 3, c2.clone()),
        space(Field::H, 3, c3.clone()),
    ]);
    let four = rational::int(4);
    let triple = &c1 * &c2 * &c3 / (&c1 * &c2 + &four * &c1 * &c3 + &c2 * &c3);
    let pair = &c2 * &c3 / (&c2 + &c3);
    assert_eq!(triple, rational::ratio(2, 8));
    let all = curvatures_of(&m);
    assert!(all.iter().any(|cs| cs == std::slice::from_ref(&triple)));
    let entries: Vec<_> = classify(&m).collect();
    assert!(entries.iter().any(|e| {
        e.semisimple_factors.len() == 2
            && e.semisimple_factors.contains(&space(Field::R, 2, c1.clone()))
            && e.semisimple_factors.iter().any(|s| s.curvature == pair)
    }));
    let split: BTreeSet<_> = [
        space(Field::R, 3, c1.clone()),
        space(Field::R, 3, &c2 / &four),
        space(Field::R, 4, c3.clone()),
    ]
    .into_iter()
    .collect();
    assert!(entries.iter().any(|e| {
        e.semisimple_factors.iter().cloned().collect::<BTreeSet<_>>() == split
            && e.tableau.rows().iter().all(|r| r.len() == 1)
    }));
}

#[test]
fn curvature_key_is_exact_for_large_values() {
    let big = Rational::new(BigInt::from(10).pow(30) + BigInt::one(), BigInt::from(7));
    let c = diagonal_curvature(&[big.clone(), big.clone()]).unwrap();
    assert_eq!(c, big / rational::int(2));
}
