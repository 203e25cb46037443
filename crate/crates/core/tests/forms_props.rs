use std::collections::BTreeSet;

use mbs_core::forms::{is_square, reduced_forms, BinaryForm, GL2};
use num_integer::Integer;
use proptest::collection::vec;
use proptest::prelude::*;

fn generator(i: u8, k: i64) -> GL2 {
    match i % 5 {
        0 => GL2::gen_a(),
        1 => GL2::gen_b(),
        2 => GL2::gen_c(),
        3 => GL2::translation(k),
        _ => GL2::cf_step(k.abs() + 1),
    }
}

fn matrix() -> impl Strategy<Value = GL2> {
    vec((0u8..5, -4i64..5), 0..7).prop_map(|w| w.into_iter().fold(GL2::identity(), |m, (i, k)| m.mul(&generator(i, k))))
}

fn indefinite() -> impl Strategy<Value = BinaryForm> {
    (-12i64..13, -12i64..13, -12i64..13).prop_filter_map("needs irrational roots", |(a, b, c)| {
        let d = b * b - 4 * a * c;
        (d > 0 && !is_square(d) && a != 0).then(|| BinaryForm::int(a, b, c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_law(q in indefinite(), m in matrix(), n in matrix()) {
        prop_assert_eq!(q.act(&m).act(&n), q.act(&m.mul(&n)));
        prop_assert_eq!(q.act(&m).disc(), q.disc());
    }

    #[test]
    fn roots_move_by_inverse(q in indefinite(), m in matrix()) {
        let r = q.roots().unwrap();
        let moved = q.act(&m).roots().unwrap();
        let inv = m.inverse();
        prop_assert_eq!(moved.alpha, inv.apply(&r.alpha));
        prop_assert_eq!(moved.beta, inv.apply(&r.beta));
    }

    #[test]
    fn reduction_witness(q in indefinite()) {
        let (r, m) = q.reduce().unwrap();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(q.act(&m), r);
    }

    #[test]
    fn star_reverses_the_sequence(q in indefinite()) {
        let (r, _) = q.reduce().unwrap();
        let k = r.sequence().unwrap();
        let (rs, _) = r.star().reduce().unwrap();
        prop_assert!(rs.sequence().unwrap().equivalent(&k.reversal(), false));
    }
}

/// Every reduced primitive form of disc `d`, by exhaustive search.
fn brute_reduced(d: i64) -> BTreeSet<(i64, i64, i64)> {
    let mut out = BTreeSet::new();
    for a in 1..=d {
        for b in -d..=d {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            if BinaryForm::int(a, b, c).unwrap().is_reduced() {
                out.insert((a, b, c));
            }
        }
    }
    out
}

fn key(f: &BinaryForm) -> (i64, i64, i64) {
    let (a, b, c) = f.int_coeffs().unwrap();
    (a.try_into().unwrap(), b.try_into().unwrap(), c.try_into().unwrap())
}

#[test]
fn chains_partition_the_reduced_forms() {
    for d in 2..=200i64 {
        if is_square(d) || !matches!(d % 4, 0 | 1) {
            continue;
        }
        let brute = brute_reduced(d);
        let listed: BTreeSet<_> = reduced_forms(d).iter().map(key).collect();
        assert_eq!(listed, brute, "d = {d}");
        let mut covered = BTreeSet::new();
        for q in reduced_forms(d) {
            let cyc = q.chain_cycle(10_000).unwrap().expect("chain closes");
            for f in &cyc {
                assert!(f.is_reduced());
                assert!(f.equivalent(&q, false).unwrap());
            }
            let keys: BTreeSet<_> = cyc.iter().map(key).collect();
            // a chain is either disjoint from what was seen or equal to a seen class
            assert!(keys.is_subset(&covered) || keys.is_disjoint(&covered), "d = {d}");
            covered.extend(keys);
        }
        assert_eq!(covered, brute, "d = {d}");
    }
}
