use mbs_core::cfrac::{cf_expand, cf_value, BilliardSeq};
use mbs_core::exact::QuadSurd;
use proptest::collection::vec;
use proptest::prelude::*;

fn entries(min: usize, max: usize) -> impl Strategy<Value = Vec<u64>> {
    vec(1u64..7, min..=max)
}

fn seq() -> impl Strategy<Value = BilliardSeq> {
    (entries(1, 3), entries(0, 4), entries(1, 3)).prop_map(|(l, c, r)| BilliardSeq::new(l, c, r).unwrap())
}

fn periodic() -> impl Strategy<Value = BilliardSeq> {
    entries(1, 5).prop_map(|p| BilliardSeq::periodic(p).unwrap())
}

fn irrational() -> impl Strategy<Value = QuadSurd> {
    (2i64..400, -300i64..300, 1i64..40, 1i64..120)
        .prop_filter_map("square radicand", |(d, p, q, r)| {
            let x = QuadSurd::new(p, q, r, d).ok()?;
            (!x.is_rational()).then_some(x)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_round_trip(x in irrational()) {
        let e = cf_expand(&x).unwrap();
        prop_assert_eq!(cf_value(&e).unwrap(), x);
    }

    #[test]
    fn tail_recurrence_and_ranges(k in seq(), n in -50i64..=50) {
        let t = k.tails(n);
        let prev = k.tails(n - 1);
        let kn = QuadSurd::from_int(k.k(n - 1));
        prop_assert_eq!(&prev.r, &(&t.r.recip().unwrap() + &kn));
        prop_assert_eq!(&prev.s, &(&t.s.recip().unwrap() - &kn));
        prop_assert!(t.r > QuadSurd::one());
        prop_assert!(t.s > QuadSurd::zero() && t.s < QuadSurd::one());
    }

    #[test]
    fn reversal_is_an_involution(k in seq()) {
        prop_assert!(k.reversal().reversal().equivalent(&k, false));
    }

    #[test]
    fn shifts_are_equivalent(k in seq(), j in -20i64..20) {
        prop_assert!(k.shift(j).equivalent(&k, false));
    }

    #[test]
    fn periodic_tails_repeat(k in periodic(), n in -20i64..20) {
        let l = k.right_period().len() as i64;
        let (a, b) = (k.tails(n), k.tails(n + l));
        prop_assert_eq!(a.r, b.r);
        prop_assert_eq!(a.s, b.s);
    }
}
