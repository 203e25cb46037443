use mbs_core::billiard::Billiard;
use mbs_core::cfrac::BilliardSeq;
use mbs_core::forms::GL2;
use mbs_core::spectra::{sequence_billiard, vertical_billiard};
use proptest::collection::vec;
use proptest::prelude::*;

fn periodic_billiard() -> impl Strategy<Value = Billiard> {
    vec(1u64..6, 1..5).prop_map(|p| sequence_billiard(&BilliardSeq::periodic(p).unwrap()).unwrap())
}

fn matrix() -> impl Strategy<Value = GL2> {
    vec((0u8..4, -3i64..4), 0..6).prop_map(|w| {
        w.into_iter().fold(GL2::identity(), |m, (i, k)| {
            let g = match i {
                0 => GL2::gen_a(),
                1 => GL2::gen_b(),
                2 => GL2::gen_c(),
                _ => GL2::translation(k),
            };
            m.mul(&g)
        })
    })
}

fn segment_keys(b: &Billiard) -> Vec<String> {
    let rep = b.fold(10_000).unwrap();
    assert!(rep.closed);
    let mut v: Vec<String> = rep.all_segments().unwrap().iter().map(|s| s.geodesic.to_string()).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn translates_fold_to_the_same_segments(b in periodic_billiard(), m in matrix()) {
        let moved = Billiard::from_form(&b.form.act(&m)).unwrap();
        prop_assert_eq!(segment_keys(&moved), segment_keys(&b));
    }

    #[test]
    fn adjacent_segments_meet(b in periodic_billiard()) {
        let rep = b.fold(10_000).unwrap();
        prop_assert!(rep.closed);
        let segs = rep.all_segments().unwrap();
        for (n, s) in segs.iter().enumerate() {
            let next = &segs[(n + 1) % segs.len()];
            prop_assert_eq!(&s.exit, &next.entry);
            for p in s.interior_samples(10) {
                prop_assert!(p.in_triangle(), "segment {} leaves the triangle at {:?}", n, p);
            }
        }
    }

    #[test]
    fn improper_segments_stay_inside(p in 0i64..40, q in 1i64..40) {
        let Ok(b) = vertical_billiard(p, q) else { return Ok(()); };
        let rep = b.fold(2_000).unwrap();
        prop_assert!(rep.cusp || rep.closed);
        for s in rep.all_segments().unwrap() {
            for x in s.interior_samples(10) {
                prop_assert!(x.in_triangle());
            }
        }
    }
}
