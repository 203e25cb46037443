use mbs_core::cfrac::BilliardSeq;
use mbs_core::exact::{enclose, ExtendedReal, QuadSurd};
use mbs_core::forms::{is_square, reduced_forms};
use mbs_core::spectra::{
    functional_value, lambda_i, lambda_inf, lambda_point, markov_numbers, markov_value, markov_witness, mu_profile,
    sequence_billiard, sup_sum, Functional, PointForm,
};
use num_integer::Integer;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

fn same_field_seq() -> impl Strategy<Value = BilliardSeq> {
    (vec(1u64..6, 1..4), vec(1u64..6, 0..4)).prop_map(|(p, core)| BilliardSeq::new(p.clone(), core, p).unwrap())
}

fn periodic() -> impl Strategy<Value = BilliardSeq> {
    vec(1u64..7, 1..5).prop_map(|p| BilliardSeq::periodic(p).unwrap())
}

fn value(v: &ExtendedReal) -> QuadSurd {
    v.finite().expect("finite").clone()
}

/// `v ≥ x`, with `∞` above everything.
fn at_least(v: &ExtendedReal, x: &QuadSurd) -> bool {
    v.finite().is_none_or(|v| v >= x)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mu_is_reversal_symmetric(k in same_field_seq()) {
        let a = mu_profile(&k).unwrap().mu;
        let b = mu_profile(&k.reversal()).unwrap().mu;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lower_bounds(k in periodic()) {
        let b = sequence_billiard(&k).unwrap();
        let two = QuadSurd::from_int(2);
        let inf = value(&lambda_inf(&b).unwrap().value);
        prop_assert!(inf >= two);
        if k.right_period().iter().any(|&e| e > 2) {
            prop_assert!(inf > QuadSurd::from_int(3));
        }
        prop_assert!(at_least(&lambda_i(&b).unwrap().value, &two));
    }

    #[test]
    fn f_is_monotone(
        (x1, dx) in (1i64..1000, 0i64..1000),
        (y1, dy) in (1i64..1000, 0i64..1000),
    ) {
        let x2 = (x1 + dx).min(999);
        let y2 = (y1 + dy).min(999);
        let f = |x: i64, y: i64| {
            let r = QuadSurd::from_rational(&(rat(x, 1000) + rat(1, 1)));
            let s = QuadSurd::from_rational(&rat(y, 1000));
            functional_value(Functional::MuTriple, &r, &s).unwrap()
        };
        let (a, b) = (f(x1, y1), f(x2, y2));
        prop_assert!(a <= b);
        // the same value by the closed formula (2xy + x − y − 1)/(x + y)
        let (x, y) = (rat(x1 + 1000, 1000), rat(y1, 1000));
        let direct = (rat(2, 1) * &x * &y + &x - &y - rat(1, 1)) / (&x + &y);
        prop_assert_eq!(a, QuadSurd::from_rational(&direct));
    }

    #[test]
    fn enclosures_contain_values(k in periodic(), n in -5i64..5) {
        let t = k.tails(n);
        for x in [&t.r, &t.s, &(&t.r + &t.s)] {
            prop_assert!(enclose(x, 1_000_000_007).contains_surd(x));
        }
    }
}

#[test]
fn rho_lower_bound() {
    let rho = PointForm::rho();
    let root3 = QuadSurd::sqrt_int(3).unwrap();
    for p in [vec![1], vec![2], vec![1, 2], vec![1, 3], vec![2, 1, 1], vec![4, 1, 1, 2], vec![5]] {
        let b = sequence_billiard(&BilliardSeq::periodic(p).unwrap()).unwrap();
        let v = lambda_point(&rho, &b, 10_000).unwrap().value;
        assert!(at_least(&v, &root3));
    }
}

/// `λ∞` against the least nonzero `|Q(x, y)|` over coprime pairs in a box.
#[test]
fn lambda_inf_matches_brute_minimum() {
    for d in 5..=120i64 {
        if is_square(d) || !matches!(d % 4, 0 | 1) {
            continue;
        }
        for q in reduced_forms(d) {
            let (a, b, c) = q.int_coeffs().unwrap();
            let (a, b, c): (i64, i64, i64) = (a.try_into().unwrap(), b.try_into().unwrap(), c.try_into().unwrap());
            let mut m = i64::MAX;
            for x in -60i64..=60 {
                for y in 0i64..=60 {
                    if x.gcd(&y) == 1 {
                        m = m.min((a * x * x + b * x * y + c * y * y).abs());
                    }
                }
            }
            let want = QuadSurd::sqrt_int(d).unwrap().mul_rational(&rat(1, m));
            let (got, _) = sup_sum(&q.sequence().unwrap()).unwrap();
            assert_eq!(got, want, "{q}");
        }
    }
}

#[test]
fn markov_points_are_markov_values() {
    for p in markov_numbers(7) {
        let b = markov_witness(p).unwrap();
        assert_eq!(lambda_inf(&b).unwrap().value, ExtendedReal::Finite(markov_value(p).unwrap()), "p = {p}");
    }
}
