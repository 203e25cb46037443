use std::cmp::Ordering;

use mbs_core::exact::{interval_eval, Interval, IntervalExpr, QuadSurd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

const RADICANDS: [i64; 8] = [2, 3, 5, 6, 7, 13, 21, 8];

fn scale() -> BigInt {
    BigInt::from(10).pow(100)
}

/// `floor(x · 10¹⁰⁰)` up to a few units, by integer square roots.
fn oracle(x: &QuadSurd) -> BigInt {
    let s = scale();
    let root = (x.d() * &s * &s).sqrt();
    (x.p() * &s + x.q() * root) / x.r()
}

fn surd_in(d: i64) -> impl Strategy<Value = QuadSurd> {
    (-60i64..60, -25i64..25, 1i64..40).prop_map(move |(p, q, r)| QuadSurd::new(p, q, r, d).unwrap())
}

fn any_surd() -> impl Strategy<Value = QuadSurd> {
    (0..RADICANDS.len()).prop_flat_map(|i| surd_in(RADICANDS[i]))
}

fn triple_same_field() -> impl Strategy<Value = (QuadSurd, QuadSurd, QuadSurd)> {
    (0..RADICANDS.len()).prop_flat_map(|i| {
        let d = RADICANDS[i];
        (surd_in(d), surd_in(d), surd_in(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn field_laws((a, b, c) in triple_same_field()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QuadSurd::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), QuadSurd::one());
        }
    }

    #[test]
    fn order_matches_oracle(a in any_surd(), b in any_surd()) {
        let (x, y) = (oracle(&a), oracle(&b));
        let margin = BigInt::from(1000);
        if (&x - &y).abs() > margin {
            prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        } else if a.d() == b.d() {
            // same field and within 10⁻⁹⁷: equal
            prop_assert_eq!(a.cmp(&b), Ordering::Equal);
        }
    }

    #[test]
    fn decimal_matches_oracle(a in any_surd()) {
        let fixed = a.to_fixed(60);
        let (int, frac) = fixed.trim_start_matches('-').split_once('.').unwrap();
        let mut n: BigInt = format!("{int}{frac}").parse().unwrap();
        if fixed.starts_with('-') {
            n = -n;
        }
        let o = oracle(&a) / BigInt::from(10).pow(40);
        prop_assert!((n - o).abs() <= BigInt::one());
    }

    #[test]
    fn literal_round_trip(a in any_surd()) {
        prop_assert_eq!(mbs_core::literal::parse_surd(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn floor_brackets(a in any_surd()) {
        let f = QuadSurd::from_int(a.floor());
        prop_assert!(f <= a);
        prop_assert!(a < f.add_rational(&BigRational::one()));
    }

    #[test]
    fn intervals_contain_point_images(
        (xl, xw, xt) in (-40i64..40, 1i64..20, 0i64..=100),
        (yl, yw, yt) in (-40i64..40, 1i64..20, 0i64..=100),
        op in 0usize..4,
    ) {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let xi = Interval::new(r(xl, 7), r(xl + xw, 7)).unwrap();
        let yi = Interval::new(r(yl, 5), r(yl + yw, 5)).unwrap();
        let x = r(xl * 100 + xw * xt, 700);
        let y = r(yl * 100 + yw * yt, 500);
        let (cx, cy) = (IntervalExpr::c(xi), IntervalExpr::c(yi.clone()));
        let (expr, val) = match op {
            0 => (IntervalExpr::add(cx, cy), &x + &y),
            1 => (IntervalExpr::sub(cx, cy), &x - &y),
            2 => (IntervalExpr::mul(cx, cy), &x * &y),
            _ => {
                if yi.contains_zero() {
                    prop_assert!(interval_eval(&IntervalExpr::div(cx, cy)).is_err());
                    return Ok(());
                }
                (IntervalExpr::div(cx, cy), &x / &y)
            }
        };
        prop_assert!(interval_eval(&expr).unwrap().contains(&val));
    }
}

#[test]
fn oracle_sanity() {
    let phi = QuadSurd::new(1, 1, 2, 5).unwrap();
    let o = oracle(&phi).to_string();
    assert!(o.starts_with("16180339887498948482045868343656381177203091798057628621354486227052604628189024497072"));
}
