//! Points of the triangle as positive definite forms, and the distance
//! from such a point to a geodesic.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::SpectraError;
use crate::exact::QuadSurd;
use crate::forms::{BinaryForm, FormError};

/// `a′x² + b′xy + c′y²` with `a′ > 0` and `d′ < 0`, standing for its root
/// in the upper half plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointForm {
    form: BinaryForm,
    name: Option<&'static str>,
}

impl PointForm {
    pub fn new(form: BinaryForm) -> Result<Self, SpectraError> {
        if !form.a.is_positive() || !form.disc().is_negative() {
            return Err(SpectraError::Precondition("point form needs a' > 0 and d' < 0".into()));
        }
        Ok(PointForm { form, name: None })
    }

    pub fn int(a: i64, b: i64, c: i64) -> Result<Self, SpectraError> {
        Self::new(BinaryForm::int(a, b, c)?)
    }

    fn named(a: i64, b: i64, c: i64, name: &'static str) -> Self {
        let mut p = Self::int(a, b, c).expect("definite");
        p.name = Some(name);
        p
    }

    pub fn i() -> Self {
        Self::named(1, 0, 1, "i")
    }

    pub fn rho() -> Self {
        Self::named(1, -1, 1, "rho")
    }

    pub fn two_i() -> Self {
        Self::named(1, 0, 4, "2i")
    }

    /// `√−2 = i√2`, the centre of the disk packing around `𝒞_{1/2}`.
    pub fn sqrt_minus_two() -> Self {
        Self::named(1, 0, 2, "sqrt-2")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "i" => Some(Self::i()),
            "rho" => Some(Self::rho()),
            "2i" => Some(Self::two_i()),
            "sqrt-2" | "sqrt(-2)" => Some(Self::sqrt_minus_two()),
            _ => None,
        }
    }

    pub fn name(&self) -> Option<&'static str> {
        self.name
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// `(x, y²)` of the represented point.
    pub fn point(&self) -> (QuadSurd, QuadSurd) {
        self.form.upper_root().expect("definite by construction")
    }

    pub fn in_triangle(&self) -> bool {
        let (x, y2) = self.point();
        let half = QuadSurd::from_ratio(1, 2).expect("nonzero");
        !x.is_negative() && x <= half && &(&x * &x) + &y2 >= QuadSurd::one()
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let (x, y2) = self.point();
        json!({
            "name": self.name,
            "form": self.form.to_json(digits),
            "x": x.to_json(digits),
            "y2": y2.to_json(digits),
        })
    }
}

/// `|2c′a + 2a′c − b′b|`.
pub fn sinh_numerator(zf: &PointForm, q: &BinaryForm) -> Result<QuadSurd, SpectraError> {
    let p = zf.form();
    let t = p.c.checked_mul(&q.a)?.checked_add(&p.a.checked_mul(&q.c)?)?;
    let t = t.checked_add(&t)?.checked_sub(&p.b.checked_mul(&q.b)?)?;
    Ok(t.abs())
}

/// `√(d·|d′|)`.
pub fn sinh_denominator(zf: &PointForm, q: &BinaryForm) -> Result<QuadSurd, SpectraError> {
    let d = q.disc();
    if !d.is_positive() {
        return Err(SpectraError::Precondition("geodesic form needs positive discriminant".into()));
    }
    let prod = d.checked_mul(&zf.form().disc().abs())?;
    let root = match prod.to_rational() {
        Some(x) => Some(QuadSurd::sqrt_rational(&x)?),
        None => prod.sqrt(),
    };
    root.ok_or(SpectraError::Form(FormError::NoRootInField))
}

/// `sinh` of the distance from the point of `zf` to the geodesic of `q`.
pub fn sinh_delta(zf: &PointForm, q: &BinaryForm) -> Result<QuadSurd, SpectraError> {
    Ok(sinh_numerator(zf, q)?.checked_div(&sinh_denominator(zf, q)?)?)
}

/// The quaternary form `Q″(x₁, x₂, x₃, x₄)` attached to the point `zf` and
/// the fixed form `q`, restricted to `x₁x₄ − x₂x₃ = ±1`.
///
/// It equals `2c′ã + 2a′c̃ − b′b̃` for `(ã, b̃, c̃)` the substitution of
/// `q` by the adjugate `(x₄, −x₂; −x₃, x₁)`, i.e. by `M⁻¹` up to sign.
pub fn quaternary_eval(zf: &PointForm, q: &BinaryForm, x: [i64; 4]) -> Result<QuadSurd, SpectraError> {
    let [x1, x2, x3, x4] = x;
    let det = x1 as i128 * x4 as i128 - x2 as i128 * x3 as i128;
    if det.abs() != 1 {
        return Err(SpectraError::Precondition("x1*x4 - x2*x3 must be +1 or -1".into()));
    }
    let p = zf.form();
    let (a1, b1, c1) = (&p.a, &p.b, &p.c);
    let (a, b, c) = (&q.a, &q.b, &q.c);
    let k = |n: i64| BigRational::from_integer(BigInt::from(n));
    let terms: [(QuadSurd, i64); 10] = [
        (a1.checked_mul(c)?, 2 * x1 * x1),
        (a1.checked_mul(a)?, 2 * x2 * x2),
        (c1.checked_mul(c)?, 2 * x3 * x3),
        (c1.checked_mul(a)?, 2 * x4 * x4),
        (b1.checked_mul(a)?, 2 * x2 * x4),
        (b1.checked_mul(c)?, 2 * x1 * x3),
        (c1.checked_mul(b)?, -2 * x3 * x4),
        (a1.checked_mul(b)?, -2 * x1 * x2),
        (b1.checked_mul(b)?, -x1 * x4),
        (b1.checked_mul(b)?, -x2 * x3),
    ];
    let mut acc = QuadSurd::zero();
    for (coef, m) in terms {
        acc = acc.checked_add(&coef.mul_rational(&k(m)))?;
    }
    Ok(acc)
}

/// Minimum of `|Q″|` over all unimodular `(x₁, x₂, x₃, x₄)` with entries in
/// `[−bound, bound]`, by exhaustive search in machine integers. Returns the
/// minimum and a minimizer.
pub fn quaternary_min_brute(zf: (i64, i64, i64), q: (i64, i64, i64), bound: i64) -> (i128, [i64; 4]) {
    let (a1, b1, c1) = (zf.0 as i128, zf.1 as i128, zf.2 as i128);
    let (a, b, c) = (q.0 as i128, q.1 as i128, q.2 as i128);
    let eval = |x1: i128, x2: i128, x3: i128, x4: i128| -> i128 {
        2 * a1 * c * x1 * x1 + 2 * a1 * a * x2 * x2 + 2 * c1 * c * x3 * x3 + 2 * c1 * a * x4 * x4
            + 2 * b1 * a * x2 * x4
            + 2 * b1 * c * x1 * x3
            - 2 * c1 * b * x3 * x4
            - 2 * a1 * b * x1 * x2
            - b1 * b * x1 * x4
            - b1 * b * x2 * x3
    };
    let mut best = (i128::MAX, [0i64; 4]);
    let mut consider = |x: [i64; 4]| {
        let v = eval(x[0] as i128, x[1] as i128, x[2] as i128, x[3] as i128).abs();
        if v < best.0 {
            best = (v, x);
        }
    };
    for x1 in -bound..=bound {
        for x2 in -bound..=bound {
            for x3 in -bound..=bound {
                if x1 == 0 {
                    if (x2 * x3).abs() == 1 {
                        for x4 in -bound..=bound {
                            consider([x1, x2, x3, x4]);
                        }
                    }
                    continue;
                }
                for det in [-1, 1] {
                    let num = det + x2 * x3;
                    if num % x1 == 0 {
                        let x4 = num / x1;
                        if x4.abs() <= bound {
                            consider([x1, x2, x3, x4]);
                        }
                    }
                }
            }
        }
    }
    best
}

/// `λ⁻¹ ≤ min(α, 1 − 2α)` for the improper billiard `⟨α, ∞⟩`, `0 ≤ α ≤ ½`.
pub fn improper_bound(alpha: &QuadSurd) -> QuadSurd {
    let other = &QuadSurd::one() - &(alpha + alpha);
    if *alpha <= other {
        alpha.clone()
    } else {
        other
    }
}

/// Whether `x` is in `[0, ½]`.
pub(crate) fn in_unit_half(x: &QuadSurd) -> bool {
    !x.is_negative() && x.mul_rational(&BigRational::from_integer(2.into())) <= QuadSurd::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm::int(a, b, c).unwrap()
    }

    #[test]
    fn distance_examples() {
        let i = PointForm::i();
        assert!(sinh_delta(&i, &f(1, 0, -1)).unwrap().is_zero());
        // 4/√84 = 2/√21
        let v = sinh_delta(&i, &f(3, -3, -1)).unwrap();
        assert_eq!(v, QuadSurd::new(0, 2, 21, 21).unwrap());
        let v = sinh_delta(&PointForm::rho(), &f(1, -5, -1)).unwrap();
        assert_eq!(v, QuadSurd::new(0, 5, 87, 87).unwrap());
    }

    #[test]
    fn named_points_lie_in_triangle() {
        for p in [PointForm::i(), PointForm::rho(), PointForm::two_i(), PointForm::sqrt_minus_two()] {
            assert!(p.in_triangle(), "{:?}", p.name());
        }
        assert!(PointForm::int(1, 0, -1).is_err());
    }

    #[test]
    fn quaternary_identity_and_constraint() {
        let i = PointForm::i();
        let q = f(3, -3, -1);
        assert_eq!(quaternary_eval(&i, &q, [1, 0, 0, 1]).unwrap(), QuadSurd::from_int(4));
        assert!(quaternary_eval(&i, &q, [2, 0, 0, 1]).is_err());
    }

    #[test]
    fn improper_quaternary() {
        // Q = y(x − αy) at α = 1/3: ½Q″ = −α(x₁² + x₃²) − x₃x₄ − x₁x₂
        let alpha = QuadSurd::from_ratio(1, 3).unwrap();
        let q = BinaryForm::new(QuadSurd::zero(), QuadSurd::one(), -alpha.clone()).unwrap();
        let i = PointForm::i();
        let v = quaternary_eval(&i, &q, [1, 0, 0, 1]).unwrap();
        assert_eq!(v, (-&alpha).mul_rational(&BigRational::from_integer(2.into())));
        let v = quaternary_eval(&i, &q, [1, -1, 1, 0]).unwrap();
        assert_eq!(v.abs(), QuadSurd::from_ratio(2, 3).unwrap());
        assert_eq!(improper_bound(&alpha), alpha);
        assert!(in_unit_half(&alpha));
    }

    #[test]
    fn brute_search_finds_identity_value() {
        let (m, _) = quaternary_min_brute((1, 0, 1), (3, -3, -1), 5);
        assert_eq!(m, 4);
    }
}
