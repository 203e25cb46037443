use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{rational_to_string, ExactError, QuadSurd};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::EmptyInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    /// `[a/b, c/e]` from small integers; panics on a zero denominator.
    pub fn from_ratios(a: i64, b: i64, c: i64, e: i64) -> Result<Self, ExactError> {
        Self::new(
            BigRational::new(a.into(), b.into()),
            BigRational::new(c.into(), e.into()),
        )
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_surd(&self, x: &QuadSurd) -> bool {
        QuadSurd::from_rational(&self.lo) <= *x && *x <= QuadSurd::from_rational(&self.hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        )
        .ok()
    }

    pub fn recip(&self) -> Result<Interval, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::EnclosureDivision);
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval, ExactError> {
        Ok(self * &other.recip()?)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: BigRational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        } else if self.hi <= BigRational::zero() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lo": rational_to_string(&self.lo, true),
            "hi": rational_to_string(&self.hi, true),
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational_to_string(&self.lo, false),
            rational_to_string(&self.hi, false)
        )
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_else(BigRational::one);
        let hi = c.iter().max().cloned().unwrap_or_else(BigRational::one);
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

/// Arithmetic expression tree evaluated in interval arithmetic.
#[derive(Clone, Debug)]
pub enum IntervalExpr {
    Const(Interval),
    Add(Box<IntervalExpr>, Box<IntervalExpr>),
    Sub(Box<IntervalExpr>, Box<IntervalExpr>),
    Mul(Box<IntervalExpr>, Box<IntervalExpr>),
    Div(Box<IntervalExpr>, Box<IntervalExpr>),
    Neg(Box<IntervalExpr>),
    Abs(Box<IntervalExpr>),
}

impl IntervalExpr {
    pub fn c(x: Interval) -> Self {
        IntervalExpr::Const(x)
    }

    pub fn add(a: Self, b: Self) -> Self {
        IntervalExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Self, b: Self) -> Self {
        IntervalExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Self, b: Self) -> Self {
        IntervalExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Self, b: Self) -> Self {
        IntervalExpr::Div(Box::new(a), Box::new(b))
    }
}

/// Encloses the range of `expr` over its operand intervals.
pub fn interval_eval(expr: &IntervalExpr) -> Result<Interval, ExactError> {
    Ok(match expr {
        IntervalExpr::Const(x) => x.clone(),
        IntervalExpr::Add(a, b) => &interval_eval(a)? + &interval_eval(b)?,
        IntervalExpr::Sub(a, b) => &interval_eval(a)? - &interval_eval(b)?,
        IntervalExpr::Mul(a, b) => &interval_eval(a)? * &interval_eval(b)?,
        IntervalExpr::Div(a, b) => interval_eval(a)?.div(&interval_eval(b)?)?,
        IntervalExpr::Neg(a) => -&interval_eval(a)?,
        IntervalExpr::Abs(a) => interval_eval(a)?.abs(),
    })
}

/// Rational enclosure of a surd whose width is at most `1/scale`.
pub fn enclose(x: &QuadSurd, scale: u64) -> Interval {
    if let Some(r) = x.to_rational() {
        return Interval::point(r);
    }
    let scale = num_bigint::BigInt::from(scale.max(1));
    let f = x.mul_rational(&BigRational::from_integer(scale.clone())).floor();
    Interval {
        lo: BigRational::new(f.clone(), scale.clone()),
        hi: BigRational::new(f + 1, scale),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64, c: i64, e: i64) -> Interval {
        Interval::from_ratios(a, b, c, e).unwrap()
    }

    #[test]
    fn subtraction_encloses_lemma_style_difference() {
        let r = &iv(2, 9, 3, 10) - &iv(3, 10, 4, 9);
        assert!(r.width() <= BigRational::new(4.into(), 9.into()));
        assert!(iv(-2, 9, 0, 1).is_subset_of(&r));
    }

    #[test]
    fn point_products_and_sums() {
        assert_eq!(&Interval::int(1) * &Interval::int(1), Interval::int(1));
        assert_eq!(&iv(0, 1, 1, 7) + &iv(2, 1, 15, 7), iv(2, 1, 16, 7));
    }

    #[test]
    fn division_by_zero_straddling_interval_fails() {
        let e = IntervalExpr::div(IntervalExpr::c(Interval::int(1)), IntervalExpr::c(iv(-1, 1, 1, 1)));
        assert_eq!(interval_eval(&e), Err(ExactError::EnclosureDivision));
        assert_eq!(iv(1, 2, 2, 1).recip().unwrap(), iv(1, 2, 2, 1));
    }

    #[test]
    fn surd_enclosure_is_tight() {
        let x = QuadSurd::sqrt_int(21).unwrap();
        let e = enclose(&x, 1000);
        assert!(e.contains_surd(&x));
        assert_eq!(e, iv(4582, 1000, 4583, 1000));
    }

    #[test]
    fn json_keeps_denominators() {
        assert_eq!(Interval::int(2).to_json().to_string(), r#"{"hi":"2/1","lo":"2/1"}"#);
    }
}
