use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{rational_to_string, ExactError};

/// An element `(p + q√d)/r` of a real quadratic field.
///
/// Always stored canonically: `r > 0`, `gcd(p, q, r) = 1`, `d` squarefree and
/// `d > 1` whenever `q ≠ 0`. Rationals carry `q = 0, d = 0`. Canonical storage
/// makes structural equality coincide with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// Splits `n >= 0` as `s² · k` with `k` squarefree.
pub fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    if let Some(small) = n.to_u64() {
        let (s, k) = square_part_u64(small);
        return (BigInt::from(s), BigInt::from(k));
    }
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut k = BigInt::one();
    let mut i = BigInt::from(2);
    while &i * &i <= rest {
        let ii = &i * &i;
        while (&rest % &ii).is_zero() {
            rest /= &ii;
            s *= &i;
        }
        if (&rest % &i).is_zero() {
            rest /= &i;
            k *= &i;
        }
        i += 1;
    }
    (s, k * rest)
}

fn square_part_u64(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut k = 1u64;
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        let ii = i * i;
        while n.is_multiple_of(ii) {
            n /= ii;
            s *= i;
        }
        if n.is_multiple_of(i) {
            n /= i;
            k *= i;
        }
        i += 1;
    }
    (s, k * n)
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let m = x.denom();
    let sn = n.sqrt();
    let sm = m.sqrt();
    if &(&sn * &sn) == n && &(&sm * &sm) == m {
        Some(BigRational::new(sn, sm))
    } else {
        None
    }
}

impl QuadSurd {
    /// Builds `(p + q√d)/r`, absorbing square factors of `d` into `q`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, ExactError> {
        let (p, q, r, d) = (p.into(), q.into(), r.into(), d.into());
        if r.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d));
        }
        let (s, k) = square_part(&d);
        let q = q * s;
        Ok(Self::canonical(p, q, r, k))
    }

    /// Assumes `r ≠ 0` and `d` squarefree (or 0/1).
    fn canonical(mut p: BigInt, mut q: BigInt, mut r: BigInt, mut d: BigInt) -> Self {
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() || d.is_zero() {
            q = BigInt::zero();
            d = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        if p.is_zero() && q.is_zero() {
            r = BigInt::one();
        }
        QuadSurd { p, q, r, d }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::canonical(n.into(), BigInt::zero(), BigInt::one(), BigInt::zero())
    }

    pub fn from_ratio(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self, ExactError> {
        Self::new(n, 0, m, 0)
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::canonical(x.numer().clone(), BigInt::zero(), x.denom().clone(), BigInt::zero())
    }

    /// `√d` for an integer `d ≥ 0`.
    pub fn sqrt_int(d: impl Into<BigInt>) -> Result<Self, ExactError> {
        Self::new(0, 1, 1, d)
    }

    /// `√x` for a rational `x ≥ 0`; always representable.
    pub fn sqrt_rational(x: &BigRational) -> Result<Self, ExactError> {
        if x.is_negative() {
            return Err(ExactError::NegativeRadicand(x.numer().clone()));
        }
        let n = x.numer() * x.denom();
        Self::new(0, 1, x.denom().clone(), n)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.r.is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.p.clone(), self.r.clone()))
    }

    /// Rational part `p/r`.
    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.r.clone())
    }

    /// Coefficient `q/r` of `√d`.
    pub fn radical_coeff(&self) -> BigRational {
        BigRational::new(self.q.clone(), self.r.clone())
    }

    /// Galois conjugate `(p − q√d)/r`.
    pub fn conj(&self) -> Self {
        QuadSurd { q: -&self.q, ..self.clone() }
    }

    /// Field norm `x · conj(x)`.
    pub fn norm(&self) -> BigRational {
        let num = &self.p * &self.p - &self.q * &self.q * &self.d;
        BigRational::new(num, &self.r * &self.r)
    }

    fn common_d(&self, other: &Self) -> Result<BigInt, ExactError> {
        if self.q.is_zero() {
            Ok(other.d.clone())
        } else if other.q.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(ExactError::IncompatibleRadicands(self.d.clone(), other.d.clone()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(other)?;
        let p = &self.p * &other.r + &other.p * &self.r;
        let q = &self.q * &other.r + &other.q * &self.r;
        Ok(Self::canonical(p, q, &self.r * &other.r, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(other)?;
        let p = &self.p * &other.p + &self.q * &other.q * &d;
        let q = &self.p * &other.q + &other.p * &self.q;
        Ok(Self::canonical(p, q, &self.r * &other.r, d))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // r(p − q√d) / (p² − q²d)
        let den = &self.p * &self.p - &self.q * &self.q * &self.d;
        Ok(Self::canonical(
            &self.r * &self.p,
            -(&self.r * &self.q),
            den,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.common_d(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn mul_rational(&self, x: &BigRational) -> Self {
        Self::canonical(
            &self.p * x.numer(),
            &self.q * x.numer(),
            &self.r * x.denom(),
            self.d.clone(),
        )
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        let p = &self.p * x.denom() + x.numer() * &self.r;
        Self::canonical(p, &self.q * x.denom(), &self.r * x.denom(), self.d.clone())
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 { self.recip()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Sign of the real value, as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Greatest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        let approx = if self.q.is_zero() {
            self.p.clone()
        } else {
            let s = (&self.q * &self.q * &self.d).sqrt();
            if self.q.is_negative() {
                &self.p - s - 1
            } else {
                &self.p + s
            }
        };
        let mut n = approx.div_floor(&self.r);
        while self.cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        loop {
            let next = &n + 1;
            if self.cmp_int(&next) == Ordering::Less {
                break;
            }
            n = next;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    fn cmp_int(&self, n: &BigInt) -> Ordering {
        sign_of(&(&self.p - n * &self.r), &self.q, &self.d)
    }

    /// Exact square root inside `ℚ(√d)` (or a fresh field when `self` is rational).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if let Some(x) = self.to_rational() {
            return Self::sqrt_rational(&x).ok();
        }
        // (u + v√d)² = self  ⇒  u² + v²d = p/r, 2uv = q/r, (u² − v²d)² = norm
        let n = rational_sqrt(&self.norm())?;
        let a = self.rational_part();
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&a + &n) / &two, (&a - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt(&cand) {
                let v = self.radical_coeff() / (&two * &u);
                let root = Self::canonical(
                    u.numer() * v.denom(),
                    v.numer() * u.denom(),
                    u.denom() * v.denom(),
                    self.d.clone(),
                );
                let root = root.abs();
                if &(&root * &root) == self {
                    return Some(root);
                }
            }
        }
        None
    }

    /// Lossy conversion for display and floating-point diagnostics.
    pub fn to_f64(&self) -> f64 {
        if self.q.is_zero() {
            return ratio_f64(&self.p, &self.r);
        }
        let root = self.d.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.p.sign() == self.q.sign() || self.p.is_zero() {
            ratio_f64(&self.p, &self.r) + ratio_f64(&self.q, &self.r) * root
        } else {
            // Avoid cancellation: x = (p² − q²d) / (r (p − q√d)).
            let num = &self.p * &self.p - &self.q * &self.q * &self.d;
            let den = ratio_f64(&self.p, &BigInt::one()) - ratio_f64(&self.q, &BigInt::one()) * root;
            ratio_f64(&num, &self.r) / den
        }
    }

    /// Decimal rendering with `digits` significant digits, round-half-even.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let x = self.abs();
        let mut e = x.to_f64().abs().log10().floor() as i64;
        if !(-100_000..=100_000).contains(&e) {
            e = 0;
        }
        while x < pow10(e) {
            e -= 1;
        }
        while x >= pow10(e + 1) {
            e += 1;
        }
        let shift = digits as i64 - 1 - e;
        let mut n = round_half_even(&x.mul_rational(&pow10_rat(shift)));
        let mut shift = shift;
        if n >= BigInt::from(10).pow(digits as u32) {
            // rounding carried into a new leading digit
            n = round_half_even(&x.mul_rational(&pow10_rat(shift - 1)));
            shift -= 1;
        }
        let s = format_scaled(&n, shift);
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }

    /// Decimal rendering with a fixed number of places, round-half-even.
    pub fn to_fixed(&self, places: usize) -> String {
        let neg = self.is_negative();
        let n = round_half_even(&self.abs().mul_rational(&pow10_rat(places as i64)));
        let s = format_scaled(&n, places as i64);
        if neg && !n.is_zero() {
            format!("-{s}")
        } else {
            s
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "p": int_json(&self.p),
            "q": int_json(&self.q),
            "r": int_json(&self.r),
            "d": int_json(&self.d),
            "decimal": self.to_decimal(digits),
        })
    }
}

pub(crate) fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn ratio_f64(n: &BigInt, m: &BigInt) -> f64 {
    let r = BigRational::new(n.clone(), m.clone());
    num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)
}

fn pow10_rat(e: i64) -> BigRational {
    let t = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(t)
    } else {
        BigRational::new(BigInt::one(), t)
    }
}

fn pow10(e: i64) -> QuadSurd {
    QuadSurd::from_rational(&pow10_rat(e))
}

fn round_half_even(x: &QuadSurd) -> BigInt {
    let f = x.floor();
    let frac = x - &QuadSurd::from_int(f.clone());
    let half = QuadSurd::from_ratio(1, 2).expect("nonzero denominator");
    match frac.cmp(&half) {
        Ordering::Less => f,
        Ordering::Greater => f + 1,
        Ordering::Equal => {
            if f.is_even() {
                f
            } else {
                f + 1
            }
        }
    }
}

/// Formats `n · 10^(−shift)` in plain positional notation.
fn format_scaled(n: &BigInt, shift: i64) -> String {
    let digits = n.to_string();
    if shift <= 0 {
        let mut s = digits;
        s.extend(std::iter::repeat_n('0', shift.unsigned_abs() as usize));
        return s;
    }
    let shift = shift as usize;
    if digits.len() > shift {
        let (a, b) = digits.split_at(digits.len() - shift);
        format!("{a}.{b}")
    } else {
        format!("0.{}{}", "0".repeat(shift - digits.len()), digits)
    }
}

fn sign_of(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let sp = sign_ord(p);
    let sq = sign_ord(q);
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: |p| vs |q|√d, never equal since d is squarefree > 1
    if p * p > q * q * d {
        sp
    } else {
        sq
    }
}

fn sign_ord(n: &BigInt) -> Ordering {
    match n.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

impl Ord for QuadSurd {
    /// Exact total order, including surds from different fields.
    fn cmp(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.checked_sub(other) {
            return diff.signum();
        }
        // self − other = X + Y with X ∈ ℚ(√d₁), Y = c√d₂
        let x = QuadSurd::canonical(
            &self.p * &other.r - &other.p * &self.r,
            &self.q * &other.r,
            &self.r * &other.r,
            self.d.clone(),
        );
        let y = QuadSurd::canonical(BigInt::zero(), -other.q.clone(), other.r.clone(), other.d.clone());
        let (sx, sy) = (x.signum(), y.signum());
        if sx == Ordering::Equal {
            return sy;
        }
        if sy == Ordering::Equal || sx == sy {
            return sx;
        }
        let x2 = &x * &x;
        let y2 = QuadSurd::from_rational(&y.norm().abs());
        if x2 > y2 {
            sx
        } else {
            sy
        }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", rational_to_string(&self.rational_part(), false));
        }
        let radical = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if self.q == -BigInt::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.q, self.d)
        };
        let num = if self.p.is_zero() {
            radical
        } else if self.q.is_negative() {
            format!("{}{}", self.p, radical)
        } else {
            format!("{}+{}", self.p, radical)
        };
        if self.r.is_one() {
            write!(f, "{num}")
        } else if self.p.is_zero() {
            write!(f, "{num}/{}", self.r)
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.to_decimal(12))
    }
}

impl From<i64> for QuadSurd {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for QuadSurd {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

impl From<&BigRational> for QuadSurd {
    fn from(x: &BigRational) -> Self {
        Self::from_rational(x)
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}

// Operators panic on mixed radicands; use the `checked_*` methods at API boundaries.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadSurd> for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {} {} {}", e, self, stringify!($method), rhs),
                }
            }
        }
        impl $trait<QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadSurd> for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    #[test]
    fn canonical_form_absorbs_squares_and_signs() {
        let x = s(2, 2, -4, 8); // (2 + 2√8)/(-4) = (-1 - 2√2)/2
        assert_eq!((x.p(), x.q(), x.r(), x.d()), (&(-1).into(), &(-2).into(), &2.into(), &2.into()));
        assert!(s(3, 5, 1, 9).is_integer());
        assert_eq!(s(3, 5, 1, 9), QuadSurd::from_int(18));
        assert_eq!(s(0, 0, 7, 5), QuadSurd::zero());
    }

    #[test]
    fn conjugate_sum_and_pell_norm() {
        assert_eq!(s(1, 1, 2, 21) + s(-1, 1, 2, 21), QuadSurd::sqrt_int(21).unwrap());
        assert_eq!(s(5, 1, 2, 21) * s(5, -1, 2, 21), QuadSurd::one());
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let e = QuadSurd::sqrt_int(2).unwrap().checked_add(&QuadSurd::sqrt_int(3).unwrap());
        assert!(matches!(e, Err(ExactError::IncompatibleRadicands(_, _))));
        assert_eq!(QuadSurd::one().checked_div(&QuadSurd::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn comparisons() {
        assert!(s(1, 1, 2, 21) > QuadSurd::from_int(2));
        assert!(s(1, -1, 2, 21) < QuadSurd::from_int(-1));
        assert_eq!(s(1, 1, 2, 21).cmp(&s(1, 1, 2, 21)), Ordering::Equal);
        // √2 + √3 ≈ 3.146 vs π-ish rational 22/7 ≈ 3.142857
        let a = QuadSurd::sqrt_int(2).unwrap();
        let b = QuadSurd::sqrt_int(3).unwrap();
        assert!(a < b);
        assert!(s(0, 1, 1, 10) > b);
        assert!(s(7, -1, 2, 5) < s(1, 1, 1, 2)); // 2.38 < 2.414
    }

    #[test]
    fn floors() {
        assert_eq!(s(1, 1, 2, 21).floor(), 2.into());
        assert_eq!(QuadSurd::from_ratio(-1, 2).unwrap().floor(), (-1).into());
        assert_eq!(QuadSurd::from_int(7).floor(), 7.into());
        assert_eq!(s(1, -1, 2, 21).floor(), (-2).into());
        assert_eq!(s(0, -1, 1, 2).ceil(), (-1).into());
    }

    #[test]
    fn square_roots() {
        assert_eq!(QuadSurd::from_int(8).sqrt().unwrap(), s(0, 2, 1, 2));
        // (2 + √3)² = 7 + 4√3
        assert_eq!(s(7, 4, 1, 3).sqrt().unwrap(), s(2, 1, 1, 3));
        assert_eq!(s(7, 3, 1, 3).sqrt(), None);
        assert_eq!(QuadSurd::from_int(-1).sqrt(), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(s(0, 1, 2, 21).to_decimal(15), "2.29128784747792");
        assert_eq!(s(0, 1, 2, 21).to_fixed(5), "2.29129");
        assert_eq!(QuadSurd::from_ratio(5, 2).unwrap().to_fixed(0), "2");
        assert_eq!(QuadSurd::from_ratio(7, 2).unwrap().to_fixed(0), "4");
        assert_eq!(QuadSurd::from_ratio(-1, 8).unwrap().to_decimal(2), "-0.12");
        assert_eq!(QuadSurd::from_int(999).to_decimal(2), "1000");
        assert_eq!(QuadSurd::from_ratio(1, 3).unwrap().to_decimal(3), "0.333");
    }

    #[test]
    fn display_roundtrips_through_text() {
        assert_eq!(s(1, -1, 2, 21).to_string(), "(1-sqrt(21))/2");
        assert_eq!(s(0, 2, 3, 14).to_string(), "2*sqrt(14)/3");
        assert_eq!(QuadSurd::from_ratio(-3, 4).unwrap().to_string(), "-3/4");
    }

    #[test]
    fn powers() {
        let eps = s(5, 1, 2, 21);
        assert_eq!(eps.pow(2).unwrap(), s(23, 5, 2, 21));
        assert_eq!(eps.pow(-1).unwrap(), s(5, -1, 2, 21));
        assert_eq!(eps.pow(0).unwrap(), QuadSurd::one());
    }
}
