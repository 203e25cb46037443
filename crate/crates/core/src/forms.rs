//! Binary quadratic forms under the extended modular group `PGL(2,ℤ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cfrac::{BilliardSeq, CfError};
use crate::exact::{ExactError, ExtendedReal, QuadSurd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("degenerate form: discriminant is zero")]
    Degenerate,
    #[error("discriminant must be positive")]
    NotIndefinite,
    #[error("form represents zero; its billiard is improper")]
    RepresentsZero,
    #[error("form is not reduced")]
    NotReduced,
    #[error("discriminant has no square root in the coefficient field")]
    NoRootInField,
    #[error("matrix determinant must be +1 or -1")]
    BadDeterminant,
    #[error("{0} is a perfect square")]
    SquareDiscriminant(BigInt),
    #[error("discriminant {0} is not 0 or 1 mod 4")]
    BadDiscriminant(BigInt),
    #[error("endpoints must be distinct")]
    EqualEndpoints,
    #[error("reduction did not terminate within the step bound")]
    ReductionBound,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// `±[[a, b], [c, d]]` with determinant `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GL2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl GL2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, FormError> {
        let m = GL2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if m.det().abs().is_one() {
            Ok(m)
        } else {
            Err(FormError::BadDeterminant)
        }
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        GL2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// Reflection in the unit circle.
    pub fn gen_a() -> Self {
        Self::raw(0, 1, 1, 0)
    }

    /// Reflection in the imaginary axis.
    pub fn gen_b() -> Self {
        Self::raw(-1, 0, 0, 1)
    }

    /// Reflection in the line `x = 1/2`.
    pub fn gen_c() -> Self {
        Self::raw(-1, 1, 0, 1)
    }

    /// `[[k, 1], [1, 0]]`, one continued-fraction step.
    pub fn cf_step(k: impl Into<BigInt>) -> Self {
        GL2 {
            a: k.into(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    pub fn translation(n: impl Into<BigInt>) -> Self {
        GL2 {
            a: BigInt::one(),
            b: n.into(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &GL2) -> GL2 {
        GL2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse up to the global sign.
    pub fn inverse(&self) -> GL2 {
        GL2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)` on `ℝ ∪ {∞}`.
    pub fn apply(&self, z: &ExtendedReal) -> ExtendedReal {
        let (num, den) = match z {
            ExtendedReal::Infinity => (
                QuadSurd::from_int(self.a.clone()),
                QuadSurd::from_int(self.c.clone()),
            ),
            ExtendedReal::Finite(x) => (
                &x.mul_rational(&BigRational::from_integer(self.a.clone()))
                    + &QuadSurd::from_int(self.b.clone()),
                &x.mul_rational(&BigRational::from_integer(self.c.clone()))
                    + &QuadSurd::from_int(self.d.clone()),
            ),
        };
        if den.is_zero() {
            ExtendedReal::Infinity
        } else {
            ExtendedReal::Finite(&num / &den)
        }
    }

    /// Same matrix with the sign normalized so that the first nonzero entry is positive.
    pub fn normalized(&self) -> GL2 {
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .cloned()
            .unwrap_or_else(BigInt::one);
        if first.is_negative() {
            GL2 {
                a: -&self.a,
                b: -&self.b,
                c: -&self.c,
                d: -&self.d,
            }
        } else {
            self.clone()
        }
    }
}

/// `ax² + bxy + cy²` with coefficients in a common real quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: QuadSurd,
    pub b: QuadSurd,
    pub c: QuadSurd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPair {
    pub alpha: ExtendedReal,
    pub beta: ExtendedReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassPredicates {
    pub represents_zero: bool,
    pub reciprocal: bool,
    pub ambiguous: bool,
    pub primitive_integral_scalable: bool,
}

impl BinaryForm {
    pub fn new(a: QuadSurd, b: QuadSurd, c: QuadSurd) -> Result<Self, FormError> {
        let f = BinaryForm { a, b, c };
        f.checked_disc()?;
        Ok(f)
    }

    pub fn int(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        Self::new(a.into(), b.into(), c.into())
    }

    fn checked_disc(&self) -> Result<QuadSurd, FormError> {
        let four_ac = self.a.checked_mul(&self.c)?.mul_rational(&BigRational::from_integer(4.into()));
        let d = self.b.checked_mul(&self.b)?.checked_sub(&four_ac)?;
        if d.is_zero() {
            Err(FormError::Degenerate)
        } else {
            Ok(d)
        }
    }

    pub fn disc(&self) -> QuadSurd {
        self.checked_disc().expect("validated at construction")
    }

    /// `√disc` in the coefficient field.
    pub fn sqrt_disc(&self) -> Result<QuadSurd, FormError> {
        self.disc().sqrt().ok_or(FormError::NoRootInField)
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }

    pub fn scale(&self, k: &QuadSurd) -> BinaryForm {
        BinaryForm {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
        }
    }

    /// `Q(x, y)` at integers.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> QuadSurd {
        let r = |n: BigInt| BigRational::from_integer(n);
        &(&self.a.mul_rational(&r(x * x)) + &self.b.mul_rational(&r(x * y))) + &self.c.mul_rational(&r(y * y))
    }

    pub fn is_rational(&self) -> bool {
        self.a.is_rational() && self.b.is_rational() && self.c.is_rational()
    }

    pub fn is_primitive_integral(&self) -> bool {
        self.a.is_integer()
            && self.b.is_integer()
            && self.c.is_integer()
            && self.a.p().gcd(self.b.p()).gcd(self.c.p()).is_one()
    }

    /// Integer coefficients, when the form is integral.
    pub fn int_coeffs(&self) -> Option<(BigInt, BigInt, BigInt)> {
        (self.a.is_integer() && self.b.is_integer() && self.c.is_integer())
            .then(|| (self.a.p().clone(), self.b.p().clone(), self.c.p().clone()))
    }

    /// `κQ` primitive integral for some `κ > 0`, when such `κ` exists.
    pub fn primitive_scaling(&self) -> Option<(QuadSurd, BinaryForm)> {
        let lead = [&self.a, &self.b, &self.c].into_iter().find(|x| !x.is_zero())?.clone();
        let ratios: Vec<BigRational> = [&self.a, &self.b, &self.c]
            .into_iter()
            .map(|x| (x / &lead).to_rational())
            .collect::<Option<_>>()?;
        let den = ratios.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let nums: Vec<BigInt> = ratios.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let g = nums.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let nums: Vec<BigInt> = nums.iter().map(|x| x / &g).collect();
        // κ = den / (g · lead) keeps orientation when positive
        let mut kappa = QuadSurd::from_rational(&BigRational::new(den, g)) / lead;
        let mut out = BinaryForm {
            a: nums[0].clone().into(),
            b: nums[1].clone().into(),
            c: nums[2].clone().into(),
        };
        if kappa.is_negative() {
            kappa = -kappa;
            out = out.neg();
        }
        Some((kappa, out))
    }

    /// Form with first root `alpha` and second root `beta`.
    pub fn from_roots(alpha: &ExtendedReal, beta: &ExtendedReal) -> Result<Self, FormError> {
        if alpha == beta {
            return Err(FormError::EqualEndpoints);
        }
        let f = match (alpha, beta) {
            (ExtendedReal::Finite(x), ExtendedReal::Infinity) => {
                BinaryForm::new(QuadSurd::zero(), QuadSurd::one(), -x)?
            }
            (ExtendedReal::Infinity, ExtendedReal::Finite(y)) => {
                BinaryForm::new(QuadSurd::zero(), -QuadSurd::one(), y.clone())?
            }
            (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => {
                let sum = x.checked_add(y)?;
                let prod = x.checked_mul(y)?;
                let f = BinaryForm::new(QuadSurd::one(), -sum, prod)?;
                if x > y {
                    f
                } else {
                    f.neg()
                }
            }
            _ => return Err(FormError::EqualEndpoints),
        };
        Ok(match f.primitive_scaling() {
            Some((_, g)) => g,
            None => f,
        })
    }

    /// `(Q|M)(x, y) = det(M) · Q(a′x + b′y, c′x + d′y)`.
    pub fn act(&self, m: &GL2) -> BinaryForm {
        let r = |n: BigInt| BigRational::from_integer(n);
        let (a1, b1, c1, d1) = (&m.a, &m.b, &m.c, &m.d);
        let det = m.det();
        let comb = |u: BigInt, v: BigInt, w: BigInt| -> QuadSurd {
            let t = &(&self.a.mul_rational(&r(u)) + &self.b.mul_rational(&r(v))) + &self.c.mul_rational(&r(w));
            t.mul_rational(&r(det.clone()))
        };
        BinaryForm {
            a: comb(a1 * a1, a1 * c1, c1 * c1),
            b: comb(
                BigInt::from(2) * a1 * b1,
                a1 * d1 + b1 * c1,
                BigInt::from(2) * c1 * d1,
            ),
            c: comb(b1 * b1, b1 * d1, d1 * d1),
        }
    }

    pub fn roots(&self) -> Result<RootPair, FormError> {
        if self.a.is_zero() {
            let root = ExtendedReal::Finite(-(&self.c / &self.b));
            return Ok(if self.b.is_positive() {
                RootPair {
                    alpha: root,
                    beta: ExtendedReal::Infinity,
                }
            } else {
                RootPair {
                    alpha: ExtendedReal::Infinity,
                    beta: root,
                }
            });
        }
        if !self.disc().is_positive() {
            return Err(FormError::NotIndefinite);
        }
        let sd = self.sqrt_disc()?;
        let two_a = &self.a + &self.a;
        Ok(RootPair {
            alpha: ExtendedReal::Finite((&sd - &self.b) / &two_a),
            beta: ExtendedReal::Finite((-&sd - &self.b) / &two_a),
        })
    }

    /// Root of a positive definite form in the upper half plane, as
    /// `(x, y²)` with `z = x + iy`.
    pub fn upper_root(&self) -> Result<(QuadSurd, QuadSurd), FormError> {
        let d = self.disc();
        if !d.is_negative() || !self.a.is_positive() {
            return Err(FormError::NotIndefinite);
        }
        let two_a = &self.a + &self.a;
        let x = -(&self.b / &two_a);
        let y2 = -(&d / &(&two_a * &two_a));
        Ok((x, y2))
    }

    pub fn is_reduced(&self) -> bool {
        match self.roots() {
            Ok(RootPair {
                alpha: ExtendedReal::Finite(a),
                beta: ExtendedReal::Finite(b),
            }) => a > QuadSurd::one() && b > QuadSurd::from_int(-1) && b.is_negative(),
            _ => false,
        }
    }

    pub fn represents_zero(&self) -> Result<bool, FormError> {
        let r = self.roots()?;
        Ok(!(matches!(&r.alpha, ExtendedReal::Finite(x) if !x.is_rational())
            && matches!(&r.beta, ExtendedReal::Finite(x) if !x.is_rational())))
    }

    /// Reduced form `R` and witness `M` with `Q|M = R`.
    pub fn reduce(&self) -> Result<(BinaryForm, GL2), FormError> {
        if self.represents_zero()? {
            return Err(FormError::RepresentsZero);
        }
        if self.is_reduced() {
            return Ok((self.clone(), GL2::identity()));
        }
        let roots = self.roots()?;
        let mut x = roots.alpha.expect_finite()?.clone();
        let mut y = roots.beta.expect_finite()?.clone();
        let mut m = GL2::identity();
        let one = QuadSurd::one();
        let minus_one = QuadSurd::from_int(-1);
        for j in 0..100_000 {
            if j >= 1 && y.is_negative() && y > minus_one && x > one {
                let r = self.act(&m);
                debug_assert!(r.is_reduced());
                return Ok((r, m));
            }
            let k = x.floor();
            let kq = QuadSurd::from_int(k.clone());
            x = (&x - &kq).recip()?;
            y = (&y - &kq).recip()?;
            m = m.mul(&GL2::cf_step(k));
        }
        Err(FormError::ReductionBound)
    }

    /// `Q*(x, y) = −Q(−y, x) = (−c, b, −a)`.
    pub fn star(&self) -> BinaryForm {
        BinaryForm {
            a: -&self.c,
            b: self.b.clone(),
            c: -&self.a,
        }
    }

    /// `min(|a+c|, |2a+b+c|, |a+b+2c|) / √d`.
    pub fn nu(&self) -> Result<QuadSurd, FormError> {
        let t1 = (&self.a + &self.c).abs();
        let t2 = (&(&self.a + &self.a) + &(&self.b + &self.c)).abs();
        let t3 = (&(&self.c + &self.c) + &(&self.b + &self.a)).abs();
        let m = t1.min(t2).min(t3);
        Ok(&m / &self.sqrt_disc()?)
    }

    /// Neighbouring reduced form in the chain (`forward` moves `Q_n → Q_{n+1}`).
    pub fn chain_step(&self, forward: bool) -> Result<BinaryForm, FormError> {
        Ok(self.act(&self.chain_matrix(forward)?))
    }

    pub fn chain_matrix(&self, forward: bool) -> Result<GL2, FormError> {
        if !self.is_reduced() {
            return Err(FormError::NotReduced);
        }
        let r = self.roots()?;
        Ok(if forward {
            GL2::cf_step(r.alpha.expect_finite()?.floor())
        } else {
            let k = (-r.beta.expect_finite()?.recip()?).floor();
            GL2::new(0, 1, 1, -k)?
        })
    }

    /// The full cycle `Q = Q_1, Q_2, …, Q_m` of a reduced form, if it closes
    /// within `limit` steps.
    pub fn chain_cycle(&self, limit: usize) -> Result<Option<Vec<BinaryForm>>, FormError> {
        let mut out = vec![self.clone()];
        let mut cur = self.chain_step(true)?;
        while cur != *self {
            if out.len() >= limit {
                return Ok(None);
            }
            out.push(cur.clone());
            cur = cur.chain_step(true)?;
        }
        Ok(Some(out))
    }

    /// Continued-fraction sequence of a reduced form: `r₁ = α`, `s₁ = −β`.
    pub fn sequence(&self) -> Result<BilliardSeq, FormError> {
        let (r, _) = self.reduce()?;
        let roots = r.roots()?;
        let neg_beta = -roots.beta.expect_finite()?.clone();
        Ok(BilliardSeq::from_tails(roots.alpha.expect_finite()?, &neg_beta)?)
    }

    /// Whether `Q|M = other` for some `M` (with `det M = 1` when `proper`).
    pub fn equivalent(&self, other: &BinaryForm, proper: bool) -> Result<bool, FormError> {
        if self.disc() != other.disc() {
            return Ok(false);
        }
        let (r1, m1) = self.reduce()?;
        let (r2, m2) = other.reduce()?;
        let k1 = r1.sequence()?;
        let k2 = r2.sequence()?;
        if !proper {
            return Ok(k1.equivalent(&k2, false));
        }
        // reduction witnesses contribute their determinant parity
        let flip = m1.det() != m2.det();
        Ok(if flip {
            k1.equivalent(&k2.shift(1), true)
        } else {
            k1.equivalent(&k2, true)
        })
    }

    pub fn class_predicates(&self) -> Result<ClassPredicates, FormError> {
        let represents_zero = self.represents_zero()?;
        let scalable = self.primitive_scaling().is_some();
        let (reciprocal, ambiguous) = if represents_zero {
            (false, false)
        } else {
            let reciprocal = self.equivalent(&self.neg(), false)?;
            let (r, _) = self.reduce()?;
            let ambiguous = scalable
                && match r.primitive_scaling().map(|(_, g)| g.chain_cycle(100_000)) {
                    Some(Ok(Some(cycle))) => cycle.iter().any(|f| {
                        let (a, b, _) = f.int_coeffs().expect("primitive integral");
                        (&b % &a).is_zero()
                    }),
                    _ => false,
                };
            (reciprocal, ambiguous)
        };
        Ok(ClassPredicates {
            represents_zero,
            reciprocal,
            ambiguous,
            primitive_integral_scalable: scalable && !represents_zero,
        })
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "a": coeff_string(&self.a),
            "b": coeff_string(&self.b),
            "c": coeff_string(&self.c),
            "disc": self.disc().to_json(digits),
        })
    }
}

fn coeff_string(x: &QuadSurd) -> String {
    match x.to_rational() {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => x.to_string(),
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form({},{},{})", self.a, self.b, self.c)
    }
}

/// Minimal solution of `t² − du² = ±4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub t: BigInt,
    pub u: BigInt,
    /// `+4` or `−4`.
    pub sign: i8,
    pub epsilon: QuadSurd,
}

impl PellSolution {
    /// `2 log ε` in floating point.
    pub fn length(&self) -> f64 {
        2.0 * self.epsilon.to_f64().ln()
    }
}

pub fn pell(d: &BigInt) -> Result<PellSolution, FormError> {
    if !d.is_positive() || {
        let s = d.sqrt();
        &(&s * &s) == d
    } {
        return Err(FormError::SquareDiscriminant(d.clone()));
    }
    let m = d.mod_floor(&BigInt::from(4));
    if !(m.is_zero() || m.is_one()) {
        return Err(FormError::BadDiscriminant(d.clone()));
    }
    // Continued fraction of the reduced ω = (s + √d)/2 over one period; the
    // period matrix is the fundamental automorph and `ε = q_{ℓ−1}ω + q_{ℓ−2}`.
    let root = d.sqrt();
    let s0 = if (&root - d).is_even() { root.clone() } else { &root - 1 };
    let (mut p, mut q) = (s0.clone(), BigInt::from(2));
    let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
    let mut len = 0usize;
    loop {
        let a = (&p + &root).div_floor(&q);
        let qn = &a * &q1 + &q2;
        q2 = std::mem::replace(&mut q1, qn);
        len += 1;
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
        if p == s0 && q == BigInt::from(2) {
            break;
        }
    }
    let u = q1;
    let t: BigInt = &u * &s0 + &q2 * BigInt::from(2);
    let sign: i8 = if len.is_multiple_of(2) { 4 } else { -4 };
    debug_assert_eq!(&t * &t - d * &u * &u, BigInt::from(sign));
    let epsilon = QuadSurd::new(t.clone(), u.clone(), 2, d.clone())?;
    Ok(PellSolution { t, u, sign, epsilon })
}

/// All reduced primitive integral forms of discriminant `d`.
pub fn reduced_forms(d: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let root = (d as f64).sqrt();
    let mut b = -1i64;
    while (b * b) < d {
        let rest = d - b * b;
        if rest % 4 == 0 {
            let prod = rest / 4;
            for a in 1..=prod {
                if prod % a != 0 {
                    continue;
                }
                let c = -(prod / a);
                if a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                // cheap filter, confirmed exactly below
                let alpha = (-b as f64 + root) / (2.0 * a as f64);
                if alpha < 0.5 {
                    continue;
                }
                if let Ok(f) = BinaryForm::int(a, b, c) {
                    if f.is_reduced() {
                        out.push(f);
                    }
                }
            }
        }
        b -= 1;
    }
    out
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let s = (n as f64).sqrt().round() as i64;
        (s - 1..=s + 1).any(|t| t >= 0 && t * t == n)
    }
}

/// Integer value of an integral surd, when it fits.
pub fn small_int(x: &QuadSurd) -> Option<i64> {
    x.is_integer().then(|| x.p().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm::int(a, b, c).unwrap()
    }

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    #[test]
    fn action() {
        assert_eq!(f(1, 0, -1).act(&GL2::identity()), f(1, 0, -1));
        assert_eq!(f(1, 0, -1).act(&GL2::gen_c()), f(-1, 2, 0));
        let a = GL2::gen_a();
        assert_eq!(f(3, -3, -1).act(&a).act(&a.inverse()), f(3, -3, -1));
    }

    #[test]
    fn roots_follow_conventions() {
        let r = f(1, -1, -5).roots().unwrap();
        assert_eq!(r.alpha, ExtendedReal::Finite(s(1, 1, 2, 21)));
        assert_eq!(r.beta, ExtendedReal::Finite(s(1, -1, 2, 21)));
        let r = f(0, 1, -3).roots().unwrap();
        assert_eq!((r.alpha, r.beta), (ExtendedReal::Finite(3.into()), ExtendedReal::Infinity));
        let r = f(1, 0, -1).roots().unwrap();
        assert_eq!((r.alpha, r.beta), (ExtendedReal::Finite(1.into()), ExtendedReal::Finite((-1).into())));
    }

    #[test]
    fn reduction() {
        assert!(f(3, -3, -1).is_reduced());
        assert!(!f(1, -1, -5).is_reduced());
        assert!(!f(1, 0, -1).is_reduced());
        let q = f(1, -1, -5);
        let (r, m) = q.reduce().unwrap();
        assert!(r.is_reduced());
        assert_eq!(q.act(&m), r);
        assert_eq!(r.disc(), 21.into());
        assert_eq!(f(3, -3, -1).reduce().unwrap(), (f(3, -3, -1), GL2::identity()));
        let (r, _) = f(1, 0, -2).reduce().unwrap();
        assert!(r.is_reduced());
        assert_eq!(f(0, 1, -3).reduce(), Err(FormError::RepresentsZero));
    }

    #[test]
    fn star_and_nu() {
        assert_eq!(f(3, -3, -1).star(), f(1, -3, -3));
        let q = f(3, -3, -1);
        let beta = q.roots().unwrap().beta.expect_finite().unwrap().clone();
        let alpha_star = q.star().roots().unwrap().alpha.expect_finite().unwrap().clone();
        assert_eq!(alpha_star, -beta.recip().unwrap());
        assert_eq!(q.nu().unwrap(), s(0, 2, 21, 21));
        assert_eq!(f(1, 0, -1).nu().unwrap(), QuadSurd::zero());
        assert_eq!(f(1, -3, -3).nu().unwrap(), s(0, 2, 21, 21));
    }

    #[test]
    fn chains() {
        let q = f(3, -3, -1);
        assert_eq!(q.chain_step(true).unwrap(), f(1, -3, -3));
        assert_eq!(q.chain_step(true).unwrap().chain_step(true).unwrap(), q);
        assert_eq!(q.chain_step(true).unwrap().chain_step(false).unwrap(), q);
        assert_eq!(f(1, -1, -1).chain_step(true).unwrap(), f(1, -1, -1));
        // disc 8 has the single reduced form (1,-2,-1); one step is improper,
        // so the proper return takes two steps
        assert_eq!(reduced_forms(8), vec![f(1, -2, -1)]);
        let cyc = f(1, -2, -1).chain_cycle(100).unwrap().unwrap();
        assert_eq!(cyc.len(), 1);
        assert_eq!(f(1, -2, -1).chain_matrix(true).unwrap().det(), (-1).into());
        assert_eq!(q.chain_step(false), Ok(f(1, -3, -3)));
        assert_eq!(f(1, -1, -5).chain_step(true), Err(FormError::NotReduced));
    }

    #[test]
    fn predicates() {
        assert!(f(0, 1, -3).class_predicates().unwrap().represents_zero);
        let p = f(1, -1, -5).class_predicates().unwrap();
        assert!(p.reciprocal && !p.represents_zero && p.primitive_integral_scalable);
        assert!(f(1, 0, -2).class_predicates().unwrap().ambiguous);
    }

    #[test]
    fn pell_units() {
        let p = pell(&21.into()).unwrap();
        assert_eq!((p.t, p.u, p.sign, p.epsilon), (5.into(), 1.into(), 4, s(5, 1, 2, 21)));
        let p = pell(&5.into()).unwrap();
        assert_eq!((p.t, p.u, p.sign), (1.into(), 1.into(), -4));
        let p = pell(&8.into()).unwrap();
        assert_eq!((p.t, p.u, p.sign, p.epsilon), (2.into(), 1.into(), -4, s(1, 1, 1, 2)));
        assert!(pell(&16.into()).is_err());
        // large fundamental unit: 313 = 4·78 + 1
        let p = pell(&313.into()).unwrap();
        assert_eq!(p.sign, -4);
        assert_eq!(&p.t * &p.t - BigInt::from(313) * &p.u * &p.u, BigInt::from(-4));
    }

    #[test]
    fn pell_matches_search() {
        for d in 5..400i64 {
            if is_square(d) || !(d % 4 == 0 || d % 4 == 1) {
                continue;
            }
            let p = pell(&d.into()).unwrap();
            let found = (1i64..2000).find_map(|u| {
                [-4i64, 4].into_iter().find_map(|sg| {
                    let t2 = d * u * u + sg;
                    let t = (t2 as f64).sqrt().round() as i64;
                    (t2 > 0 && t * t == t2).then_some((t, u, sg))
                })
            });
            if let Some((t, u, sg)) = found {
                assert_eq!((p.t, p.u, p.sign as i64), (t.into(), u.into(), sg), "d = {d}");
            }
        }
    }

    #[test]
    fn forms_from_roots() {
        let q = BinaryForm::from_roots(
            &ExtendedReal::Finite(s(1, 1, 2, 21)),
            &ExtendedReal::Finite(s(1, -1, 2, 21)),
        )
        .unwrap();
        assert_eq!(q, f(1, -1, -5));
        let c3 = BinaryForm::from_roots(
            &ExtendedReal::Finite(s(5, 1, 2, 21)),
            &ExtendedReal::Finite(s(3, -1, 2, 21)),
        )
        .unwrap();
        let r = c3.roots().unwrap();
        assert_eq!(r.alpha, ExtendedReal::Finite(s(5, 1, 2, 21)));
        assert_eq!(r.beta, ExtendedReal::Finite(s(3, -1, 2, 21)));
        let v = BinaryForm::from_roots(&ExtendedReal::Finite(0.into()), &ExtendedReal::Infinity).unwrap();
        assert_eq!(v, f(0, 1, 0));
    }

    #[test]
    fn reduced_form_enumeration() {
        assert_eq!(reduced_forms(5), vec![f(1, -1, -1)]);
        let d21 = reduced_forms(21);
        assert!(d21.contains(&f(3, -3, -1)) && d21.contains(&f(1, -3, -3)));
    }
}
