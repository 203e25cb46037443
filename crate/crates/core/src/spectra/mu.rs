//! Infima of index functionals over a doubly infinite sequence.
//!
//! Every functional below depends on the index `n` only through the pair
//! `(r_n, s_n)`, since `1/(r_{n−1}+s_{n−1}) = r_n s_n/(r_n+s_n)`. For fixed
//! `r` it is (the absolute value of) a Möbius function of `s`, and for fixed
//! `s` a Möbius function of `r`.
//!
//! Far to the right `r_n` is purely periodic and `s_n` converges to the value
//! it would take on the periodic extension; far to the left the roles swap.
//! Both deviating variables stay inside a continued-fraction cylinder with
//! rational ends, approach their limit by a contraction, and switch sides
//! of it once per step. On a cylinder where the Möbius function has no zero
//! and no pole the functional is monotone, so the tail of each residue class
//! is either strictly above its limit value or increases towards it from
//! its first term. That turns the infimum over `ℤ` into a finite exact
//! comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::SpectraError;
use crate::cfrac::{small_periodic_value, BilliardSeq};
use crate::exact::{ExactError, QuadSurd};

/// One of the three index functionals `μ′_n`, `μ″_n`, `μ‴_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Functional {
    MuPrime,
    MuDouble,
    MuTriple,
}

impl Functional {
    pub const ALL: [Functional; 3] = [Functional::MuPrime, Functional::MuDouble, Functional::MuTriple];

    pub fn name(self) -> &'static str {
        match self {
            Functional::MuPrime => "mu1",
            Functional::MuDouble => "mu2",
            Functional::MuTriple => "mu3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Objective {
    Mu(Functional),
    /// `−(r_n + s_n)`; its infimum is `−λ∞`.
    NegSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    R,
    S,
}

fn add(x: &QuadSurd, y: &QuadSurd) -> Result<QuadSurd, ExactError> {
    x.checked_add(y)
}

fn sub(x: &QuadSurd, y: &QuadSurd) -> Result<QuadSurd, ExactError> {
    x.checked_sub(y)
}

fn mul(x: &QuadSurd, y: &QuadSurd) -> Result<QuadSurd, ExactError> {
    x.checked_mul(y)
}

fn int(n: i64) -> QuadSurd {
    QuadSurd::from_int(n)
}

/// Coefficients `(a, b, c, d)` of `g(x) = (a x + b)/(c x + d)` in the
/// deviating variable, the other one held at `y`.
fn mobius(obj: Objective, var: Var, y: &QuadSurd) -> Result<[QuadSurd; 4], ExactError> {
    let one = int(1);
    Ok(match (obj, var) {
        (Objective::NegSum, _) => [-&one, -y, QuadSurd::zero(), one],
        (Objective::Mu(Functional::MuPrime), _) => [-y, one.clone(), one, y.clone()],
        // (2 − r + s − rs)/(r + s)
        (Objective::Mu(Functional::MuDouble), Var::S) => [sub(&one, y)?, sub(&int(2), y)?, one, y.clone()],
        (Objective::Mu(Functional::MuDouble), Var::R) => [-&add(&one, y)?, add(&int(2), y)?, one, y.clone()],
        // (2rs + r − s − 1)/(r + s)
        (Objective::Mu(Functional::MuTriple), Var::S) => {
            [sub(&mul(&int(2), y)?, &one)?, sub(y, &one)?, one, y.clone()]
        }
        (Objective::Mu(Functional::MuTriple), Var::R) => {
            [add(&mul(&int(2), y)?, &one)?, -&add(y, &one)?, one, y.clone()]
        }
    })
}

fn eval_mobius(m: &[QuadSurd; 4], x: &QuadSurd) -> Result<QuadSurd, ExactError> {
    let num = add(&mul(&m[0], x)?, &m[1])?;
    let den = add(&mul(&m[2], x)?, &m[3])?;
    num.checked_div(&den)
}

fn finish(obj: Objective, g: QuadSurd) -> QuadSurd {
    match obj {
        Objective::NegSum => g,
        Objective::Mu(_) => g.abs(),
    }
}

/// Value of the objective at the pair `(r, s)`.
pub(crate) fn objective_value(obj: Objective, r: &QuadSurd, s: &QuadSurd) -> Result<QuadSurd, ExactError> {
    let m = mobius(obj, Var::S, r)?;
    Ok(finish(obj, eval_mobius(&m, s)?))
}

/// `μ′_n`, `μ″_n` or `μ‴_n` from the tails `r_n`, `s_n`.
pub fn functional_value(f: Functional, r: &QuadSurd, s: &QuadSurd) -> Result<QuadSurd, SpectraError> {
    objective_value(Objective::Mu(f), r, s).map_err(SpectraError::from_exact)
}

/// Infimum over `n ∈ ℤ` together with the first index attaining it, or
/// `None` when it is only approached in a tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infimum {
    pub value: QuadSurd,
    pub attained_at: Option<i64>,
}

/// Rational value of `[a₁, a₂, …, a_w]` (`a₁` may be zero).
fn cf_rational(a: &[u64]) -> BigRational {
    let mut it = a.iter().rev();
    let mut x = BigRational::from_integer(BigInt::from(*it.next().expect("nonempty prefix")));
    for &k in it {
        x = BigRational::from_integer(BigInt::from(k)) + x.recip();
    }
    x
}

/// Closed interval of all `[prefix…, y]` with `y ≥ 1`.
fn cylinder(prefix: &[u64]) -> (QuadSurd, QuadSurd) {
    let e1 = cf_rational(prefix);
    let mut longer = prefix.to_vec();
    longer.push(1);
    let e2 = cf_rational(&longer);
    let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
    (QuadSurd::from_rational(&lo), QuadSurd::from_rational(&hi))
}

/// How one residue class of far indices behaves.
enum Tail {
    /// Every term equals the limit value.
    Constant,
    /// Terms on the favourable side stay strictly above the limit; the
    /// first term on the other side (0: first, 1: second) is the smallest.
    Limit { bad: Option<usize> },
}

struct TailData {
    var: Var,
    fixed: QuadSurd,
    first: QuadSurd,
    star: QuadSurd,
    prefix: Vec<u64>,
    alternating: bool,
}

/// Resolves one residue class; `None` means the cylinder is too wide.
fn classify_tail(obj: Objective, t: &TailData, v_star: &QuadSurd) -> Result<Option<Tail>, ExactError> {
    if t.first == t.star {
        return Ok(Some(Tail::Constant));
    }
    if matches!(obj, Objective::Mu(_)) && v_star.is_zero() {
        // g vanishes only at the limit point, so every far term is positive
        return Ok(Some(Tail::Limit { bad: None }));
    }
    let m = mobius(obj, t.var, &t.fixed)?;
    let (lo, hi) = cylinder(&t.prefix);
    let den_lo = add(&mul(&m[2], &lo)?, &m[3])?;
    let den_hi = add(&mul(&m[2], &hi)?, &m[3])?;
    if den_lo.signum() != den_hi.signum() || den_lo.is_zero() {
        return Ok(None);
    }
    if matches!(obj, Objective::Mu(_)) {
        let n_lo = add(&mul(&m[0], &lo)?, &m[1])?;
        let n_hi = add(&mul(&m[0], &hi)?, &m[1])?;
        // numerator is affine in x, so a sign change or zero end means a root
        if n_lo.is_zero() || n_hi.is_zero() || n_lo.signum() != n_hi.signum() {
            return Ok(None);
        }
    }
    let v_lo = finish(obj, eval_mobius(&m, &lo)?);
    let v_hi = finish(obj, eval_mobius(&m, &hi)?);
    if v_lo == v_hi {
        return Ok(Some(Tail::Constant));
    }
    let increasing = v_hi > v_lo;
    let first_good = (t.first > t.star) == increasing;
    let bad = if !first_good {
        Some(0)
    } else if t.alternating {
        Some(1)
    } else {
        None
    };
    Ok(Some(Tail::Limit { bad }))
}

/// Periodic continuation values used as tail limits.
fn right_limit_s(seq: &BilliardSeq, t: i64) -> QuadSurd {
    let r = seq.right_period().len() as i64;
    let back: Vec<u64> = (0..r).map(|i| seq.at(t - 1 - i)).collect();
    small_periodic_value(&back).recip().expect("positive")
}

fn left_limit_r(seq: &BilliardSeq, t: i64) -> QuadSurd {
    let l = seq.left_period().len() as i64;
    let fwd: Vec<u64> = (0..l).map(|i| seq.left_period()[(t + i).rem_euclid(l) as usize]).collect();
    small_periodic_value(&fwd)
}

/// Exact objective values on the index window `lo..=hi`.
fn window_values(seq: &BilliardSeq, obj: Objective, lo: i64, hi: i64) -> Result<Vec<QuadSurd>, ExactError> {
    seq.tails_range(lo, hi)
        .iter()
        .map(|tv| objective_value(obj, &tv.r, &tv.s))
        .collect()
}

/// Exact infimum over `n ∈ ℤ` plus the exactly evaluated window.
pub(crate) fn infimum(
    seq: &BilliardSeq,
    obj: Objective,
) -> Result<(Infimum, (i64, i64), Vec<QuadSurd>), SpectraError> {
    let wrap = SpectraError::from_exact;
    if seq.is_periodic() {
        let p = seq.left_period().len() as i64;
        let (lo, hi) = (seq.index(0), seq.index(p - 1));
        let vals = window_values(seq, obj, lo, hi).map_err(wrap)?;
        let (i, v) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .expect("nonempty period");
        let inf = Infimum {
            value: v.clone(),
            attained_at: Some(lo + i as i64),
        };
        return Ok((inf, (lo, hi), vals));
    }
    let l = seq.left_period().len() as i64;
    let r = seq.right_period().len() as i64;
    let c = seq.core().len() as i64;
    let mut extra = 4;
    loop {
        let (t_lo, t_hi) = (-(2 * l + extra), c + 2 * r + extra);
        let (lo, hi) = (seq.index(t_lo), seq.index(t_hi));
        let vals = window_values(seq, obj, lo, hi).map_err(wrap)?;
        // (value, attaining index)
        let mut cands: Vec<(QuadSurd, Option<i64>)> =
            vals.iter().enumerate().map(|(i, v)| (v.clone(), Some(lo + i as i64))).collect();
        let mut ok = true;
        let mut tails = Vec::new();
        for j in 1..=r {
            let t = t_hi + j;
            let n = seq.index(t);
            let tv = seq.tails(n);
            let prefix: Vec<u64> = std::iter::once(0).chain((c..t).rev().map(|u| seq.at(u))).collect();
            tails.push((
                n,
                r,
                TailData {
                    var: Var::S,
                    fixed: tv.r,
                    first: tv.s,
                    star: right_limit_s(seq, t),
                    prefix,
                    alternating: r % 2 == 1,
                },
            ));
        }
        for j in 1..=l {
            let t = t_lo - j;
            let n = seq.index(t);
            let tv = seq.tails(n);
            let prefix: Vec<u64> = (t..0).map(|u| seq.at(u)).collect();
            tails.push((
                n,
                -l,
                TailData {
                    var: Var::R,
                    fixed: tv.s,
                    first: tv.r,
                    star: left_limit_r(seq, t),
                    prefix,
                    alternating: l % 2 == 1,
                },
            ));
        }
        for (n, step, td) in &tails {
            let v_star = match td.var {
                Var::S => objective_value(obj, &td.fixed, &td.star),
                Var::R => objective_value(obj, &td.star, &td.fixed),
            }
            .map_err(wrap)?;
            match classify_tail(obj, td, &v_star).map_err(wrap)? {
                None => {
                    ok = false;
                    break;
                }
                Some(Tail::Constant) => cands.push((v_star, Some(*n))),
                Some(Tail::Limit { bad }) => {
                    cands.push((v_star, None));
                    if let Some(k) = bad {
                        let m = n + step * k as i64;
                        let tv = seq.tails(m);
                        let v = objective_value(obj, &tv.r, &tv.s).map_err(wrap)?;
                        cands.push((v, Some(m)));
                    }
                }
            }
        }
        if ok {
            let best = cands.iter().map(|c| &c.0).min().expect("nonempty").clone();
            let attained_at = cands
                .iter()
                .filter(|c| c.0 == best)
                .filter_map(|c| c.1)
                .min_by_key(|n| n.abs());
            return Ok((
                Infimum {
                    value: best,
                    attained_at,
                },
                (lo, hi),
                vals,
            ));
        }
        extra *= 2;
        if extra > 256 {
            return Err(SpectraError::Unresolved);
        }
    }
}

/// Which of the six infima realizes `μ(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalInfimum {
    pub functional: Functional,
    /// Taken over the reversal `K*`.
    pub reversed: bool,
    pub infimum: Infimum,
}

/// Index-wise `μ′_n`, `μ″_n`, `μ‴_n` on an exact window together with the
/// six infima and `μ(K)`.
#[derive(Debug, Clone)]
pub struct MuProfile {
    pub window: (i64, i64),
    pub mu1: Vec<QuadSurd>,
    pub mu2: Vec<QuadSurd>,
    pub mu3: Vec<QuadSurd>,
    pub infima: Vec<FunctionalInfimum>,
    pub mu: QuadSurd,
    /// First of the six infima equal to `μ` that is attained, if any.
    pub attained: Option<FunctionalInfimum>,
}

impl MuProfile {
    pub fn is_attained(&self) -> bool {
        self.attained.is_some()
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let list = |v: &[QuadSurd]| -> Value { v.iter().map(|x| x.to_json(digits)).collect() };
        let infima: Vec<Value> = self
            .infima
            .iter()
            .map(|f| {
                json!({
                    "functional": f.functional.name(),
                    "reversed": f.reversed,
                    "value": f.infimum.value.to_json(digits),
                    "attained_at": f.infimum.attained_at,
                })
            })
            .collect();
        json!({
            "window": [self.window.0, self.window.1],
            "mu1": list(&self.mu1),
            "mu2": list(&self.mu2),
            "mu3": list(&self.mu3),
            "infima": infima,
            "mu": self.mu.to_json(digits),
            "attained": self.attained.as_ref().map(|a| json!({
                "functional": a.functional.name(),
                "reversed": a.reversed,
                "index": a.infimum.attained_at,
            })),
            "limit": self.attained.is_none(),
        })
    }
}

pub fn mu_profile(k: &BilliardSeq) -> Result<MuProfile, SpectraError> {
    let rev = k.reversal();
    let mut infima = Vec::with_capacity(6);
    let mut window = (0, 0);
    let mut cols: Vec<Vec<QuadSurd>> = Vec::new();
    for (seq, reversed) in [(k, false), (&rev, true)] {
        for f in Functional::ALL {
            let (inf, w, vals) = infimum(seq, Objective::Mu(f))?;
            if !reversed {
                window = w;
                cols.push(vals);
            }
            infima.push(FunctionalInfimum {
                functional: f,
                reversed,
                infimum: inf,
            });
        }
    }
    let mu = infima.iter().map(|f| &f.infimum.value).min().expect("six").clone();
    let attained = infima
        .iter()
        .find(|f| f.infimum.value == mu && f.infimum.attained_at.is_some())
        .cloned();
    let mu3 = cols.pop().expect("three columns");
    let mu2 = cols.pop().expect("three columns");
    let mu1 = cols.pop().expect("three columns");
    Ok(MuProfile {
        window,
        mu1,
        mu2,
        mu3,
        infima,
        mu,
        attained,
    })
}

/// `sup_n (r_n + s_n)` with the first attaining index, if attained.
pub fn sup_sum(k: &BilliardSeq) -> Result<(QuadSurd, Option<i64>), SpectraError> {
    let (inf, _, _) = infimum(k, Objective::NegSum)?;
    Ok((-inf.value, inf.attained_at))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    #[test]
    fn k1_mu() {
        let k = BilliardSeq::periodic(vec![1, 3]).unwrap();
        let p = mu_profile(&k).unwrap();
        // 2/√21 = 2√21/21
        assert_eq!(p.mu, s(0, 2, 21, 21));
        assert!(p.is_attained());
    }

    #[test]
    fn golden_and_silver_sums() {
        let (v, _) = sup_sum(&BilliardSeq::periodic(vec![1]).unwrap()).unwrap();
        assert_eq!(v, QuadSurd::sqrt_int(5).unwrap());
        let (v, _) = sup_sum(&BilliardSeq::periodic(vec![2]).unwrap()).unwrap();
        assert_eq!(v, QuadSurd::sqrt_int(8).unwrap());
    }

    #[test]
    fn cylinder_contains_value() {
        let (lo, hi) = cylinder(&[0, 3, 1]);
        let x = s(-3, 1, 6, 21);
        assert!(lo <= x && x <= hi);
    }

    #[test]
    fn mixed_tails_are_reported() {
        let k = BilliardSeq::new(vec![1], vec![], vec![2]).unwrap();
        assert!(matches!(sup_sum(&k), Err(SpectraError::MixedFields)));
    }

    #[test]
    fn k3_profile() {
        let k = BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).unwrap();
        let p = mu_profile(&k).unwrap();
        assert_eq!(p.mu, s(-3, 1, 4, 21));
        let (v, _) = sup_sum(&k).unwrap();
        assert!(v > int(3));
    }
}
