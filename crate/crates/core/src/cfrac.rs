//! Simple continued fractions of quadratic surds and doubly infinite,
//! eventually periodic sequences of positive integers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{ExactError, QuadSurd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("rational input has the finite expansion {0:?}")]
    FiniteExpansion(Vec<BigInt>),
    #[error("empty period")]
    EmptyPeriod,
    #[error("sequence entries must be positive integers")]
    NonPositiveEntry,
    #[error("tail values out of range: need r > 1 and 0 < s < 1")]
    TailRange,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `[a₀; a₁, …, a_{m−1}, overline{b₁, …, b_L}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// Expansion of an irrational quadratic surd.
pub fn cf_expand(x: &QuadSurd) -> Result<CFExpansion, CfError> {
    if x.is_rational() {
        return Err(CfError::FiniteExpansion(rational_cf(x)));
    }
    let mut seen: HashMap<QuadSurd, usize> = HashMap::new();
    let mut quotients = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&start) = seen.get(&cur) {
            let period = quotients.split_off(start);
            return Ok(CFExpansion {
                preperiod: quotients,
                period,
            });
        }
        seen.insert(cur.clone(), quotients.len());
        let a = cur.floor();
        let frac = &cur - &QuadSurd::from_int(a.clone());
        quotients.push(a);
        cur = frac.recip()?;
    }
}

fn rational_cf(x: &QuadSurd) -> Vec<BigInt> {
    let mut n = x.p().clone();
    let mut m = x.r().clone();
    let mut out = Vec::new();
    while !m.is_zero() {
        let (a, rem) = n.div_mod_floor(&m);
        out.push(a);
        n = m;
        m = rem;
    }
    out
}

/// `[[P, P′], [Q, Q′]] = Π [[aᵢ, 1], [1, 0]]`.
fn cf_matrix<'a, I: IntoIterator<Item = &'a BigInt>>(entries: I) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for a in entries {
        m = [
            &m[0] * a + &m[1],
            m[0].clone(),
            &m[2] * a + &m[3],
            m[2].clone(),
        ];
    }
    m
}

/// Value of the purely periodic fraction `[overline{period}]`.
pub fn periodic_value(period: &[BigInt]) -> Result<QuadSurd, CfError> {
    if period.is_empty() {
        return Err(CfError::EmptyPeriod);
    }
    let [p, p1, q, q1] = cf_matrix(period);
    // x = (Px + P′)/(Qx + Q′), so Qx² + (Q′ − P)x − P′ = 0; dividing by the
    // content keeps the discriminant small enough to factor
    let (a, b, c) = (q, &q1 - &p, -p1);
    let g = a.gcd(&b).gcd(&c);
    let (a, b, c) = (a / &g, b / &g, c / &g);
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    Ok(QuadSurd::new(-b, 1, BigInt::from(2) * a, disc)?)
}

pub fn cf_value(e: &CFExpansion) -> Result<QuadSurd, CfError> {
    let mut x = periodic_value(&e.period)?;
    for a in e.preperiod.iter().rev() {
        x = &QuadSurd::from_int(a.clone()) + &x.recip()?;
    }
    Ok(x)
}

pub(crate) fn small_periodic_value(period: &[u64]) -> QuadSurd {
    let big: Vec<BigInt> = period.iter().map(|&k| BigInt::from(k)).collect();
    periodic_value(&big).expect("nonempty period")
}

/// Shortest block whose repetition yields `p`.
pub fn minimal_period<T: PartialEq + Clone>(p: &[T]) -> Vec<T> {
    let n = p.len();
    for len in 1..=n {
        if n.is_multiple_of(len) && (len..n).all(|i| p[i] == p[i - len]) {
            return p[..len].to_vec();
        }
    }
    p.to_vec()
}

/// `r_n = [k_n, k_{n+1}, …]` and `s_n = [0, k_{n−1}, k_{n−2}, …]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailValues {
    pub r: QuadSurd,
    pub s: QuadSurd,
}

/// Doubly infinite sequence `(k_n)` of positive integers, periodic toward
/// both ends.
///
/// Entries are laid out on positions `t ∈ ℤ`: the core fills `0..core.len()`,
/// the right period repeats from `core.len()` on, and the left period repeats
/// leftward so that position `−1` holds its last entry. `k_n` sits at
/// position `n − 1 + origin`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilliardSeq {
    left: Vec<u64>,
    core: Vec<u64>,
    right: Vec<u64>,
    origin: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqClass {
    pub periodic: bool,
    pub palindromic: bool,
}

impl BilliardSeq {
    /// Builds the sequence with `k₁` at the first core entry (or the first
    /// entry of the right period when the core is empty).
    pub fn new(left: Vec<u64>, core: Vec<u64>, right: Vec<u64>) -> Result<Self, CfError> {
        Self::with_origin(left, core, right, 0)
    }

    pub fn with_origin(
        left: Vec<u64>,
        core: Vec<u64>,
        right: Vec<u64>,
        origin: i64,
    ) -> Result<Self, CfError> {
        if left.is_empty() || right.is_empty() {
            return Err(CfError::EmptyPeriod);
        }
        if left.iter().chain(&core).chain(&right).any(|&k| k == 0) {
            return Err(CfError::NonPositiveEntry);
        }
        let mut s = BilliardSeq {
            left,
            core,
            right,
            origin,
        };
        s.canonicalize();
        Ok(s)
    }

    /// The purely periodic sequence with `k₁, k₂, … = period[0], period[1], …`.
    pub fn periodic(period: Vec<u64>) -> Result<Self, CfError> {
        Self::new(period.clone(), Vec::new(), period)
    }

    fn canonicalize(&mut self) {
        self.left = minimal_period(&self.left);
        self.right = minimal_period(&self.right);
        while !self.core.is_empty() && self.core[0] == self.left[0] {
            self.core.remove(0);
            self.left.rotate_left(1);
            self.origin -= 1;
        }
        while let Some(&last) = self.core.last() {
            if last != self.right[self.right.len() - 1] {
                break;
            }
            self.core.pop();
            self.right.rotate_right(1);
        }
        if self.is_periodic() {
            // put k₁ at position 0
            let shift = self.origin.rem_euclid(self.left.len() as i64) as usize;
            self.left.rotate_left(shift);
            self.right = self.left.clone();
            self.origin = 0;
        }
    }

    pub fn left_period(&self) -> &[u64] {
        &self.left
    }

    pub fn core(&self) -> &[u64] {
        &self.core
    }

    pub fn right_period(&self) -> &[u64] {
        &self.right
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// Entry at layout position `t`.
    pub fn at(&self, t: i64) -> u64 {
        let c = self.core.len() as i64;
        if t < 0 {
            self.left[t.rem_euclid(self.left.len() as i64) as usize]
        } else if t < c {
            self.core[t as usize]
        } else {
            self.right[(t - c).rem_euclid(self.right.len() as i64) as usize]
        }
    }

    /// Layout position of `k_n`.
    pub fn position(&self, n: i64) -> i64 {
        n - 1 + self.origin
    }

    /// Index `n` of the entry at layout position `t`.
    pub fn index(&self, t: i64) -> i64 {
        t + 1 - self.origin
    }

    pub fn k(&self, n: i64) -> u64 {
        self.at(self.position(n))
    }

    /// Same sequence reindexed so that the new `k_n` is the old `k_{n+j}`.
    pub fn shift(&self, j: i64) -> BilliardSeq {
        let mut s = self.clone();
        s.origin += j;
        if s.is_periodic() {
            s.canonicalize();
        }
        s
    }

    pub fn is_periodic(&self) -> bool {
        self.core.is_empty() && self.left == self.right
    }

    /// Right tail `[k_t, k_{t+1}, …]` at layout position `t`.
    fn r_at(&self, t: i64) -> QuadSurd {
        let c = self.core.len() as i64;
        let start = t.max(c);
        let phase = (start - c) as usize % self.right.len();
        let mut rot = self.right.clone();
        rot.rotate_left(phase);
        let mut x = small_periodic_value(&rot);
        for u in (t..start).rev() {
            x = &QuadSurd::from_int(self.at(u)) + &x.recip().expect("tail is positive");
        }
        x
    }

    /// Left tail `[0, k_{t−1}, k_{t−2}, …]` at layout position `t`.
    fn s_at(&self, t: i64) -> QuadSurd {
        let start = t.min(0);
        // backward reading of the left period from position start − 1
        let l = self.left.len() as i64;
        let back: Vec<u64> = (0..l).map(|i| self.at(start - 1 - i)).collect();
        let mut x = small_periodic_value(&back).recip().expect("positive");
        for u in start..t {
            x = (&QuadSurd::from_int(self.at(u)) + &x).recip().expect("positive");
        }
        x
    }

    pub fn tails(&self, n: i64) -> TailValues {
        let t = self.position(n);
        TailValues {
            r: self.r_at(t),
            s: self.s_at(t),
        }
    }

    /// Tails at every index in `lo..=hi`, computed by the two recurrences.
    pub fn tails_range(&self, lo: i64, hi: i64) -> Vec<TailValues> {
        if hi < lo {
            return Vec::new();
        }
        let (tlo, thi) = (self.position(lo), self.position(hi));
        let mut rs = vec![self.r_at(thi)];
        for t in (tlo..thi).rev() {
            let next = rs.last().expect("nonempty").recip().expect("positive");
            rs.push(&QuadSurd::from_int(self.at(t)) + &next);
        }
        rs.reverse();
        let mut s = self.s_at(tlo);
        let mut out = Vec::with_capacity(rs.len());
        for (i, r) in rs.into_iter().enumerate() {
            let t = tlo + i as i64;
            out.push(TailValues { r, s: s.clone() });
            s = (&QuadSurd::from_int(self.at(t)) + &s).recip().expect("positive");
        }
        out
    }

    /// Sequence with `r_1 = r` and `s_1 = s`.
    pub fn from_tails(r: &QuadSurd, s: &QuadSurd) -> Result<Self, CfError> {
        let one = QuadSurd::one();
        if *r <= one || !s.is_positive() || *s >= one {
            return Err(CfError::TailRange);
        }
        let right = cf_expand(r)?;
        let left = cf_expand(&s.recip()?)?;
        let small = |v: &[BigInt]| -> Vec<u64> { v.iter().map(|k| k.to_u64().unwrap_or(u64::MAX)).collect() };
        let mut core: Vec<u64> = small(&left.preperiod);
        core.reverse();
        let origin = core.len() as i64;
        core.extend(small(&right.preperiod));
        let mut lp = small(&left.period);
        lp.reverse();
        Self::with_origin(lp, core, small(&right.period), origin)
    }

    /// `K* = (k_{1−n})`.
    pub fn reversal(&self) -> BilliardSeq {
        let c = self.core.len() as i64;
        let mut left = self.right.clone();
        left.reverse();
        let mut right = self.left.clone();
        right.reverse();
        let mut core = self.core.clone();
        core.reverse();
        // old position t maps to c − 1 − t; new k₁ is old k₀
        let old_t = self.position(0);
        let new_t = c - 1 - old_t;
        BilliardSeq::with_origin(left, core, right, new_t).expect("valid periods")
    }

    /// First position where the sequence departs from its left period.
    fn break_point(&self) -> Option<i64> {
        let l = self.left.len() as i64;
        let bound = self.core.len() as i64 + l + self.right.len() as i64 + 1;
        (0..=bound).find(|&t| self.at(t) != self.at(t - l))
    }

    fn agrees_with_offset(&self, other: &BilliardSeq, off: i64) -> bool {
        let reach = off.abs()
            + (self.left.len() + self.right.len() + other.left.len() + other.right.len()) as i64;
        let lo = -reach - 1;
        let hi = (self.core.len() + other.core.len()) as i64 + reach + 1;
        (lo..=hi).all(|t| self.at(t) == other.at(t + off))
    }

    /// Whether `k_n = l_{n+j}` for all `n` and some shift `j` (even when `proper`).
    pub fn equivalent(&self, other: &BilliardSeq, proper: bool) -> bool {
        if self.left.len() != other.left.len() || self.right.len() != other.right.len() {
            return false;
        }
        let offsets: Vec<i64> = if self.is_periodic() {
            if !other.is_periodic() {
                return false;
            }
            (0..2 * self.left.len() as i64).collect()
        } else {
            match (self.break_point(), other.break_point()) {
                (Some(a), Some(b)) => vec![b - a],
                _ => return false,
            }
        };
        offsets.into_iter().any(|off| {
            // k_n at position n − 1 + o₁ matches l at n − 1 + o₁ + off = (n + j) − 1 + o₂
            let j = off + self.origin - other.origin;
            (!proper || j.is_even()) && self.agrees_with_offset(other, off)
        })
    }

    pub fn classify(&self) -> SeqClass {
        SeqClass {
            periodic: self.is_periodic(),
            palindromic: self.equivalent(&self.reversal(), false),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "left_period": self.left,
            "core": self.core,
            "right_period": self.right,
            "origin": self.origin,
        })
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for BilliardSeq {
    /// Literal syntax `per(3,1);4;per(1,3)`, with `@o` appended when the
    /// origin is not at the start of the core.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "per({});{};per({})", join(&self.left), join(&self.core), join(&self.right))?;
        if self.origin != 0 {
            write!(f, "@{}", self.origin)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn expansions() {
        let e = cf_expand(&s(1, 1, 2, 21)).unwrap();
        assert_eq!((e.preperiod, e.period), (ints(&[2]), ints(&[1, 3])));
        let e = cf_expand(&s(1, 1, 2, 5)).unwrap();
        assert_eq!((e.preperiod, e.period), (ints(&[]), ints(&[1])));
        let e = cf_expand(&QuadSurd::sqrt_int(2).unwrap()).unwrap();
        assert_eq!((e.preperiod, e.period), (ints(&[1]), ints(&[2])));
        assert_eq!(
            cf_expand(&QuadSurd::from_ratio(-7, 3).unwrap()),
            Err(CfError::FiniteExpansion(ints(&[-3, 1, 2])))
        );
    }

    #[test]
    fn values() {
        let v = |pre: &[i64], per: &[i64]| {
            cf_value(&CFExpansion {
                preperiod: ints(pre),
                period: ints(per),
            })
            .unwrap()
        };
        assert_eq!(v(&[], &[1, 3]), s(3, 1, 6, 21));
        assert_eq!(v(&[0, 4], &[1, 3]), s(5, -1, 2, 21));
        assert_eq!(v(&[], &[1]), s(1, 1, 2, 5));
    }

    #[test]
    fn k1_tails() {
        let k1 = BilliardSeq::periodic(vec![1, 3]).unwrap();
        assert_eq!(k1.tails(1), TailValues { r: s(3, 1, 6, 21), s: s(-3, 1, 6, 21) });
        assert_eq!(k1.tails(0), TailValues { r: s(3, 1, 2, 21), s: s(-3, 1, 2, 21) });
        let g = BilliardSeq::periodic(vec![1]).unwrap();
        assert_eq!(g.tails(-17), TailValues { r: s(1, 1, 2, 5), s: s(-1, 1, 2, 5) });
    }

    #[test]
    fn k3_tail_matches_known_value() {
        let k3 = BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).unwrap();
        assert_eq!(k3.k(1), 4);
        assert_eq!(k3.tails(2).s, s(5, -1, 2, 21));
        assert_eq!(k3.tails_range(-5, 5), (-5..=5).map(|n| k3.tails(n)).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_absorption_keeps_indices() {
        let a = BilliardSeq::new(vec![1, 3], vec![1, 3, 1], vec![3, 1]).unwrap();
        assert!(a.is_periodic());
        assert_eq!((a.k(1), a.k(2), a.k(3)), (1, 3, 1));
        let b = BilliardSeq::new(vec![1], vec![1, 2, 3, 3], vec![3]).unwrap();
        assert_eq!(b.core(), &[2]);
        assert_eq!((b.k(1), b.k(2), b.k(3)), (1, 2, 3));
    }

    #[test]
    fn reversal_and_equivalence() {
        let p = BilliardSeq::periodic(vec![1, 3]).unwrap();
        let q = BilliardSeq::periodic(vec![3, 1]).unwrap();
        assert!(p.equivalent(&q, false));
        assert!(!p.equivalent(&q, true));
        assert!(p.reversal().equivalent(&q, false));
        let k2 = BilliardSeq::periodic(vec![1, 2, 1, 6]).unwrap();
        assert!(k2.equivalent(&k2.shift(4), true));
        let k3 = BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).unwrap();
        assert!(k3.reversal().equivalent(&k3, false));
        let x = BilliardSeq::new(vec![1], vec![2], vec![3]).unwrap();
        let y = x.reversal();
        assert_eq!((y.left_period(), y.core(), y.right_period()), (&[3][..], &[2][..], &[1][..]));
        assert_eq!((y.k(0), y.k(1), y.k(2)), (2, 1, 1));
    }

    #[test]
    fn classification() {
        let k1 = BilliardSeq::periodic(vec![1, 3]).unwrap();
        assert_eq!(k1.classify(), SeqClass { periodic: true, palindromic: true });
        let k3 = BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).unwrap();
        assert_eq!(k3.classify(), SeqClass { periodic: false, palindromic: true });
        let a = BilliardSeq::new(vec![1], vec![2, 3], vec![1]).unwrap();
        assert!(!a.classify().palindromic);
        let b = BilliardSeq::new(vec![1], vec![2, 2], vec![1]).unwrap();
        assert!(b.classify().palindromic);
    }

    #[test]
    fn from_tails_recovers_sequence() {
        let k3 = BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).unwrap();
        let t = k3.tails(1);
        let back = BilliardSeq::from_tails(&t.r, &t.s).unwrap();
        assert_eq!(back, k3);
        assert_eq!(back.to_string(), "per(3,1);4;per(1,3)");
    }
}
