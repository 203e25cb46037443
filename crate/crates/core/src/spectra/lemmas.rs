//! Certified bounds for `μ′_n`, `μ″_n`, `μ‴_n` over all sequences containing
//! a given block of entries, and the classification of exceptional
//! sequences built on them.
//!
//! A block fixes `k_{n−a}, …, k_{n+b}` up to ranges. Every completion has
//! `r_n` and `s_n` inside intervals computed exactly from the block, and
//! each functional is `|(α + βr + γs + δrs)/(r + s)|`, which is monotone in
//! `r` and in `s` separately on `r ≥ 1, s ≥ 0`. Its range over the box is
//! therefore spanned by the four corner values (limits at an infinite
//! corner).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::families::{k1, k2, k3, mu_threshold};
use super::mu::{mu_profile, Functional};
use super::SpectraError;
use crate::cfrac::BilliardSeq;
use crate::exact::{Interval, QuadSurd};

/// One entry of a block: a fixed value or a range `lo ≤ k ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    Fixed(u64),
    Range { lo: u64, hi: Option<u64> },
}

impl Entry {
    pub fn at_least(lo: u64) -> Self {
        Entry::Range { lo, hi: None }
    }

    pub fn between(lo: u64, hi: u64) -> Self {
        Entry::Range { lo, hi: Some(hi) }
    }

    fn bounds(self) -> (u64, Option<u64>) {
        match self {
            Entry::Fixed(k) => (k, Some(k)),
            Entry::Range { lo, hi } => (lo, hi),
        }
    }

    pub fn admits(self, k: u64) -> bool {
        let (lo, hi) = self.bounds();
        k >= lo && hi.is_none_or(|h| k <= h)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Fixed(k) => write!(f, "{k}"),
            Entry::Range { lo, hi: None } => write!(f, "{lo}.."),
            Entry::Range { lo, hi: Some(h) } => write!(f, "{lo}..{h}"),
        }
    }
}

/// A block of entries with `k_n` at `pivot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub entries: Vec<Entry>,
    pub pivot: usize,
}

impl Pattern {
    pub fn new(entries: Vec<Entry>, pivot: usize) -> Result<Self, SpectraError> {
        if pivot >= entries.len() {
            return Err(SpectraError::Precondition("pivot outside the pattern".into()));
        }
        for e in &entries {
            let (lo, hi) = e.bounds();
            if lo == 0 || hi.is_some_and(|h| h < lo) {
                return Err(SpectraError::Precondition(format!("bad entry {e}")));
            }
        }
        Ok(Pattern { entries, pivot })
    }

    /// Whether `k` contains the block with the pivot at index `n`.
    pub fn matches_at(&self, k: &BilliardSeq, n: i64) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(j, e)| e.admits(k.k(n + j as i64 - self.pivot as i64)))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, e) in self.entries.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            if j == self.pivot {
                f.write_str("*")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Comma-separated entries `k`, `lo..hi` or `lo..`; a leading `*` marks the
/// pivot, which defaults to the last entry.
impl FromStr for Pattern {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || SpectraError::Precondition(format!("cannot parse pattern {s:?}"));
        let mut entries = Vec::new();
        let mut pivot = None;
        for (j, tok) in body.split(',').enumerate() {
            let mut tok = tok.trim();
            if let Some(rest) = tok.strip_prefix('*') {
                pivot = Some(j);
                tok = rest.trim();
            }
            let e = match tok.split_once("..") {
                Some((lo, "")) => Entry::at_least(lo.trim().parse().map_err(|_| bad())?),
                Some((lo, hi)) => Entry::between(lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
                None => Entry::Fixed(tok.parse().map_err(|_| bad())?),
            };
            entries.push(e);
        }
        if entries.is_empty() {
            return Err(bad());
        }
        let pivot = pivot.unwrap_or(entries.len() - 1);
        Pattern::new(entries, pivot)
    }
}

/// Nonnegative rational or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Ext {
    Fin(BigRational),
    Inf,
}

impl Ext {
    fn recip(&self) -> Ext {
        match self {
            Ext::Inf => Ext::Fin(BigRational::zero()),
            Ext::Fin(x) if x.is_zero() => Ext::Inf,
            Ext::Fin(x) => Ext::Fin(x.recip()),
        }
    }

    fn add_int(&self, k: Option<u64>) -> Ext {
        match (self, k) {
            (Ext::Fin(x), Some(k)) => Ext::Fin(x + BigRational::from_integer(BigInt::from(k))),
            _ => Ext::Inf,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Ext::Fin(x) => json!(x.to_string()),
            Ext::Inf => json!("inf"),
        }
    }
}

/// Range of `[e₀; e₁, …, e_j, t]` over the entries and any tail `t ≥ 1`.
fn cf_range(entries: &[Entry]) -> (Ext, Ext) {
    let mut lo = Ext::Fin(BigRational::one());
    let mut hi = Ext::Inf;
    for e in entries.iter().rev() {
        let (a, b) = e.bounds();
        let (rlo, rhi) = (hi.recip(), lo.recip());
        lo = rlo.add_int(Some(a));
        hi = rhi.add_int(b);
    }
    (lo, hi)
}

/// Enclosures of `r_n` and `s_n` for a pattern.
fn tail_box(p: &Pattern) -> ((Ext, Ext), (Ext, Ext)) {
    let r = cf_range(&p.entries[p.pivot..]);
    let before: Vec<Entry> = p.entries[..p.pivot].iter().rev().cloned().collect();
    let (xlo, xhi) = cf_range(&before);
    ((r.0, r.1), (xhi.recip(), xlo.recip()))
}

/// `(α, β, γ, δ)` with the functional equal to `|(α + βr + γs + δrs)/(r + s)|`.
fn bilinear(f: Functional) -> [i64; 4] {
    match f {
        Functional::MuPrime => [1, 0, 0, -1],
        Functional::MuDouble => [2, -1, 1, -1],
        Functional::MuTriple => [-1, 1, -1, 2],
    }
}

fn corner(c: [i64; 4], r: &Ext, s: &Ext) -> BigRational {
    let k = |n: i64| BigRational::from_integer(BigInt::from(n));
    let [a, b, g, d] = c;
    match (r, s) {
        (Ext::Fin(r), Ext::Fin(s)) => (k(a) + k(b) * r + k(g) * s + k(d) * r * s) / (r + s),
        (Ext::Inf, Ext::Fin(s)) => k(b) + k(d) * s,
        (Ext::Fin(r), Ext::Inf) => k(g) + k(d) * r,
        (Ext::Inf, Ext::Inf) => unreachable!("s is at most 1"),
    }
}

/// Certified enclosure of one functional at the pivot over all completions.
#[derive(Debug, Clone)]
pub struct PatternCertificate {
    pub pattern: Pattern,
    pub functional: Functional,
    /// Enclosure of the signed quantity inside the absolute value.
    pub signed: Interval,
    /// Enclosure of the functional itself.
    pub value: Interval,
    r: (Ext, Ext),
    s: (Ext, Ext),
}

impl PatternCertificate {
    /// Whether the functional stays at most `c` for every completion.
    pub fn certifies(&self, c: &BigRational) -> bool {
        self.value.hi() <= c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pattern": self.pattern.to_string(),
            "functional": self.functional.name(),
            "r": [self.r.0.to_json(), self.r.1.to_json()],
            "s": [self.s.0.to_json(), self.s.1.to_json()],
            "signed": self.signed.to_json(),
            "value": self.value.to_json(),
        })
    }
}

pub fn pattern_bound(pattern: &Pattern, functional: Functional) -> Result<PatternCertificate, SpectraError> {
    let (r, s) = tail_box(pattern);
    let c = bilinear(functional);
    let vals: Vec<BigRational> = [(&r.0, &s.0), (&r.0, &s.1), (&r.1, &s.0), (&r.1, &s.1)]
        .iter()
        .map(|(x, y)| corner(c, x, y))
        .collect();
    let lo = vals.iter().min().cloned().expect("four corners");
    let hi = vals.iter().max().cloned().expect("four corners");
    let signed = Interval::new(lo.clone(), hi.clone())?;
    let value = if !lo.is_positive() && !hi.is_negative() {
        Interval::new(BigRational::zero(), lo.abs().max(hi.abs()))?
    } else {
        let (a, b) = (lo.abs(), hi.abs());
        Interval::new(a.clone().min(b.clone()), a.max(b))?
    };
    Ok(PatternCertificate {
        pattern: pattern.clone(),
        functional,
        signed,
        value,
        r,
        s,
    })
}

/// A forbidden block together with the constant its certificate must meet.
#[derive(Debug, Clone)]
pub struct LemmaBound {
    pub name: &'static str,
    pub pattern: Pattern,
    pub functional: Functional,
    pub constant: BigRational,
}

impl LemmaBound {
    pub fn certificate(&self) -> Result<PatternCertificate, SpectraError> {
        pattern_bound(&self.pattern, self.functional)
    }
}

fn lemma(name: &'static str, pat: &str, functional: Functional, num: i64, den: i64) -> LemmaBound {
    LemmaBound {
        name,
        pattern: pat.parse().expect("catalogue pattern"),
        functional,
        constant: BigRational::new(num.into(), den.into()),
    }
}

/// The blocks excluded from exceptional sequences, each with the displayed
/// constant its bound is checked against.
pub fn lemma_catalogue() -> Vec<LemmaBound> {
    use Functional::*;
    vec![
        lemma("pair 1,1", "1,*1", MuPrime, 1, 3),
        lemma("pair 2,2..6", "2,*2..6", MuPrime, 1, 3),
        lemma("pair m,m' >= 3", "3..,*3..", MuPrime, 1, 3),
        lemma("large,2,large", "7..,*2,7..", MuDouble, 11, 56),
        lemma("m',1,m,1,2,large", "2..,1,2..,*1,2,7..", MuDouble, 4, 11),
        lemma("large,2,1,2,large", "7..,2,*1,2,7..", MuDouble, 157, 870),
        lemma("1,2,1,m with m in 2..4", "2..,1,2,*1,2..4,1,2..", MuPrime, 9, 23),
        lemma("m,1,2,1 with m >= 7", "2..,1,7..,*1,2,1,5..,1", MuTriple, 2721, 6902),
        lemma("1,5,1,2,1,5,1", "2..,1,5,1,*2,1,5,1,2..", MuPrime, 71, 182),
        lemma("1,5,1,2,1,6,1", "2..,1,5,1,*2,1,6,1,2..", MuPrime, 82, 209),
        lemma("1,2,1,6,1,m,1 with m >= 3", "1,2,1,6,*1,3..,1,2..", MuTriple, 185848, 519893),
    ]
}

/// Outcome of [`classify_exceptional`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub exceptional: bool,
    pub reason: String,
    /// A forbidden block found in `K` or `K*`, with its index.
    pub pattern: Option<(LemmaBound, PatternCertificate, i64, bool)>,
    /// `μ(K)` when it could be evaluated exactly.
    pub mu: Option<QuadSurd>,
}

impl Classification {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "exceptional": self.exceptional,
            "reason": self.reason,
            "pattern": self.pattern.as_ref().map(|(l, c, n, rev)| json!({
                "name": l.name,
                "constant": l.constant.to_string(),
                "index": n,
                "reversed": rev,
                "certificate": c.to_json(),
            })),
            "mu": self.mu.as_ref().map(|m| m.to_json(digits)),
        })
    }
}

fn find_pattern(k: &BilliardSeq) -> Result<Option<(LemmaBound, PatternCertificate, i64, bool)>, SpectraError> {
    let threshold = mu_threshold();
    let lo = -(k.left_period().len() as i64) * 2 - k.origin().abs() - 12;
    let hi = k.core().len() as i64 + k.right_period().len() as i64 * 2 + k.origin().abs() + 12;
    for (seq, reversed) in [(k.clone(), false), (k.reversal(), true)] {
        for l in lemma_catalogue() {
            let cert = l.certificate()?;
            // the bound has to be strictly below the threshold to exclude K
            if QuadSurd::from_rational(cert.value.hi()) >= threshold {
                continue;
            }
            for n in lo..=hi {
                if l.pattern.matches_at(&seq, n) {
                    return Ok(Some((l, cert, n, reversed)));
                }
            }
        }
    }
    Ok(None)
}

/// Decides whether `μ(K) ≥ (√21 − 3)/4`, which happens exactly for the
/// sequences equivalent to `K₁`, `K₂`, `K₃`. Otherwise a forbidden block is
/// reported when one occurs, and `μ(K)` is evaluated directly; both must
/// put `K` below the threshold.
pub fn classify_exceptional(k: &BilliardSeq) -> Result<Classification, SpectraError> {
    for (name, kj) in [("K1", k1()), ("K2", k2()), ("K3", k3())] {
        if k.equivalent(&kj, false) || k.equivalent(&kj.reversal(), false) {
            return Ok(Classification {
                exceptional: true,
                reason: format!("equivalent to {name}"),
                pattern: None,
                mu: mu_profile(k).ok().map(|p| p.mu),
            });
        }
    }
    let threshold = mu_threshold();
    let pattern = find_pattern(k)?;
    let mu = match mu_profile(k) {
        Ok(p) => Some(p.mu),
        Err(SpectraError::MixedFields) => None,
        Err(e) => return Err(e),
    };
    if let Some(m) = &mu {
        if *m >= threshold {
            return Err(SpectraError::Inconsistent(format!("mu {m} reaches the threshold")));
        }
    }
    let reason = match (&pattern, &mu) {
        (Some((l, ..)), _) => format!("contains the block {}", l.name),
        (None, Some(m)) => format!("mu = {m} below (sqrt(21)-3)/4"),
        (None, None) => return Err(SpectraError::Unresolved),
    };
    Ok(Classification {
        exceptional: false,
        reason,
        pattern,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        let p: Pattern = "2..,1,*7..,3..4".parse().unwrap();
        assert_eq!(p.pivot, 2);
        assert_eq!(p.to_string(), "(2..,1,*7..,3..4)");
        assert!("1,0".parse::<Pattern>().is_err());
    }

    #[test]
    fn cf_ranges() {
        // [2, 7.., t] lies in (2, 15/7)
        let (lo, hi) = cf_range(&[Entry::Fixed(2), Entry::at_least(7)]);
        assert_eq!(lo, Ext::Fin(q(2, 1)));
        assert_eq!(hi, Ext::Fin(q(15, 7)));
    }

    #[test]
    fn small_pairs() {
        let p: Pattern = "2,*3".parse().unwrap();
        let c = pattern_bound(&p, Functional::MuPrime).unwrap();
        assert!(c.certifies(&q(1, 3)));
    }

    #[test]
    fn catalogue_constants_hold() {
        for l in lemma_catalogue() {
            let c = l.certificate().unwrap();
            assert!(c.certifies(&l.constant), "{} {} > {}", l.name, c.value.hi(), l.constant);
        }
    }

    #[test]
    fn classification() {
        assert!(classify_exceptional(&k2()).unwrap().exceptional);
        assert!(classify_exceptional(&k3().shift(3)).unwrap().exceptional);
        let c = classify_exceptional(&BilliardSeq::periodic(vec![1, 3, 1, 4]).unwrap()).unwrap();
        assert!(!c.exceptional);
        assert!(c.mu.unwrap() < mu_threshold());
        let c = classify_exceptional(&BilliardSeq::periodic(vec![1, 1, 3]).unwrap()).unwrap();
        assert!(!c.exceptional && c.pattern.is_some());
    }
}
