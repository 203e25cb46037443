//! Markov triples and the proven low parts of the four spectra.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::families::{a_ell, b_ell, c0, c_exceptional, c_half, d_ell};
use super::lambda::{lambda_i, lambda_inf, lambda_point, Certificate, SpectrumId, SpectrumPoint};
use super::mu::sup_sum;
use super::point::PointForm;
use super::SpectraError;
use crate::billiard::Billiard;
use crate::exact::{ExtendedReal, QuadSurd};
use crate::forms::{reduced_forms, BinaryForm};

/// Solution of `p² + q² + r² = 3pqr`, stored with `p ≤ q ≤ r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkovTriple {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

impl MarkovTriple {
    fn sorted(mut v: [u64; 3]) -> Self {
        v.sort_unstable();
        MarkovTriple { p: v[0], q: v[1], r: v[2] }
    }

    pub fn max(&self) -> u64 {
        self.r
    }

    pub fn to_json(&self) -> Value {
        json!([self.p, self.q, self.r])
    }

    pub fn is_solution(&self) -> bool {
        let (p, q, r) = (self.p as u128, self.q as u128, self.r as u128);
        p * p + q * q + r * r == 3 * p * q * r
    }
}

/// All Markov triples with largest entry at most `bound`, sorted.
pub fn markov_triples(bound: u64) -> Vec<MarkovTriple> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let root = MarkovTriple::sorted([1, 1, 1]);
    if bound >= 1 {
        seen.insert(root);
        queue.push_back(root);
    }
    while let Some(t) = queue.pop_front() {
        let v = [t.p, t.q, t.r];
        for i in 0..3 {
            let (a, b) = (v[(i + 1) % 3] as u128, v[(i + 2) % 3] as u128);
            let Some(x) = (3 * a * b).checked_sub(v[i] as u128) else {
                continue;
            };
            if x == 0 || x > bound as u128 {
                continue;
            }
            let mut w = v;
            w[i] = x as u64;
            let n = MarkovTriple::sorted(w);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.into_iter().collect()
}

/// The first `count` distinct Markov numbers.
pub fn markov_numbers(count: usize) -> Vec<u64> {
    let mut bound = 2;
    loop {
        let maxima: BTreeSet<u64> = markov_triples(bound).iter().map(MarkovTriple::max).collect();
        if maxima.len() >= count || bound > u64::MAX / 4 {
            return maxima.into_iter().take(count).collect();
        }
        bound *= 4;
    }
}

/// `√(9p² − 4)/p`.
pub fn markov_value(p: u64) -> Result<QuadSurd, SpectraError> {
    let p = BigInt::from(p);
    let d = BigInt::from(9) * &p * &p - 4;
    let root = QuadSurd::sqrt_rational(&BigRational::from_integer(d))?;
    Ok(root.mul_rational(&BigRational::new(1.into(), p)))
}

/// A reduced form of discriminant `9p² − 4` (possibly a multiple of a
/// primitive one) whose billiard has `λ∞ = √(9p² − 4)/p`.
pub fn markov_witness(p: u64) -> Result<Billiard, SpectraError> {
    let target = markov_value(p)?;
    let d = 9 * (p as i64) * (p as i64) - 4;
    let mut f = 1i64;
    while f * f <= d {
        if d % (f * f) == 0 {
            for q in reduced_forms(d / (f * f)) {
                let seq = q.sequence()?;
                if let Ok((v, _)) = sup_sum(&seq) {
                    if v == target {
                        let scaled = q.scale(&QuadSurd::from_int(f));
                        return Ok(Billiard::from_form(&scaled)?);
                    }
                }
            }
        }
        f += 1;
    }
    Err(SpectraError::NotProven(format!("no form of discriminant {d} reaches the Markov value")))
}

fn limit_point(spectrum: SpectrumId, zf: PointForm, witness: Billiard) -> Result<SpectrumPoint, SpectraError> {
    let mut pt = lambda_point(&zf, &witness, 10_000)?;
    pt.spectrum = spectrum;
    if pt.certificate != Certificate::Exact {
        return Err(SpectraError::Unresolved);
    }
    Ok(pt)
}

/// The `count` smallest points of a spectrum, as far as they are proven:
/// the Markov points of `𝓜∞`, the three points of `𝓜ᵢ` below
/// `(3 + √21)/3` inclusive, and the minima `√3` of `𝓜ρ` and `√8` of `𝓜₂ᵢ`.
pub fn spectrum_low(spectrum: SpectrumId, count: usize) -> Result<Vec<SpectrumPoint>, SpectraError> {
    let proven = match spectrum {
        SpectrumId::Inf => usize::MAX,
        SpectrumId::I => 3,
        SpectrumId::Rho | SpectrumId::TwoI => 1,
    };
    if count > proven {
        return Err(SpectraError::NotProven(format!(
            "only {proven} point(s) of {spectrum} are known exactly"
        )));
    }
    let mut out = Vec::with_capacity(count);
    match spectrum {
        SpectrumId::Inf => {
            for p in markov_numbers(count) {
                let pt = lambda_inf(&markov_witness(p)?)?;
                if pt.value != ExtendedReal::Finite(markov_value(p)?) {
                    return Err(SpectraError::Inconsistent(format!("Markov witness for {p}")));
                }
                out.push(pt);
            }
        }
        SpectrumId::I => {
            for j in 1..=count {
                out.push(lambda_i(&c_exceptional(j)?)?);
            }
        }
        SpectrumId::Rho => {
            if count == 1 {
                out.push(limit_point(spectrum, PointForm::rho(), c0())?);
            }
        }
        SpectrumId::TwoI => {
            if count == 1 {
                out.push(limit_point(spectrum, PointForm::sqrt_minus_two(), c_half())?);
            }
        }
    }
    Ok(out)
}

/// Proper billiards whose values decrease to the limit point: `𝓑_ℓ` for
/// `𝓜ᵢ`, `𝒜_ℓ` for `𝓜ρ` and `𝒟_ℓ` for `𝓜₂ᵢ`. `𝓜∞` has none here.
pub fn approximants(spectrum: SpectrumId, ells: &[u32]) -> Result<Vec<(u32, SpectrumPoint)>, SpectraError> {
    let mut out = Vec::new();
    for &ell in ells {
        let pt = match spectrum {
            SpectrumId::I => lambda_i(&b_ell(ell)?)?,
            SpectrumId::Rho => limit_point(spectrum, PointForm::rho(), a_ell(ell)?)?,
            SpectrumId::TwoI => limit_point(spectrum, PointForm::sqrt_minus_two(), d_ell(ell)?)?,
            SpectrumId::Inf => {
                return Err(SpectraError::Precondition("no approximant family for M_inf".into()));
            }
        };
        out.push((ell, pt));
    }
    Ok(out)
}

/// Reduced forms of discriminant `d` and their `λ∞`, for tabulation.
pub fn lambda_inf_table(d: i64) -> Result<Vec<(BinaryForm, QuadSurd)>, SpectraError> {
    let mut out = Vec::new();
    for q in reduced_forms(d) {
        let (v, _) = sup_sum(&q.sequence()?)?;
        out.push((q, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triples() {
        let t = markov_triples(2);
        assert_eq!(t, vec![MarkovTriple { p: 1, q: 1, r: 1 }, MarkovTriple { p: 1, q: 1, r: 2 }]);
        let maxima: BTreeSet<u64> = markov_triples(35).iter().map(MarkovTriple::max).collect();
        assert_eq!(maxima.into_iter().collect::<Vec<_>>(), vec![1, 2, 5, 13, 29, 34]);
        assert!(markov_triples(10_000).iter().all(MarkovTriple::is_solution));
    }

    #[test]
    fn inf_low_points() {
        let pts = spectrum_low(SpectrumId::Inf, 5).unwrap();
        let want = [(5, 1), (8, 1), (221, 5), (1517, 13), (7565, 29)];
        for (pt, (d, p)) in pts.iter().zip(want) {
            let v = QuadSurd::sqrt_int(d).unwrap().mul_rational(&BigRational::new(1.into(), p.into()));
            assert_eq!(pt.value, ExtendedReal::Finite(v));
        }
    }

    #[test]
    fn beyond_proven_range() {
        assert!(matches!(spectrum_low(SpectrumId::I, 4), Err(SpectraError::NotProven(_))));
        assert!(matches!(spectrum_low(SpectrumId::Rho, 2), Err(SpectraError::NotProven(_))));
    }

    #[test]
    fn minima_at_rho_and_sqrt_minus_two() {
        let r = spectrum_low(SpectrumId::Rho, 1).unwrap();
        assert_eq!(r[0].value, ExtendedReal::Finite(QuadSurd::sqrt_int(3).unwrap()));
        let t = spectrum_low(SpectrumId::TwoI, 1).unwrap();
        assert_eq!(t[0].value, ExtendedReal::Finite(QuadSurd::sqrt_int(8).unwrap()));
    }
}
