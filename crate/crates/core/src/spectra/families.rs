//! Named billiards and the approximant families accumulating at the low
//! limit points of `𝓜ᵢ`, `𝓜ρ` and `𝓜₂ᵢ`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::lambda::{form_billiard, sequence_billiard, vertical_billiard};
use super::SpectraError;
use crate::billiard::Billiard;
use crate::cfrac::BilliardSeq;
use crate::exact::QuadSurd;

/// `(p + q√d)/r`.
fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadSurd {
    QuadSurd::new(p, q, r, d).expect("valid surd")
}

/// `K₁ = (1̄,3̄)`.
pub fn k1() -> BilliardSeq {
    BilliardSeq::periodic(vec![1, 3]).expect("valid")
}

/// `K₂ = (1̄,2̄,1̄,6̄)`.
pub fn k2() -> BilliardSeq {
    BilliardSeq::periodic(vec![1, 2, 1, 6]).expect("valid")
}

/// `K₃ = (…,3,1,4,1,3,…)`.
pub fn k3() -> BilliardSeq {
    BilliardSeq::new(vec![3, 1], vec![4], vec![1, 3]).expect("valid")
}

/// `𝒞₁`, `𝒞₂`, `𝒞₃`: the billiards of `K₁`, `K₂`, `K₃`.
pub fn c_exceptional(j: usize) -> Result<Billiard, SpectraError> {
    match j {
        1 => form_billiard(1, -1, -5),
        2 => sequence_billiard(&k2()),
        3 => sequence_billiard(&k3()),
        _ => Err(SpectraError::Precondition(format!("no billiard C_{j}"))),
    }
}

/// `𝒞₀ = ⟨0, ∞⟩`.
pub fn c0() -> Billiard {
    vertical_billiard(0, 1).expect("valid")
}

/// `𝒞_{1/2} = ⟨½, ∞⟩`.
pub fn c_half() -> Billiard {
    vertical_billiard(1, 2).expect("valid")
}

/// `K_ℓ = (…,3,1,4,1,3,…,1,3,1,4,1,3,…)` with `k₀ = k_{2ℓ} = 4` and `ℓ` ones
/// between the two fours.
pub fn k_ell(ell: u32) -> Result<BilliardSeq, SpectraError> {
    if ell == 0 {
        return Err(SpectraError::Precondition("ell must be positive".into()));
    }
    let mut core = vec![4];
    for _ in 1..ell {
        core.extend([1, 3]);
    }
    core.extend([1, 4]);
    Ok(BilliardSeq::with_origin(vec![3, 1], core, vec![1, 3], 1)?)
}

/// `𝓑_ℓ`, the billiard of `K_ℓ`.
pub fn b_ell(ell: u32) -> Result<Billiard, SpectraError> {
    sequence_billiard(&k_ell(ell)?)
}

/// `ε = (5 + √21)/2`.
pub fn unit_21() -> QuadSurd {
    surd(5, 1, 21, 2)
}

/// `μ(K_ℓ) = ((−3 + 2√21)εˡ − 3ε^{1−ℓ}) / ((11 + √21)εˡ − ½ε^{−ℓ})`.
pub fn k_ell_closed_form_mu(ell: u32) -> Result<QuadSurd, SpectraError> {
    let e = unit_21();
    let l = ell as i64;
    let el = e.pow(l)?;
    let num = surd(-3, 2, 21, 1).checked_mul(&el)?.checked_sub(&e.pow(1 - l)?.mul_rational(&int(3)))?;
    let half = BigRational::new(1.into(), 2.into());
    let den = surd(11, 1, 21, 1).checked_mul(&el)?.checked_sub(&e.pow(-l)?.mul_rational(&half))?;
    Ok(num.checked_div(&den)?)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `r₁(K_ℓ)` from `r₁(1) = (7 − √21)/2` and `r₁(ℓ+1) = 1 + 1/(3 + 1/r₁(ℓ))`.
pub fn k_ell_r1(ell: u32) -> Result<QuadSurd, SpectraError> {
    let mut r = surd(7, -1, 21, 2);
    for _ in 1..ell {
        let inner = r.recip()?.add_rational(&int(3));
        r = inner.recip()?.add_rational(&int(1));
    }
    Ok(r)
}

/// `(√21 − 3)/4`, the limit of `μ(K_ℓ)`.
pub fn mu_threshold() -> QuadSurd {
    surd(-3, 1, 21, 4)
}

/// `𝒜_ℓ`, the billiard of `x² − ℓxy − y²`.
pub fn a_ell(ell: u32) -> Result<Billiard, SpectraError> {
    if ell == 0 {
        return Err(SpectraError::Precondition("ell must be positive".into()));
    }
    form_billiard(1, -(ell as i64), -1)
}

/// `λρ(𝒜_ℓ) = √(3ℓ² + 12)/ℓ`.
pub fn a_ell_lambda_rho(ell: u32) -> Result<QuadSurd, SpectraError> {
    let l = ell as i64;
    let root = QuadSurd::sqrt_int(3 * l * l + 12)?;
    Ok(root.mul_rational(&BigRational::new(1.into(), l.into())))
}

/// `𝒟_ℓ`, the billiard of the purely periodic `(1̄,1̄,ℓ̄)`. Its trajectory runs
/// close to `𝒞_{1/2}` and its values at `√−2` decrease to `√8`.
pub fn d_ell(ell: u32) -> Result<Billiard, SpectraError> {
    if ell < 4 {
        return Err(SpectraError::Precondition("ell must be at least 4".into()));
    }
    sequence_billiard(&BilliardSeq::periodic(vec![1, 1, ell as u64])?)
}

/// `λ_{√−2}(𝒟_ℓ) = √(8(ℓ² + 2ℓ + 2))/(ℓ − 3)`.
pub fn d_ell_lambda(ell: u32) -> Result<QuadSurd, SpectraError> {
    let l = ell as i64;
    let root = QuadSurd::sqrt_int(8 * (l * l + 2 * l + 2))?;
    Ok(root.mul_rational(&BigRational::new(1.into(), (l - 3).into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{lambda_i, lambda_point, mu_profile, PointForm};

    #[test]
    fn k_ell_layout() {
        let k = k_ell(2).unwrap();
        let got: Vec<u64> = (-3..=7).map(|n| k.k(n)).collect();
        assert_eq!(got, vec![1, 3, 1, 4, 1, 3, 1, 4, 1, 3, 1]);
        assert_eq!(k_ell(1).unwrap().k(2), 4);
    }

    #[test]
    fn k_ell_mu_matches_closed_form() {
        for ell in 1..=6 {
            let p = mu_profile(&k_ell(ell).unwrap()).unwrap();
            assert_eq!(p.mu, k_ell_closed_form_mu(ell).unwrap(), "ell {ell}");
            assert!(p.mu < mu_threshold());
        }
    }

    #[test]
    fn r1_recurrence() {
        for ell in 1..=6 {
            assert_eq!(k_ell(ell).unwrap().tails(1).r, k_ell_r1(ell).unwrap(), "ell {ell}");
        }
    }

    #[test]
    fn b_ell_above_limit() {
        let limit = surd(3, 1, 21, 3);
        for ell in 1..=4 {
            let v = lambda_i(&b_ell(ell).unwrap()).unwrap().value.finite().unwrap().clone();
            assert!(v > limit);
        }
    }

    #[test]
    fn approximant_values() {
        let rho = PointForm::rho();
        for ell in 1..=5 {
            let v = lambda_point(&rho, &a_ell(ell).unwrap(), 10_000).unwrap();
            assert_eq!(v.value.finite().unwrap(), &a_ell_lambda_rho(ell).unwrap());
        }
        let z = PointForm::sqrt_minus_two();
        for ell in 4..=12 {
            let v = lambda_point(&z, &d_ell(ell).unwrap(), 10_000).unwrap();
            assert_eq!(v.value.finite().unwrap(), &d_ell_lambda(ell).unwrap(), "ell {ell}");
        }
    }
}
