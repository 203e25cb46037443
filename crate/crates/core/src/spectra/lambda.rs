//! The functionals `λ∞`, `λᵢ` and the general `λ_z` of a billiard.

use std::fmt;

use serde_json::{json, Value};

use super::mu::{mu_profile, sup_sum, MuProfile};
use super::point::{improper_bound, in_unit_half, sinh_delta, PointForm};
use super::SpectraError;
use crate::billiard::{Billiard, Geodesic};
use crate::exact::{ExtendedReal, QuadSurd};
use crate::forms::BinaryForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumId {
    Inf,
    I,
    Rho,
    TwoI,
}

impl SpectrumId {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumId::Inf => "M_inf",
            SpectrumId::I => "M_i",
            SpectrumId::Rho => "M_rho",
            SpectrumId::TwoI => "M_2i",
        }
    }

    /// Accepts `inf`, `i`, `rho`, `2i` and the `M_…` names.
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim_start_matches("M_") {
            "inf" | "infinity" => Some(SpectrumId::Inf),
            "i" => Some(SpectrumId::I),
            "rho" => Some(SpectrumId::Rho),
            "2i" => Some(SpectrumId::TwoI),
            _ => None,
        }
    }

    /// Point form used for `λ_z`. The `𝓜₂ᵢ` statements concern the disk
    /// packing around the orbit of `√−2`, so that point is used there.
    pub fn point(self) -> Option<PointForm> {
        match self {
            SpectrumId::Inf => None,
            SpectrumId::I => Some(PointForm::i()),
            SpectrumId::Rho => Some(PointForm::rho()),
            SpectrumId::TwoI => Some(PointForm::sqrt_minus_two()),
        }
    }
}

impl fmt::Display for SpectrumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a reported value is backed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The value is exact.
    Exact,
    /// Only the inverse bound `λ⁻¹ ≤ min(α, 1 − 2α)` is known, so the value
    /// is a lower bound for `λ`.
    InverseUpperBound,
    /// The trajectory was cut after this many segments; the value is a
    /// lower bound for `λ`.
    Partial(usize),
}

impl Certificate {
    pub fn name(self) -> String {
        match self {
            Certificate::Exact => "exact".into(),
            Certificate::InverseUpperBound => "upper_bound_on_inverse".into(),
            Certificate::Partial(n) => format!("partial({n})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumPoint {
    pub spectrum: SpectrumId,
    pub value: ExtendedReal,
    pub witness: Billiard,
    /// Whether the infimum (or supremum) defining the value is attained.
    pub attained: bool,
    pub certificate: Certificate,
}

impl SpectrumPoint {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "spectrum": self.spectrum.name(),
            "value": self.value.to_json(digits),
            "attained": self.attained,
            "certificate": self.certificate.name(),
            "witness": self.witness.to_json(digits),
        })
    }
}

impl fmt::Display for SpectrumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({})", self.spectrum, self.value, self.certificate.name())
    }
}

fn inverse(x: &QuadSurd) -> Result<ExtendedReal, SpectraError> {
    if x.is_zero() {
        Ok(ExtendedReal::Infinity)
    } else {
        Ok(ExtendedReal::Finite(x.recip()?))
    }
}

/// Endpoint `α ∈ [0, ½]` with the billiard equal to that of `⟨α, ∞⟩`.
pub fn improper_alpha(b: &Billiard) -> Result<QuadSurd, SpectraError> {
    if b.proper {
        return Err(SpectraError::Precondition("billiard is proper".into()));
    }
    let g = b.start_translate()?;
    let x = match g.vertical_x() {
        Some(x) => x.clone(),
        None => return Err(SpectraError::Precondition("improper start is not vertical".into())),
    };
    let frac = &x - &QuadSurd::from_int(x.floor());
    let alpha = if in_unit_half(&frac) {
        frac
    } else {
        &QuadSurd::one() - &frac
    };
    Ok(alpha)
}

/// Reduced forms `Q_n` of a periodic billiard together with those of `Q*`.
fn reduced_chains(b: &Billiard) -> Result<Option<(Vec<BinaryForm>, Vec<BinaryForm>)>, SpectraError> {
    if !b.periodic {
        return Ok(None);
    }
    let Some((_, q)) = b.form.primitive_scaling() else {
        return Ok(None);
    };
    let (r, _) = q.reduce()?;
    let limit = 100_000;
    let c = r.chain_cycle(limit)?.ok_or(SpectraError::Unresolved)?;
    let cs = r.star().chain_cycle(limit)?.ok_or(SpectraError::Unresolved)?;
    Ok(Some((c, cs)))
}

/// `inf ν` over the reduced forms of the class and of the reversed class.
pub fn nu_infimum(b: &Billiard) -> Result<Option<QuadSurd>, SpectraError> {
    let Some((c, cs)) = reduced_chains(b)? else {
        return Ok(None);
    };
    let mut best: Option<QuadSurd> = None;
    for f in c.iter().chain(cs.iter()) {
        let v = f.nu()?;
        if best.as_ref().is_none_or(|m| v < *m) {
            best = Some(v);
        }
    }
    Ok(best)
}

/// `inf ν` over the reduced forms `Q_n` of the class alone.
pub fn nu_infimum_one_orientation(b: &Billiard) -> Result<Option<QuadSurd>, SpectraError> {
    let Some((c, _)) = reduced_chains(b)? else {
        return Ok(None);
    };
    Ok(c.iter().map(BinaryForm::nu).collect::<Result<Vec<_>, _>>()?.into_iter().min())
}

/// `λᵢ(B)`. Proper billiards go through `μ(K)`, checked against `ν` over
/// the reduced chains when periodic; improper ones report the inverse
/// bound `min(α, 1 − 2α)`.
pub fn lambda_i(b: &Billiard) -> Result<SpectrumPoint, SpectraError> {
    if !b.proper {
        let alpha = improper_alpha(b)?;
        return Ok(SpectrumPoint {
            spectrum: SpectrumId::I,
            value: inverse(&improper_bound(&alpha))?,
            witness: b.clone(),
            attained: true,
            certificate: Certificate::InverseUpperBound,
        });
    }
    let seq = b.seq.as_ref().ok_or(SpectraError::Unresolved)?;
    let p = mu_profile(seq)?;
    if let Some(nu) = nu_infimum(b)? {
        if nu != p.mu {
            return Err(SpectraError::Inconsistent(format!("nu {nu} against mu {}", p.mu)));
        }
    }
    Ok(SpectrumPoint {
        spectrum: SpectrumId::I,
        value: inverse(&p.mu)?,
        witness: b.clone(),
        attained: p.is_attained(),
        certificate: Certificate::Exact,
    })
}

/// `λᵢ` together with the full profile of a proper billiard.
pub fn lambda_i_profile(b: &Billiard) -> Result<(SpectrumPoint, MuProfile), SpectraError> {
    let seq = b.seq.as_ref().ok_or(SpectraError::Precondition("billiard is improper".into()))?;
    let p = mu_profile(seq)?;
    let pt = lambda_i(b)?;
    Ok((pt, p))
}

/// `λ∞(B) = sup (r_n + s_n)`; improper billiards reach the cusp.
pub fn lambda_inf(b: &Billiard) -> Result<SpectrumPoint, SpectraError> {
    let (value, attained) = match &b.seq {
        Some(seq) if b.proper => {
            let (v, at) = sup_sum(seq)?;
            (ExtendedReal::Finite(v), at.is_some())
        }
        _ => (ExtendedReal::Infinity, true),
    };
    Ok(SpectrumPoint {
        spectrum: SpectrumId::Inf,
        value,
        witness: b.clone(),
        attained,
        certificate: Certificate::Exact,
    })
}

/// Translates of the trajectory carried into `𝒯`, and whether they are all
/// of them.
pub fn trajectory_translates(b: &Billiard, max_segments: usize) -> Result<(Vec<Geodesic>, bool), SpectraError> {
    let mut start = b.start_translate()?;
    if !b.proper && start.vertical_x().is_some() && start.is_upward() {
        // fold downward from the cusp so the whole trajectory is traversed
        start = start.reversed();
    }
    let rep = crate::billiard::fold_from(&start, max_segments)?;
    let complete = rep.closed || rep.cusp;
    Ok((rep.translates(rep.len()), complete))
}

/// `λ_z(B)` for the point of `zf`: the least `sinh δ` over the geodesics
/// carrying the trajectory's segments in `𝒯`. Exact when the trajectory
/// closes or ends in the cusp within `max_segments`, otherwise a lower
/// bound for `λ_z`.
pub fn lambda_point(zf: &PointForm, b: &Billiard, max_segments: usize) -> Result<SpectrumPoint, SpectraError> {
    let (translates, complete) = trajectory_translates(b, max_segments)?;
    // Screen in floating point, then compare exactly among the near-minimal
    // candidates. The band is far wider than the rounding error.
    let (x, y2) = zf.point();
    let (x, y) = (x.to_f64(), y2.to_f64().sqrt());
    let approx: Vec<f64> = translates.iter().map(|g| approx_sinh(x, y, g)).collect();
    let floor = approx.iter().cloned().fold(f64::INFINITY, f64::min);
    let band = floor * (1.0 + 1e-6) + 1e-12;
    let mut best: Option<QuadSurd> = None;
    let mut seen = std::collections::HashSet::new();
    for (g, v) in translates.iter().zip(&approx) {
        if !(v.is_finite() && *v <= band) && floor.is_finite() {
            continue;
        }
        if !seen.insert(format!("{}|{}", g.alpha, g.beta)) {
            continue;
        }
        let f = BinaryForm::from_roots(&g.alpha, &g.beta)?;
        let v = sinh_delta(zf, &f)?;
        if best.as_ref().is_none_or(|m| v < *m) {
            best = Some(v);
        }
    }
    let best = best.ok_or(SpectraError::Unresolved)?;
    let spectrum = match zf.name() {
        Some("i") => SpectrumId::I,
        Some("rho") => SpectrumId::Rho,
        Some("sqrt-2") | Some("2i") => SpectrumId::TwoI,
        _ => SpectrumId::I,
    };
    Ok(SpectrumPoint {
        spectrum,
        value: inverse(&best)?,
        witness: b.clone(),
        attained: complete,
        certificate: if complete {
            Certificate::Exact
        } else {
            Certificate::Partial(translates.len())
        },
    })
}

fn approx_sinh(x: f64, y: f64, g: &Geodesic) -> f64 {
    match (&g.alpha, &g.beta) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
            let (a, b) = (a.to_f64(), b.to_f64());
            ((x - a) * (x - b) + y * y).abs() / (y * (a - b).abs())
        }
        (ExtendedReal::Finite(a), _) | (_, ExtendedReal::Finite(a)) => (x - a.to_f64()).abs() / y,
        _ => f64::NAN,
    }
}

/// Billiard of `⟨p/q, ∞⟩`.
pub fn vertical_billiard(p: i64, q: i64) -> Result<Billiard, SpectraError> {
    let g = Geodesic::new(ExtendedReal::Finite(QuadSurd::from_ratio(p, q)?), ExtendedReal::Infinity)?;
    Ok(Billiard::from_geodesic(&g)?)
}

/// Billiard of the form `(a, b, c)`.
pub fn form_billiard(a: i64, b: i64, c: i64) -> Result<Billiard, SpectraError> {
    Ok(Billiard::from_form(&BinaryForm::int(a, b, c)?)?)
}

/// Billiard attached to a sequence: the form with roots `r₁` and `−s₁`.
pub fn sequence_billiard(k: &crate::cfrac::BilliardSeq) -> Result<Billiard, SpectraError> {
    let t = k.tails(1);
    let g = Geodesic::finite(t.r, -t.s)?;
    Ok(Billiard::from_geodesic(&g)?)
}
