//! The twelve reproduction checks, grouped into suites. Each check returns
//! a short summary on success and the first violated condition otherwise.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cfrac::{cf_expand, cf_value};
use crate::exact::{ExtendedReal, QuadSurd};
use crate::forms::{is_square, reduced_forms};
use crate::literal::parse_surd;
use crate::render::{figure, rho_tangency};
use crate::spectra::{
    a_ell, a_ell_lambda_rho, b_ell, c_exceptional, c_half, d_ell, d_ell_lambda, improper_bound, k_ell,
    k_ell_closed_form_mu, lambda_i, lambda_inf, lambda_point, lemma_catalogue, markov_numbers, mu_profile,
    mu_threshold, nu_infimum, quaternary_min_brute, spectrum_low, vertical_billiard, Certificate, PointForm,
    SpectrumId,
};
use crate::billiard::Billiard;

type Check = Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub key: &'static str,
    pub suite: &'static str,
    pub title: &'static str,
    run: fn() -> Check,
}

pub const SUITES: [&str; 4] = ["theorems", "lemmas", "chains", "render"];

pub const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, key: "inf-low", suite: "theorems", title: "M_inf low points", run: inf_low },
    Criterion { id: 2, key: "i-low", suite: "theorems", title: "M_i low points", run: i_low },
    Criterion { id: 3, key: "rho-family", suite: "theorems", title: "M_rho approximants", run: rho_family },
    Criterion { id: 4, key: "sqrt2-family", suite: "theorems", title: "M_2i approximants", run: sqrt2_family },
    Criterion { id: 5, key: "improper-bound", suite: "theorems", title: "improper bound grid", run: improper_grid },
    Criterion { id: 6, key: "nu-mu", suite: "chains", title: "nu against mu, disc <= 300", run: nu_mu },
    Criterion { id: 7, key: "lemmas", suite: "lemmas", title: "pattern certificates", run: lemmas },
    Criterion { id: 8, key: "k-ell", suite: "theorems", title: "K_l family", run: k_family },
    Criterion { id: 9, key: "chains", suite: "chains", title: "chains and continued fractions", run: chains },
    Criterion { id: 10, key: "closure", suite: "chains", title: "trajectory closure", run: closure },
    Criterion { id: 11, key: "brute-oracle", suite: "chains", title: "brute-force quaternary minimum", run: brute },
    Criterion { id: 12, key: "determinism", suite: "render", title: "figure determinism and tangency", run: determinism },
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<15} {:.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.key,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": self.elapsed.as_secs_f64(),
        })
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let t = Instant::now();
        let r = (self.run)();
        let elapsed = t.elapsed();
        let (passed, detail) = match r {
            Ok(s) => (true, s),
            Err(s) => (false, s),
        };
        Outcome {
            id: self.id,
            key: self.key,
            title: self.title,
            passed,
            detail,
            elapsed,
        }
    }
}

/// Resolves suite names, criterion keys and numbers; `all` or an empty
/// list selects everything.
pub fn select(names: &[String]) -> Result<Vec<&'static Criterion>, String> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(CRITERIA.iter().collect());
    }
    let mut out: Vec<&'static Criterion> = Vec::new();
    for n in names {
        let hit: Vec<&'static Criterion> = CRITERIA
            .iter()
            .filter(|c| c.suite == n || c.key == n || c.id.to_string() == *n)
            .collect();
        if hit.is_empty() {
            return Err(format!("unknown suite or criterion '{n}'"));
        }
        for c in hit {
            if !out.iter().any(|o| o.id == c.id) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| c.id);
    Ok(out)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn finite(v: &ExtendedReal) -> Result<&QuadSurd, String> {
    v.finite().ok_or_else(|| "unexpected infinite value".to_string())
}

fn surd(s: &str) -> QuadSurd {
    parse_surd(s).expect("literal")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `|x − y| < t`, decided exactly.
fn within(x: &QuadSurd, y: &QuadSurd, t: &BigRational) -> bool {
    *x < y.add_rational(t) && *y < x.add_rational(t)
}

/// A fixed-point decimal string read back as a rational.
fn decimal_rational(s: &str) -> BigRational {
    let neg = s.starts_with('-');
    let s = s.trim_start_matches('-');
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let n: BigInt = format!("{int}{frac}").parse().expect("digits");
    let v = BigRational::new(n, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -v
    } else {
        v
    }
}

/// `|x − y|` from 30-place decimal renderings.
fn decimal_gap(x: &QuadSurd, y: &QuadSurd) -> BigRational {
    (decimal_rational(&x.to_fixed(30)) - decimal_rational(&y.to_fixed(30))).abs()
}

fn show(x: &BigRational) -> String {
    format!("{:.4e}", num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN))
}

fn inf_low() -> Check {
    let maxima = markov_numbers(5);
    ensure(maxima == [1, 2, 5, 13, 29], || format!("Markov maxima {maxima:?}"))?;
    let pts = spectrum_low(SpectrumId::Inf, 5).map_err(e)?;
    let want = ["sqrt(5)", "sqrt(8)", "sqrt(221)/5", "sqrt(1517)/13", "sqrt(7565)/29"];
    let mut shown = Vec::new();
    for (pt, w) in pts.iter().zip(want) {
        let v = finite(&pt.value)?;
        ensure(*v == surd(w), || format!("expected {w}, got {v}"))?;
        let again = lambda_inf(&pt.witness).map_err(e)?;
        ensure(again.value == pt.value, || format!("witness for {w} re-evaluates to {}", again.value))?;
        shown.push(v.to_string());
    }
    ensure(pts.len() == 5, || "fewer than five points".into())?;
    Ok(shown.join(", "))
}

fn i_low() -> Check {
    let want = [("sqrt(21)/2", "2.29129"), ("2*sqrt(14)/3", "2.49444"), ("(3+sqrt(21))/3", "2.52753")];
    let mut shown = Vec::new();
    for (j, (w, dec)) in (1..=3).zip(want) {
        let b = c_exceptional(j).map_err(e)?;
        let pt = lambda_i(&b).map_err(e)?;
        let v = finite(&pt.value)?;
        ensure(*v == surd(w), || format!("C{j}: expected {w}, got {v}"))?;
        ensure(v.to_fixed(5) == dec, || format!("C{j}: decimal {}", v.to_fixed(5)))?;
        ensure(b.proper && !b.orientable, || format!("C{j}: flags proper={} orientable={}", b.proper, b.orientable))?;
        ensure(b.periodic == (j < 3), || format!("C{j}: periodic={}", b.periodic))?;
        shown.push(format!("{v}={dec}"));
    }
    Ok(shown.join(", "))
}

fn rho_family() -> Check {
    let rho = PointForm::rho();
    let mut prev: Option<QuadSurd> = None;
    let mut last = QuadSurd::zero();
    for ell in 1..=100u32 {
        let pt = lambda_point(&rho, &a_ell(ell).map_err(e)?, 10_000).map_err(e)?;
        ensure(pt.certificate == Certificate::Exact, || format!("l={ell}: {}", pt.certificate.name()))?;
        let v = finite(&pt.value)?.clone();
        let want = a_ell_lambda_rho(ell).map_err(e)?;
        ensure(v == want, || format!("l={ell}: {v} against {want}"))?;
        if let Some(p) = &prev {
            ensure(p > &v, || format!("not decreasing at l={ell}"))?;
        }
        prev = Some(v.clone());
        last = v;
    }
    let root3 = QuadSurd::sqrt_int(3).map_err(e)?;
    let tol = rat(1, 1000);
    ensure(last > root3, || "value at l=100 not above sqrt(3)".into())?;
    ensure(within(&last, &root3, &tol), || "l=100 not within 1e-3".into())?;
    ensure(decimal_gap(&last, &root3) < tol, || "30-digit check failed".into())?;
    Ok(format!("l=1..100 exact, l=100 excess {}", show(&decimal_gap(&last, &root3))))
}

fn sqrt2_family() -> Check {
    let z = PointForm::sqrt_minus_two();
    let root8 = QuadSurd::sqrt_int(8).map_err(e)?;
    let mut prev: Option<QuadSurd> = None;
    for ell in (4..=12).chain([12001]) {
        let pt = lambda_point(&z, &d_ell(ell).map_err(e)?, 100_000).map_err(e)?;
        ensure(pt.certificate == Certificate::Exact, || format!("l={ell}: {}", pt.certificate.name()))?;
        let v = finite(&pt.value)?.clone();
        let want = d_ell_lambda(ell).map_err(e)?;
        ensure(v == want, || format!("l={ell}: {v} against {want}"))?;
        ensure(v > root8, || format!("l={ell}: not above sqrt(8)"))?;
        if let Some(p) = &prev {
            ensure(p > &v, || format!("not decreasing at l={ell}"))?;
        }
        prev = Some(v);
    }
    let last = prev.expect("values");
    let tol = rat(1, 1000);
    ensure(within(&last, &root8, &tol), || "l=12001 not within 1e-3".into())?;
    ensure(decimal_gap(&last, &root8) < tol, || "decimal check failed".into())?;
    let h = c_half();
    ensure(!h.proper && !h.orientable, || format!("C_1/2 proper={} orientable={}", h.proper, h.orientable))?;
    Ok(format!("D_12001 = {last}, excess {}", show(&decimal_gap(&last, &root8))))
}

fn improper_grid() -> Check {
    let third = QuadSurd::from_rational(&rat(1, 3));
    let mut grid: Vec<QuadSurd> = (0..=500).map(|k| QuadSurd::from_rational(&rat(k, 1000))).collect();
    grid.push(third.clone());
    let mut best = (QuadSurd::zero(), QuadSurd::zero());
    for a in &grid {
        let v = improper_bound(a);
        if v > best.1 {
            best = (a.clone(), v);
        }
    }
    ensure(best.0 == third && best.1 == third, || format!("maximum {} at {}", best.1, best.0))?;
    let lam = best.1.recip().map_err(e)?;
    ensure(lam == QuadSurd::from_int(3), || format!("lambda {lam}"))?;
    let b = vertical_billiard(1, 3).map_err(e)?;
    let direct = lambda_i(&b).map_err(e)?;
    ensure(direct.value == ExtendedReal::Finite(lam.clone()), || format!("<1/3, inf> gives {}", direct.value))?;
    let folded = lambda_point(&PointForm::i(), &b, 10_000).map_err(e)?;
    ensure(folded.value == direct.value, || format!("fold gives {}", folded.value))?;
    Ok("max min(a, 1-2a) = 1/3 at a = 1/3, lambda = 3".into())
}

fn nu_mu() -> Check {
    let mut forms = 0;
    for d in 2..=300i64 {
        if is_square(d) || !matches!(d % 4, 0 | 1) {
            continue;
        }
        for q in reduced_forms(d) {
            let b = Billiard::from_form(&q).map_err(e)?;
            let nu = nu_infimum(&b).map_err(e)?.ok_or_else(|| format!("{q}: chain did not close"))?;
            let seq = b.seq.as_ref().ok_or_else(|| format!("{q}: no sequence"))?;
            let mu = mu_profile(seq).map_err(e)?.mu;
            ensure(nu == mu, || format!("{q}: inf nu {nu} against mu {mu}"))?;
            forms += 1;
        }
    }
    Ok(format!("{forms} reduced forms agree"))
}

fn lemmas() -> Check {
    let cat = lemma_catalogue();
    let want = [
        (1, 3),
        (11, 56),
        (4, 11),
        (157, 870),
        (9, 23),
        (2721, 6902),
        (71, 182),
        (82, 209),
        (185848, 519893),
    ];
    for (n, d) in want {
        ensure(cat.iter().any(|l| l.constant == rat(n, d)), || format!("{n}/{d} missing"))?;
    }
    let mut exact = 0;
    for l in &cat {
        let c = l.certificate().map_err(e)?;
        ensure(c.certifies(&l.constant), || format!("{}: upper end {} above {}", l.name, c.value.hi(), l.constant))?;
        if c.value.hi() == &l.constant {
            exact += 1;
        }
    }
    Ok(format!("{} bounds certified, {exact} met exactly", cat.len()))
}

fn k_family() -> Check {
    let threshold = mu_threshold();
    let limit = surd("(3+sqrt(21))/3");
    let mut prev: Option<QuadSurd> = None;
    let mut last_b = QuadSurd::zero();
    for ell in 1..=20u32 {
        let mu = mu_profile(&k_ell(ell).map_err(e)?).map_err(e)?.mu;
        let closed = k_ell_closed_form_mu(ell).map_err(e)?;
        ensure(mu == closed, || format!("l={ell}: {mu} against {closed}"))?;
        ensure(mu < threshold, || format!("l={ell}: not below the threshold"))?;
        // λᵢ(𝓑_ℓ) = 1/μ decreases
        if let Some(p) = &prev {
            ensure(mu > *p, || format!("1/mu not decreasing at l={ell}"))?;
        }
        prev = Some(mu);
        let lb = lambda_i(&b_ell(ell).map_err(e)?).map_err(e)?;
        let v = finite(&lb.value)?.clone();
        ensure(v > limit, || format!("B_{ell} = {v} not above the limit"))?;
        last_b = v;
    }
    let tol = rat(1, 10_000_000_000);
    ensure(within(&last_b, &limit, &tol), || "B_20 not within 1e-10".into())?;
    ensure(decimal_gap(&last_b, &limit) < tol, || "30-digit check failed".into())?;
    Ok(format!("l=1..20 closed form exact, B_20 excess {}", show(&decimal_gap(&last_b, &limit))))
}

fn chains() -> Check {
    let mut forms = 0;
    let mut steps = 0;
    for d in 2..=500i64 {
        if is_square(d) || !matches!(d % 4, 0 | 1) {
            continue;
        }
        let dd = BigInt::from(d);
        for q in reduced_forms(d) {
            let cyc = q.chain_cycle(100_000).map_err(e)?.ok_or_else(|| format!("{q}: chain does not close"))?;
            for (n, f) in cyc.iter().enumerate() {
                let g = &cyc[(n + 1) % cyc.len()];
                // Q_n = (a_{n+1}, −b_n, −a_n)
                let (a1, b, c) = f.int_coeffs().ok_or("non-integral form")?;
                let (_, _, c1) = g.int_coeffs().ok_or("non-integral form")?;
                let a = -c;
                ensure(-c1 == a1, || format!("{f} -> {g}: forms do not link"))?;
                ensure(a.is_positive() && a1.is_positive(), || format!("{f}: sign pattern"))?;
                ensure(&b * &b + BigInt::from(4) * &a * &a1 == dd, || format!("{f} -> {g}: identity fails"))?;
                steps += 1;
            }
            forms += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6273);
    let mut tried = 0;
    while tried < 1000 {
        let d: i64 = rng.gen_range(2..1000);
        if is_square(d) {
            continue;
        }
        let p: i64 = rng.gen_range(-1000..=1000);
        let q: i64 = rng.gen_range(1..=50) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let r: i64 = rng.gen_range(1..=200);
        let x = QuadSurd::new(p, q, r, d).map_err(e)?;
        if x.is_rational() {
            continue;
        }
        let back = cf_value(&cf_expand(&x).map_err(e)?).map_err(e)?;
        ensure(back == x, || format!("{x} expands back to {back}"))?;
        tried += 1;
    }
    Ok(format!("{forms} chains, {steps} steps, {tried} expansions"))
}

fn closure() -> Check {
    let c1 = c_exceptional(1).map_err(e)?;
    let eps = c1.pell.as_ref().ok_or("C1 has no unit")?.epsilon.clone();
    ensure(eps == surd("(5+sqrt(21))/2"), || format!("unit {eps}"))?;
    let rep = c1.fold(10_000).map_err(e)?;
    ensure(rep.closed, || "C1 does not close".into())?;
    let total = rep.total_length().map_err(e)?;
    let want = 2.0 * eps.to_f64().ln();
    ensure((total - want).abs() < 1e-9, || format!("length {total} against {want}"))?;
    let c3 = c_exceptional(3).map_err(e)?;
    let rep3 = c3.fold(10_000).map_err(e)?;
    ensure(!rep3.closed && !rep3.cusp, || "C3 closed or hit the cusp".into())?;
    ensure(rep3.len() >= 10_000, || format!("C3 stopped after {} segments", rep3.len()))?;
    Ok(format!("C1 closes after {} segments, length {total:.12}", rep.len()))
}

fn brute() -> Check {
    let mut shown = Vec::new();
    for j in 1..=2 {
        let b = c_exceptional(j).map_err(e)?;
        let (a, bb, c) = b.form.int_coeffs().ok_or("non-integral form")?;
        let to = |x: &BigInt| i64::try_from(x).map_err(|_| "coefficient too large".to_string());
        let (a, bb, c) = (to(&a)?, to(&bb)?, to(&c)?);
        let d = bb * bb - 4 * a * c;
        let lam = lambda_i(&b).map_err(e)?;
        let lam = finite(&lam.value)?.clone();
        // d' = −4 for i
        let target = QuadSurd::sqrt_int(4 * d).map_err(e)?.checked_div(&lam).map_err(e)?;
        let (m, x) = quaternary_min_brute((1, 0, 1), (a, bb, c), 50);
        ensure(target == QuadSurd::from_int(m as i64), || format!("C{j}: brute {m} against {target}"))?;
        shown.push(format!("C{j}: {m} at {x:?}"));
    }
    Ok(shown.join(", "))
}

fn determinism() -> Check {
    for name in ["fig1", "fig4", "fig5", "fig6-left"] {
        let a = figure(name).map_err(e)?;
        let b = figure(name).map_err(e)?;
        ensure(a == b, || format!("{name} differs between runs"))?;
    }
    let (min, tangent, n) = rho_tangency(-1.0, 1.0, 40, 100).map_err(e)?;
    ensure(n == 100 && min >= 5, || format!("{n} pairs, least 3cosh {min}"))?;
    Ok(format!("4 figures stable; 100 nearest rho pairs disjoint, {tangent} tangent"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn selection() {
        assert_eq!(select(&[]).unwrap().len(), 12);
        assert_eq!(select(&["lemmas".into()]).unwrap().len(), 1);
        let t: Vec<u8> = select(&["chains".into(), "7".into()]).unwrap().iter().map(|c| c.id).collect();
        assert_eq!(t, vec![6, 7, 9, 10, 11]);
        assert!(select(&["nonsense".into()]).is_err());
    }

    #[test]
    fn decimal_reading() {
        assert_eq!(decimal_rational("-1.25"), rat(-5, 4));
        assert!(BigRational::zero() < decimal_gap(&surd("sqrt(2)"), &surd("sqrt(3)")));
    }
}
