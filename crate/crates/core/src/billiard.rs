//! Oriented geodesics, the modular triangle `𝒯 = {0 ≤ Re z ≤ 1/2, |z| ≥ 1}`
//! and folding a geodesic into its billiard trajectory.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cfrac::BilliardSeq;
use crate::exact::{ExactError, ExtendedReal, QuadSurd};
use crate::forms::{pell, BinaryForm, FormError, PellSolution, GL2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilliardError {
    #[error("geodesic endpoints must be distinct")]
    Degenerate,
    #[error("endpoints lie in different quadratic fields")]
    MixedFields,
    #[error("trajectory left the triangle (internal inconsistency)")]
    Lost,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `⟨α, β⟩`, directed from `α` to `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Geodesic {
    pub alpha: ExtendedReal,
    pub beta: ExtendedReal,
}

fn ext(x: QuadSurd) -> ExtendedReal {
    ExtendedReal::Finite(x)
}

fn half() -> QuadSurd {
    QuadSurd::from_ratio(1, 2).expect("nonzero")
}

impl Geodesic {
    pub fn new(alpha: ExtendedReal, beta: ExtendedReal) -> Result<Self, BilliardError> {
        if alpha == beta {
            return Err(BilliardError::Degenerate);
        }
        if let (Some(a), Some(b)) = (alpha.finite(), beta.finite()) {
            if a.checked_sub(b).is_err() {
                return Err(BilliardError::MixedFields);
            }
        }
        Ok(Geodesic { alpha, beta })
    }

    pub fn finite(alpha: QuadSurd, beta: QuadSurd) -> Result<Self, BilliardError> {
        Self::new(ext(alpha), ext(beta))
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn apply(&self, m: &GL2) -> Geodesic {
        Geodesic {
            alpha: m.apply(&self.alpha),
            beta: m.apply(&self.beta),
        }
    }

    /// Real part of a vertical geodesic.
    pub fn vertical_x(&self) -> Option<&QuadSurd> {
        match (&self.alpha, &self.beta) {
            (ExtendedReal::Infinity, ExtendedReal::Finite(x))
            | (ExtendedReal::Finite(x), ExtendedReal::Infinity) => Some(x),
            _ => None,
        }
    }

    pub fn is_upward(&self) -> bool {
        self.beta.is_infinite()
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({"alpha": self.alpha.to_json(digits), "beta": self.beta.to_json(digits)})
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.alpha, self.beta)
    }
}

/// Pieces of `∂𝒯` a trajectory can cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Circle,
    LineZero,
    LineHalf,
    CornerI,
    CornerRho,
    Cusp,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Circle => "circle",
            Side::LineZero => "x=0",
            Side::LineHalf => "x=1/2",
            Side::CornerI => "corner_i",
            Side::CornerRho => "corner_rho",
            Side::Cusp => "cusp",
        }
    }

    /// Map carrying the continuation beyond this side back onto `𝒯`.
    ///
    /// At `i` the continuation lies in the triangle opposite `𝒯`, reached by
    /// the half-turn `AB`; at `ρ` the opposite triangle is `ACA(𝒯)`.
    pub fn generator(self) -> Option<GL2> {
        let (a, b, c) = (GL2::gen_a(), GL2::gen_b(), GL2::gen_c());
        match self {
            Side::Circle => Some(a),
            Side::LineZero => Some(b),
            Side::LineHalf => Some(c),
            Side::CornerI => Some(a.mul(&b)),
            Side::CornerRho => Some(a.mul(&c).mul(&a)),
            Side::Cusp => None,
        }
    }
}

/// A point `x + iy` given exactly by `x` and `y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPoint {
    pub x: QuadSurd,
    pub y2: QuadSurd,
}

impl HPoint {
    pub fn y(&self) -> f64 {
        self.y2.to_f64().sqrt()
    }

    pub fn in_triangle(&self) -> bool {
        !self.x.is_negative() && self.x <= half() && &(&self.x * &self.x) + &self.y2 >= QuadSurd::one()
    }
}

/// Hyperbolic distance between two exactly given points, in floating point.
pub fn hyperbolic_distance(p: &HPoint, q: &HPoint) -> f64 {
    let dx = (&p.x - &q.x).to_f64();
    let (y1, y2) = (p.y(), q.y());
    let dy = y1 - y2;
    2.0 * ((dx * dx + dy * dy).sqrt() / (2.0 * (y1 * y2).sqrt())).asinh()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectorySegment {
    pub geodesic: Geodesic,
    pub entry_side: Side,
    pub exit_side: Side,
    /// `None` at the cusp.
    pub entry: Option<HPoint>,
    pub exit: Option<HPoint>,
}

impl TrajectorySegment {
    pub fn length(&self) -> f64 {
        match (&self.entry, &self.exit) {
            (Some(p), Some(q)) => hyperbolic_distance(p, q),
            _ => f64::INFINITY,
        }
    }

    /// Point on the carrier geodesic at real part `x` (semicircles only).
    pub fn point_at(&self, x: &QuadSurd) -> Option<HPoint> {
        let a = self.geodesic.alpha.finite()?;
        let b = self.geodesic.beta.finite()?;
        Some(HPoint {
            x: x.clone(),
            y2: -(&(x - a) * &(x - b)),
        })
    }

    /// `k` interior points at equally spaced real parts (or heights when vertical).
    pub fn interior_samples(&self, k: u32) -> Vec<HPoint> {
        let (Some(p), Some(q)) = (&self.entry, &self.exit) else {
            // cusp segment: sample heights above the finite end
            let end = self.entry.as_ref().or(self.exit.as_ref());
            return end
                .map(|e| {
                    (1..=k)
                        .map(|j| HPoint {
                            x: e.x.clone(),
                            y2: &e.y2 + &QuadSurd::from_int(i64::from(j)),
                        })
                        .collect()
                })
                .unwrap_or_default();
        };
        (1..=k)
            .filter_map(|j| {
                let t = BigRational::new(BigInt::from(j), BigInt::from(k + 1));
                if self.geodesic.vertical_x().is_some() {
                    let y2 = &p.y2 + &(&q.y2 - &p.y2).mul_rational(&t);
                    Some(HPoint { x: p.x.clone(), y2 })
                } else {
                    let x = &p.x + &(&q.x - &p.x).mul_rational(&t);
                    self.point_at(&x)
                }
            })
            .collect()
    }

    pub fn to_json(&self, n: usize, digits: usize) -> Value {
        let x = |p: &Option<HPoint>| match p {
            Some(p) => p.x.to_json(digits),
            None => json!(null),
        };
        json!({
            "n": n,
            "alpha": self.geodesic.alpha.to_json(digits),
            "beta": self.geodesic.beta.to_json(digits),
            "entry": self.entry_side.name(),
            "exit": self.exit_side.name(),
            "entry_x": x(&self.entry),
            "exit_x": x(&self.exit),
        })
    }
}

enum Bound {
    Side(Side),
    Endpoint,
}

fn merge_sides(sides: &[Side]) -> Side {
    let has = |s: Side| sides.contains(&s);
    if has(Side::Circle) && has(Side::LineZero) {
        Side::CornerI
    } else if has(Side::Circle) && has(Side::LineHalf) {
        Side::CornerRho
    } else {
        sides[0]
    }
}

fn extreme(cands: Vec<(QuadSurd, Bound)>, want_max: bool) -> Option<(QuadSurd, Side)> {
    let best = cands
        .iter()
        .map(|(v, _)| v)
        .reduce(|a, b| if (b > a) == want_max { b } else { a })?
        .clone();
    let mut sides = Vec::new();
    for (v, b) in &cands {
        if *v == best {
            match b {
                Bound::Side(s) => sides.push(*s),
                Bound::Endpoint => return None,
            }
        }
    }
    Some((best, merge_sides(&sides)))
}

/// The part of `g` inside `𝒯`, if it has positive length.
pub fn segment_in_triangle(g: &Geodesic) -> Option<TrajectorySegment> {
    let h = half();
    if let Some(x0) = g.vertical_x() {
        if x0.is_negative() || *x0 > h {
            return None;
        }
        let side = if x0.is_zero() {
            Side::CornerI
        } else if *x0 == h {
            Side::CornerRho
        } else {
            Side::Circle
        };
        let foot = Some(HPoint {
            x: x0.clone(),
            y2: &QuadSurd::one() - &(x0 * x0),
        });
        return Some(if g.is_upward() {
            TrajectorySegment {
                geodesic: g.clone(),
                entry_side: side,
                exit_side: Side::Cusp,
                entry: foot,
                exit: None,
            }
        } else {
            TrajectorySegment {
                geodesic: g.clone(),
                entry_side: Side::Cusp,
                exit_side: side,
                entry: None,
                exit: foot,
            }
        });
    }
    let a = g.alpha.finite()?;
    let b = g.beta.finite()?;
    let s = a + b;
    let p = a * b;
    let one = QuadSurd::one();
    let on_circle = s.is_zero() && p == -one.clone();
    let mut lows = vec![
        (QuadSurd::zero(), Bound::Side(Side::LineZero)),
        (a.clone().min(b.clone()), Bound::Endpoint),
    ];
    let mut highs = vec![
        (h.clone(), Bound::Side(Side::LineHalf)),
        (a.clone().max(b.clone()), Bound::Endpoint),
    ];
    if on_circle {
        lows.push((QuadSurd::zero(), Bound::Side(Side::Circle)));
        highs.push((h.clone(), Bound::Side(Side::Circle)));
    } else if s.is_zero() {
        // concentric with the unit circle
        if -&p < one {
            return None;
        }
    } else {
        let xa = &(&one + &p) / &s;
        if s.is_positive() {
            lows.push((xa, Bound::Side(Side::Circle)));
        } else {
            highs.push((xa, Bound::Side(Side::Circle)));
        }
    }
    let (lo, lo_side) = extreme(lows, true)?;
    let (hi, hi_side) = extreme(highs, false)?;
    if lo >= hi {
        return None;
    }
    let pt = |x: &QuadSurd| HPoint {
        x: x.clone(),
        y2: -(&(x - a) * &(x - b)),
    };
    let (lo_pt, hi_pt) = (pt(&lo), pt(&hi));
    Some(if a < b {
        TrajectorySegment {
            geodesic: g.clone(),
            entry_side: lo_side,
            exit_side: hi_side,
            entry: Some(lo_pt),
            exit: Some(hi_pt),
        }
    } else {
        TrajectorySegment {
            geodesic: g.clone(),
            entry_side: hi_side,
            exit_side: lo_side,
            entry: Some(hi_pt),
            exit: Some(lo_pt),
        }
    })
}

/// Moves a point of `g` into `𝒯`, carrying `g` along.
///
/// Translate, reflect in `x = 1/2`, invert in the unit circle; each
/// inversion strictly increases the height, and heights of orbit points are
/// bounded, so the loop ends.
pub fn translate_into_triangle(g: &Geodesic) -> Result<(Geodesic, GL2), BilliardError> {
    let mut cur = g.clone();
    let mut total = GL2::identity();
    if let Some(x0) = g.vertical_x() {
        let n = x0.floor();
        let mut m = GL2::translation(-n);
        let x = m.apply(&ext(x0.clone()));
        if *x.expect_finite()? > half() {
            m = GL2::gen_c().mul(&m);
        }
        return Ok((g.apply(&m), m));
    }
    let a = g.alpha.expect_finite()?;
    let b = g.beta.expect_finite()?;
    let mut x = (a + b).mul_rational(&BigRational::new(1.into(), 2.into()));
    let r = (a - b).mul_rational(&BigRational::new(1.into(), 2.into()));
    let mut y2 = &r * &r;
    for _ in 0..1_000_000 {
        let n = x.floor();
        if !n.is_zero() {
            let m = GL2::translation(-n.clone());
            x = &x - &QuadSurd::from_int(n);
            cur = cur.apply(&m);
            total = m.mul(&total);
        }
        if x > half() {
            let m = GL2::gen_c();
            x = &QuadSurd::one() - &x;
            cur = cur.apply(&m);
            total = m.mul(&total);
        }
        let norm = &(&x * &x) + &y2;
        if norm >= QuadSurd::one() {
            if norm == QuadSurd::one() && x == half() {
                // apex at the corner ρ touches 𝒯 in a single point; the
                // inverted translate crosses it
                let m = GL2::gen_a();
                cur = cur.apply(&m);
                total = m.mul(&total);
            }
            return Ok((cur, total));
        }
        let m = GL2::gen_a();
        x = &x / &norm;
        y2 = &y2 / &(&norm * &norm);
        cur = cur.apply(&m);
        total = m.mul(&total);
    }
    Err(BilliardError::Lost)
}

/// `a + b√D` with integer `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Zd {
    a: BigInt,
    b: BigInt,
}

impl Zd {
    fn int(a: BigInt) -> Zd {
        Zd { a, b: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Zd) -> Zd {
        Zd {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn sub(&self, o: &Zd) -> Zd {
        Zd {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }


    fn mul(&self, o: &Zd, d: &BigInt) -> Zd {
        Zd {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn scale(&self, k: &BigInt) -> Zd {
        Zd {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Sign as −1, 0, 1; `d` is 0 or a nonsquare.
    fn sign(&self, d: &BigInt) -> i32 {
        let sa = sgn(&self.a);
        let sb = if d.is_zero() { 0 } else { sgn(&self.b) };
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        if &self.a * &self.a > &self.b * &self.b * d {
            sa
        } else {
            sb
        }
    }
}

fn sgn(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_negative() {
        -1
    } else {
        1
    }
}

/// Endpoint `n/d`, with `d = 0` meaning `∞`.
#[derive(Debug, Clone)]
struct Ratio {
    n: Zd,
    d: Zd,
}

impl Ratio {
    fn from_ext(x: &ExtendedReal, radicand: &BigInt) -> Ratio {
        match x {
            ExtendedReal::Infinity => Ratio {
                n: Zd::int(BigInt::one()),
                d: Zd::int(BigInt::zero()),
            },
            ExtendedReal::Finite(v) => {
                let b = if v.d() == radicand { v.q().clone() } else { BigInt::zero() };
                Ratio {
                    n: Zd { a: v.p().clone(), b },
                    d: Zd::int(v.r().clone()),
                }
            }
        }
    }

    fn apply(&self, m: &GL2) -> Ratio {
        Ratio {
            n: self.n.scale(&m.a).add(&self.d.scale(&m.b)),
            d: self.n.scale(&m.c).add(&self.d.scale(&m.d)),
        }
    }

    fn same(&self, o: &Ratio, rad: &BigInt) -> bool {
        self.n.mul(&o.d, rad) == o.n.mul(&self.d, rad)
    }
}

/// Translate in the unnormalized representation used while folding.
#[derive(Debug, Clone)]
struct FastGeo {
    rad: BigInt,
    alpha: Ratio,
    beta: Ratio,
}

impl FastGeo {
    fn new(g: &Geodesic) -> FastGeo {
        let rad = [&g.alpha, &g.beta]
            .into_iter()
            .filter_map(|e| e.finite())
            .map(|x| x.d().clone())
            .find(|d| !d.is_zero())
            .unwrap_or_else(BigInt::zero);
        FastGeo {
            alpha: Ratio::from_ext(&g.alpha, &rad),
            beta: Ratio::from_ext(&g.beta, &rad),
            rad,
        }
    }

    fn apply(&self, m: &GL2) -> FastGeo {
        FastGeo {
            rad: self.rad.clone(),
            alpha: self.alpha.apply(m),
            beta: self.beta.apply(m),
        }
    }

    fn same(&self, o: &FastGeo) -> bool {
        self.alpha.same(&o.alpha, &self.rad) && self.beta.same(&o.beta, &self.rad)
    }

    /// Exit side of the segment inside `𝒯`, assuming the translate meets `𝒯`.
    fn exit_side(&self) -> Side {
        let r = &self.rad;
        let (n1, d1, n2, d2) = (&self.alpha.n, &self.alpha.d, &self.beta.n, &self.beta.d);
        let vertical_side = |n: &Zd, d: &Zd| {
            // x0 = n/d ∈ [0, 1/2]
            let s = n.sign(r) * d.sign(r);
            if s == 0 {
                Side::CornerI
            } else if n.scale(&BigInt::from(2)).sub(d).sign(r) == 0 {
                Side::CornerRho
            } else {
                Side::Circle
            }
        };
        if d2.is_zero() {
            return Side::Cusp;
        }
        if d1.is_zero() {
            return vertical_side(n2, d2);
        }
        let dd = d1.mul(d2, r);
        let sdd = dd.sign(r);
        let u = dd.add(&n1.mul(n2, r));
        let v = n1.mul(d2, r).add(&n2.mul(d1, r));
        let rightward = n1.mul(d2, r).sub(&n2.mul(d1, r)).sign(r) * sdd < 0;
        let sv = v.sign(r) * sdd;
        let (lo, hi) = if sv == 0 {
            if u.is_zero() {
                (Side::CornerI, Side::CornerRho)
            } else {
                (Side::LineZero, Side::LineHalf)
            }
        } else if sv > 0 {
            let c = u.sign(r) * v.sign(r);
            let lo = match c {
                1 => Side::Circle,
                0 => Side::CornerI,
                _ => Side::LineZero,
            };
            (lo, Side::LineHalf)
        } else {
            let c = u.scale(&BigInt::from(2)).sub(&v).sign(r) * v.sign(r);
            let hi = match c {
                -1 => Side::Circle,
                0 => Side::CornerRho,
                _ => Side::LineHalf,
            };
            (Side::LineZero, hi)
        };
        if rightward {
            hi
        } else {
            lo
        }
    }
}

/// Result of folding: the first translate and the side crossed at the end
/// of each segment. Segments are rebuilt exactly on request.
#[derive(Debug, Clone)]
pub struct FoldReport {
    pub start: Geodesic,
    pub exits: Vec<Side>,
    /// The trajectory returned to its first translate.
    pub closed: bool,
    /// The trajectory ran into the cusp.
    pub cusp: bool,
}

impl FoldReport {
    pub fn len(&self) -> usize {
        self.exits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exits.is_empty()
    }

    /// Translates carrying each segment.
    pub fn translates(&self, count: usize) -> Vec<Geodesic> {
        let mut out = Vec::new();
        let mut cur = self.start.clone();
        for side in self.exits.iter().take(count) {
            out.push(cur.clone());
            if let Some(g) = side.generator() {
                cur = cur.apply(&g);
            }
        }
        out
    }

    /// The first `count` segments in exact form.
    pub fn segments(&self, count: usize) -> Result<Vec<TrajectorySegment>, BilliardError> {
        self.translates(count)
            .iter()
            .map(|g| segment_in_triangle(g).ok_or(BilliardError::Lost))
            .collect()
    }

    pub fn all_segments(&self) -> Result<Vec<TrajectorySegment>, BilliardError> {
        self.segments(self.exits.len())
    }

    pub fn total_length(&self) -> Result<f64, BilliardError> {
        Ok(self.all_segments()?.iter().map(TrajectorySegment::length).sum())
    }
}

/// Folds the trajectory starting from the translate `start`, which must meet `𝒯`.
pub fn fold_from(start: &Geodesic, max_segments: usize) -> Result<FoldReport, BilliardError> {
    if segment_in_triangle(start).is_none() {
        return Err(BilliardError::Lost);
    }
    let first = FastGeo::new(start);
    let mut cur = first.clone();
    let mut exits = Vec::new();
    let report = |exits, closed, cusp| FoldReport {
        start: start.clone(),
        exits,
        closed,
        cusp,
    };
    loop {
        let exit = cur.exit_side();
        exits.push(exit);
        let Some(gen) = exit.generator() else {
            return Ok(report(exits, false, true));
        };
        cur = cur.apply(&gen);
        if cur.same(&first) {
            return Ok(report(exits, true, false));
        }
        if exits.len() >= max_segments {
            return Ok(report(exits, false, false));
        }
    }
}

/// Γ-class of an oriented geodesic together with its classification.
#[derive(Debug, Clone)]
pub struct Billiard {
    pub geodesic: Geodesic,
    pub form: BinaryForm,
    pub proper: bool,
    pub orientable: bool,
    pub periodic: bool,
    /// `κ² disc(Q)` for periodic billiards.
    pub disc: Option<BigInt>,
    pub pell: Option<PellSolution>,
    pub seq: Option<BilliardSeq>,
}

/// `M` with `M(∞) = p/q`.
fn sending_infinity_to(x: &QuadSurd) -> GL2 {
    let (p, q) = (x.p().clone(), x.r().clone());
    let e = p.extended_gcd(&q);
    // p·e.x + q·e.y = 1 ⇒ [[p, −e.y], [q, e.x]] has det 1
    GL2 {
        a: p,
        b: -e.y,
        c: q,
        d: e.x,
    }
}

impl Billiard {
    pub fn from_geodesic(g: &Geodesic) -> Result<Self, BilliardError> {
        let form = BinaryForm::from_roots(&g.alpha, &g.beta)?;
        Self::build(g.clone(), form)
    }

    pub fn from_form(q: &BinaryForm) -> Result<Self, BilliardError> {
        let r = q.roots()?;
        let g = Geodesic::new(r.alpha, r.beta)?;
        Self::build(g, q.clone())
    }

    fn build(geodesic: Geodesic, form: BinaryForm) -> Result<Self, BilliardError> {
        let proper = !form.represents_zero()?;
        if !proper {
            let orientable = improper_orientable(&geodesic);
            return Ok(Billiard {
                geodesic,
                form,
                proper,
                orientable,
                periodic: false,
                disc: None,
                pell: None,
                seq: None,
            });
        }
        let seq = form.sequence()?;
        let class = seq.classify();
        let (disc, pell) = if class.periodic {
            let (_, g) = form.primitive_scaling().ok_or(FormError::NoRootInField)?;
            let d = g.disc().p().clone();
            let p = pell(&d)?;
            (Some(d), Some(p))
        } else {
            (None, None)
        };
        Ok(Billiard {
            geodesic,
            form,
            proper,
            orientable: !class.palindromic,
            periodic: class.periodic,
            disc,
            pell,
            seq: Some(seq),
        })
    }

    pub fn reversal(&self) -> Result<Billiard, BilliardError> {
        Billiard::from_geodesic(&self.geodesic.reversed())
    }

    /// `2 log ε` for periodic billiards.
    pub fn length(&self) -> Option<f64> {
        self.pell.as_ref().map(PellSolution::length)
    }

    /// Canonical first translate: the reduced form's geodesic moved into `𝒯`.
    /// Improper billiards start on their vertical translate, entering from
    /// the cusp when the first endpoint is rational.
    pub fn start_translate(&self) -> Result<Geodesic, BilliardError> {
        let g = if self.proper {
            let (r, _) = self.form.reduce()?;
            let roots = r.roots()?;
            Geodesic::new(roots.alpha, roots.beta)?
        } else if self.geodesic.vertical_x().is_some() {
            self.geodesic.clone()
        } else {
            let rational_end = match (&self.geodesic.alpha, &self.geodesic.beta) {
                (ExtendedReal::Finite(a), _) if a.is_rational() => a.clone(),
                (_, ExtendedReal::Finite(b)) => b.clone(),
                _ => return Err(BilliardError::Lost),
            };
            let m = sending_infinity_to(&rational_end);
            self.geodesic.apply(&m.inverse())
        };
        Ok(translate_into_triangle(&g)?.0)
    }

    pub fn fold(&self, max_segments: usize) -> Result<FoldReport, BilliardError> {
        fold_from(&self.start_translate()?, max_segments)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "geodesic": self.geodesic.to_json(digits),
            "form": self.form.to_json(digits),
            "proper": self.proper,
            "orientable": self.orientable,
            "periodic": self.periodic,
            "disc": self.disc.as_ref().map(|d| d.to_string()),
            "length": self.length(),
            "epsilon": self.pell.as_ref().map(|p| p.epsilon.to_json(digits)),
            "sequence": self.seq.as_ref().map(BilliardSeq::to_json),
        })
    }
}

/// An improper billiard is a vertical line `Re z = p/q` after moving a
/// rational endpoint to `∞`; it equals its reversal exactly when some
/// `M ∈ Γ` swaps `p/q` and `∞`, i.e. when `p² ≡ ±1 (mod q)`.
fn improper_orientable(g: &Geodesic) -> bool {
    let other = match (&g.alpha, &g.beta) {
        (ExtendedReal::Infinity, ExtendedReal::Finite(x)) | (ExtendedReal::Finite(x), ExtendedReal::Infinity) => {
            x.clone()
        }
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
            let (rat, oth) = if a.is_rational() { (a, b) } else { (b, a) };
            let m = sending_infinity_to(rat).inverse();
            match m.apply(&ext(oth.clone())) {
                ExtendedReal::Finite(x) => x,
                ExtendedReal::Infinity => return false,
            }
        }
        _ => return false,
    };
    let Some(x) = other.to_rational() else {
        return true;
    };
    let (p, q) = (x.numer().mod_floor(x.denom()), x.denom().clone());
    let sq = (&p * &p).mod_floor(&q);
    let one = BigInt::one().mod_floor(&q);
    let minus = (-BigInt::one()).mod_floor(&q);
    !(sq == one || sq == minus)
}

impl fmt::Display for Billiard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.geodesic,
            if self.proper { "proper" } else { "improper" },
            if self.orientable { "orientable" } else { "non-orientable" },
            if self.periodic { "periodic" } else { "non-periodic" },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    fn c1() -> Billiard {
        Billiard::from_geodesic(&Geodesic::finite(s(1, -1, 2, 21), s(1, 1, 2, 21)).unwrap()).unwrap()
    }

    #[test]
    fn classification() {
        let b = c1();
        assert!(b.proper && !b.orientable && b.periodic);
        assert_eq!(b.disc, Some(21.into()));
        let c0 = Billiard::from_geodesic(&Geodesic::new(ext(0.into()), ExtendedReal::Infinity).unwrap()).unwrap();
        assert!(!c0.proper && !c0.orientable);
        let c3 = Billiard::from_geodesic(&Geodesic::finite(s(3, -1, 2, 21), s(5, 1, 2, 21)).unwrap()).unwrap();
        assert!(c3.proper && !c3.orientable && !c3.periodic);
        assert_eq!(Geodesic::finite(1.into(), 1.into()), Err(BilliardError::Degenerate));
    }

    #[test]
    fn improper_orientation_rule() {
        let v = |p: i64, q: i64| {
            Billiard::from_geodesic(
                &Geodesic::new(ext(QuadSurd::from_ratio(p, q).unwrap()), ExtendedReal::Infinity).unwrap(),
            )
            .unwrap()
            .orientable
        };
        assert!(!v(1, 2) && !v(1, 3) && !v(2, 5));
        assert!(v(2, 7));
        let g = Geodesic::finite(QuadSurd::from_ratio(1, 3).unwrap(), QuadSurd::sqrt_int(2).unwrap()).unwrap();
        assert!(Billiard::from_geodesic(&g).unwrap().orientable);
    }

    #[test]
    fn c1_closes_with_pell_length() {
        let b = c1();
        let f = b.fold(1000).unwrap();
        assert!(f.closed);
        let expected = 2.0 * ((5.0 + 21f64.sqrt()) / 2.0).ln();
        let total = f.total_length().unwrap();
        assert!((total - expected).abs() < 1e-9, "{total}");
        let segs = f.all_segments().unwrap();
        for (seg, side) in segs.iter().zip(&f.exits) {
            assert_eq!(seg.exit_side, *side);
        }
        for w in segs.windows(2) {
            let gen = w[0].exit_side.generator().unwrap();
            assert_eq!(w[0].geodesic.apply(&gen), w[1].geodesic);
            assert_eq!(w[0].exit, w[1].entry);
        }
        for seg in &segs {
            assert!(seg.interior_samples(10).iter().all(HPoint::in_triangle));
        }
    }

    #[test]
    fn c0_is_one_vertical_segment() {
        let c0 = Billiard::from_geodesic(&Geodesic::new(ext(0.into()), ExtendedReal::Infinity).unwrap()).unwrap();
        let f = c0.fold(10).unwrap();
        assert!(f.cusp);
        let segs = f.all_segments().unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].entry_side, Side::CornerI);
        assert_eq!(segs[0].exit_side, Side::Cusp);
    }

    #[test]
    fn unit_circle_runs_between_corners() {
        let g = Geodesic::finite((-1).into(), 1.into()).unwrap();
        let seg = segment_in_triangle(&g).unwrap();
        assert_eq!((seg.entry_side, seg.exit_side), (Side::CornerI, Side::CornerRho));
    }

    #[test]
    fn translate_lands_in_triangle() {
        let g = Geodesic::finite(s(7, 1, 3, 5), s(-11, 1, 4, 5)).unwrap();
        let (t, m) = translate_into_triangle(&g).unwrap();
        assert_eq!(g.apply(&m), t);
        assert!(segment_in_triangle(&t).is_some());
    }
}
