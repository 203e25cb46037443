//! SVG figures: the triangle `𝒯` with folded billiards, Ford circles and
//! disks around the orbit of a point.
//!
//! All geometry is decided exactly; coordinates become floats only when
//! they are written out, with 12 significant digits.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::billiard::{Billiard, BilliardError, TrajectorySegment};
use crate::exact::QuadSurd;
use crate::spectra::{c_exceptional, PointForm};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("empty or inverted viewport")]
    Viewport,
    #[error("unknown figure {0:?}")]
    UnknownFigure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Billiard(#[from] BilliardError),
}

/// Window `[x0, x1] × [0, y_max]` drawn `width` pixels wide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub x1: f64,
    pub y_max: f64,
    pub width: f64,
}

impl Viewport {
    pub fn new(x0: f64, x1: f64, y_max: f64, width: f64) -> Result<Self, RenderError> {
        if !(x1 > x0 && y_max > 0.0 && width > 0.0) || ![x0, x1, y_max, width].iter().all(|v| v.is_finite()) {
            return Err(RenderError::Viewport);
        }
        Ok(Viewport { x0, x1, y_max, width })
    }

    pub fn scale(&self) -> f64 {
        self.width / (self.x1 - self.x0)
    }

    pub fn height(&self) -> f64 {
        self.y_max * self.scale()
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) * self.scale(), self.height() - y * self.scale())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Element {
    Path { d: String, class: &'static str },
    Circle { cx: f64, cy: f64, r: f64, class: &'static str },
    Text { x: f64, y: f64, text: String },
}

/// A drawing in one viewport.
#[derive(Debug, Clone)]
pub struct Scene {
    pub viewport: Viewport,
    elements: Vec<Element>,
}

const STYLE: &str = ".domain{fill:none;stroke:#000;stroke-width:1.5}\
.traj{fill:none;stroke:#c0392b;stroke-width:1}\
.ford{fill:#d6eaf8;stroke:#2471a3;stroke-width:0.5}\
.disk{fill:#fdebd0;stroke:#b9770e;stroke-width:0.5}\
.farey{fill:none;stroke:#7f8c8d;stroke-width:0.4}\
.axis{fill:none;stroke:#000;stroke-width:0.5}\
text{font-family:sans-serif;font-size:12px}";

/// Fixed 12-significant-digit rendering, trailing zeros removed.
fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let digits = 12 - 1 - v.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.clamp(0, 17) as usize, v);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

impl Scene {
    pub fn new(viewport: Viewport) -> Self {
        Scene {
            viewport,
            elements: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), class: &'static str) {
        let v = self.viewport;
        let (p, q) = (v.px(a.0, a.1), v.px(b.0, b.1));
        let d = format!("M{} {}L{} {}", num(p.0), num(p.1), num(q.0), num(q.1));
        self.elements.push(Element::Path { d, class });
    }

    /// Arc of the circle centred on the real axis at `c` with radius `r`
    /// from `a` to `b`, through the upper half plane.
    fn arc(&mut self, a: (f64, f64), b: (f64, f64), r: f64, class: &'static str) {
        let v = self.viewport;
        let (p, q) = (v.px(a.0, a.1), v.px(b.0, b.1));
        let rr = r * v.scale();
        let sweep = if a.0 < b.0 { 1 } else { 0 };
        let d = format!(
            "M{} {}A{} {} 0 0 {} {} {}",
            num(p.0),
            num(p.1),
            num(rr),
            num(rr),
            sweep,
            num(q.0),
            num(q.1)
        );
        self.elements.push(Element::Path { d, class });
    }

    /// Geodesic `⟨a, b⟩` drawn in full, cut at the top of the viewport.
    fn geodesic(&mut self, a: f64, b: f64, class: &'static str) {
        let r = (a - b).abs() / 2.0;
        self.arc((a.min(b), 0.0), (a.max(b), 0.0), r, class);
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, class: &'static str) {
        let v = self.viewport;
        let (cx, cy) = v.px(x, y);
        self.elements.push(Element::Circle {
            cx,
            cy,
            r: r * v.scale(),
            class,
        });
    }

    pub fn label(&mut self, x: f64, y: f64, text: &str) {
        let (x, y) = self.viewport.px(x, y);
        self.elements.push(Element::Text {
            x,
            y,
            text: text.to_string(),
        });
    }

    /// Outline of `𝒯`: the lines `x = 0`, `x = ½` and the unit circle between `i` and `ρ`.
    pub fn domain(&mut self) {
        let top = self.viewport.y_max;
        let rho_y = 3f64.sqrt() / 2.0;
        self.line((0.0, 1.0), (0.0, top), "domain");
        self.line((0.5, rho_y), (0.5, top), "domain");
        self.arc((0.0, 1.0), (0.5, rho_y), 1.0, "domain");
    }

    pub fn axis(&mut self) {
        self.line((self.viewport.x0, 0.0), (self.viewport.x1, 0.0), "axis");
    }

    pub fn segment(&mut self, s: &TrajectorySegment) {
        let top = self.viewport.y_max;
        let pt = |p: &crate::billiard::HPoint| (p.x.to_f64(), p.y());
        match (&s.entry, &s.exit) {
            (Some(p), Some(q)) => {
                if s.geodesic.vertical_x().is_some() {
                    self.line(pt(p), pt(q), "traj");
                } else {
                    let (a, b) = (s.geodesic.alpha.to_f64(), s.geodesic.beta.to_f64());
                    self.arc(pt(p), pt(q), (a - b).abs() / 2.0, "traj");
                }
            }
            (Some(p), None) | (None, Some(p)) => {
                let (x, y) = pt(p);
                self.line((x, y), (x, top.max(y)), "traj");
            }
            (None, None) => {}
        }
    }

    pub fn to_svg(&self) -> String {
        let v = self.viewport;
        let mut out = String::new();
        let _ = write!(
            out,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<style>{STYLE}</style>\n",
            w = num(v.width),
            h = num(v.height())
        );
        for e in &self.elements {
            match e {
                Element::Path { d, class } => {
                    let _ = writeln!(out, "<path class=\"{class}\" d=\"{d}\"/>");
                }
                Element::Circle { cx, cy, r, class } => {
                    let _ = writeln!(
                        out,
                        "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                        num(*cx),
                        num(*cy),
                        num(*r)
                    );
                }
                Element::Text { x, y, text } => {
                    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", num(*x), num(*y), escape(text));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Places several scenes side by side in one document.
pub fn side_by_side(scenes: &[Scene], gap: f64) -> String {
    let width: f64 = scenes.iter().map(|s| s.viewport.width).sum::<f64>() + gap * scenes.len().saturating_sub(1) as f64;
    let height = scenes.iter().map(|s| s.viewport.height()).fold(0.0, f64::max);
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<style>{STYLE}</style>\n",
        w = num(width),
        h = num(height)
    );
    let mut x = 0.0;
    for (i, s) in scenes.iter().enumerate() {
        let body = s.to_svg();
        let inner: String = body
            .lines()
            .filter(|l| !l.starts_with("<?xml") && !l.starts_with("<svg") && !l.starts_with("<style") && *l != "</svg>")
            .map(|l| format!("{l}\n"))
            .collect();
        let _ = write!(
            out,
            "<clipPath id=\"panel{i}\"><rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/></clipPath>\n<g transform=\"translate({} 0)\" clip-path=\"url(#panel{i})\">\n{inner}</g>\n",
            num(s.viewport.width),
            num(s.viewport.height()),
            num(x)
        );
        x += s.viewport.width + gap;
    }
    out.push_str("</svg>\n");
    out
}

/// `𝒯` with the first `segments` segments of the trajectory of `b`.
pub fn draw_billiard(b: &Billiard, segments: usize, viewport: Viewport) -> Result<Scene, RenderError> {
    let mut scene = Scene::new(viewport);
    scene.domain();
    let rep = b.fold(segments)?;
    for s in rep.segments(rep.len().min(segments))? {
        scene.segment(&s);
    }
    Ok(scene)
}

/// Circles tangent to the real axis at `p/q` with radius `scale/q²`, for
/// `q ≤ q_max` and `p/q` in the window.
pub fn draw_ford(viewport: Viewport, scale: &BigRational, q_max: u64) -> Result<Scene, RenderError> {
    if scale <= &BigRational::from_integer(0.into()) {
        return Err(RenderError::Precondition("radius scale must be positive".into()));
    }
    let mut scene = Scene::new(viewport);
    for (p, q) in farey_points(viewport.x0, viewport.x1, q_max) {
        let r = scale / BigRational::from_integer(BigInt::from(q * q));
        let r = r.to_f64().unwrap_or(0.0);
        scene.circle(p as f64 / q as f64, r, r, "ford");
    }
    Ok(scene)
}

/// Reduced fractions `p/q` in `[x0, x1]` with `q ≤ q_max`, ordered by value.
fn farey_points(x0: f64, x1: f64, q_max: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    if !(x1 >= x0) {
        return out;
    }
    for q in 1..=q_max {
        let lo = (x0 * q as f64).ceil() as i64;
        let hi = (x1 * q as f64).floor() as i64;
        for p in lo..=hi {
            if p.unsigned_abs().gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| ((a.0 as i128) * b.1 as i128).cmp(&((b.0 as i128) * a.1 as i128)));
    out
}

/// Edges `⟨p/q, r/s⟩` of the Farey triangulation with `|ps − qr| = 1` and
/// both denominators at most `q_max`.
pub fn draw_farey(scene: &mut Scene, q_max: u64) {
    let v = scene.viewport;
    let pts = farey_points(v.x0 - 1.0, v.x1 + 1.0, q_max);
    for (i, &(p, q)) in pts.iter().enumerate() {
        let x = p as f64 / q as f64;
        if x >= v.x0 && x <= v.x1 {
            scene.line((x, 0.0), (x, v.y_max), "farey");
        }
        for &(r, s) in &pts[i + 1..] {
            if (p as i128 * s as i128 - q as i128 * r as i128).abs() == 1 {
                let y = r as f64 / s as f64;
                if x.max(y) >= v.x0 && x.min(y) <= v.x1 {
                    scene.geodesic(x, y, "farey");
                }
            }
        }
    }
}

/// Canonical representative of a positive definite integral form under
/// `GL₂(ℤ)`: `0 ≤ b ≤ a ≤ c`.
pub fn definite_reduce(a: i64, b: i64, c: i64) -> (i64, i64, i64) {
    let (mut a, mut b, mut c) = (a, b, c);
    loop {
        if b.abs() > a {
            // translate b into (−a, a]
            let k = (b + a).div_euclid(2 * a);
            let nb = b - 2 * k * a;
            c = c - k * b + k * k * a;
            b = nb;
            continue;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        return (a, b.abs(), c);
    }
}

/// Orbit forms `(a, b, c)` of an integral point form with `a ≤ a_max` and
/// centre `−b/(2a)` in `[x0, x1]`. The point is `(−b + √(b² − 4ac))/(2a)`.
pub fn orbit_forms(zf: &PointForm, x0: f64, x1: f64, a_max: i64) -> Result<Vec<(i64, i64, i64)>, RenderError> {
    let f = zf.form();
    let coeff = |x: &QuadSurd| -> Result<i64, RenderError> {
        x.to_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.numer().to_i64())
            .ok_or_else(|| RenderError::Precondition("point form must be integral".into()))
    };
    let (a0, b0, c0) = (coeff(&f.a)?, coeff(&f.b)?, coeff(&f.c)?);
    let disc = b0 * b0 - 4 * a0 * c0;
    let target = definite_reduce(a0, b0, c0);
    let mut out = Vec::new();
    for a in 1..=a_max {
        // centre −b/(2a) ∈ [x0, x1]
        let b_lo = (-2.0 * a as f64 * x1).ceil() as i64;
        let b_hi = (-2.0 * a as f64 * x0).floor() as i64;
        for b in b_lo..=b_hi {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if definite_reduce(a, b, c) == target {
                out.push((a, b, c));
            }
        }
    }
    Ok(out)
}

/// Disks of hyperbolic radius `radius` around the orbit points of `zf`
/// whose Euclidean radius is at least `min_px` pixels.
pub fn draw_orbit_disks(zf: &PointForm, radius: f64, viewport: Viewport, min_px: f64) -> Result<Scene, RenderError> {
    if !(radius > 0.0) {
        return Err(RenderError::Precondition("radius must be positive".into()));
    }
    let mut scene = Scene::new(viewport);
    let disc = {
        let d = zf.form().disc().to_f64();
        -d
    };
    let (ch, sh) = (radius.cosh(), radius.sinh());
    // Euclidean radius y·sinh r with y = √|d|/(2a)
    let a_max = ((disc.sqrt() * sh * viewport.scale()) / (2.0 * min_px)).floor() as i64;
    let pad = 1.0;
    for (a, b, _) in orbit_forms(zf, viewport.x0 - pad, viewport.x1 + pad, a_max.max(1))? {
        let y = disc.sqrt() / (2.0 * a as f64);
        let x = -(b as f64) / (2.0 * a as f64);
        scene.circle(x, y * ch, y * sh, "disk");
    }
    Ok(scene)
}

/// `2ac′ + 2a′c − bb′`, which is `√(d d′)·cosh δ` for two definite forms.
pub fn cosh_numerator(f: (i64, i64, i64), g: (i64, i64, i64)) -> i64 {
    2 * f.0 * g.2 + 2 * g.0 * f.2 - f.1 * g.1
}

/// Checks that the disks of radius `½ log 3` about the `ρ`-orbit points with
/// `a ≤ a_max` in `[x0, x1]` do not overlap, on the `pairs` closest pairs.
/// Returns the least value of `3 cosh δ` seen and the number of pairs that
/// are exactly tangent. Disjointness is `3 cosh δ ≥ 5`.
pub fn rho_tangency(x0: f64, x1: f64, a_max: i64, pairs: usize) -> Result<(i64, usize, usize), RenderError> {
    let pts = orbit_forms(&PointForm::rho(), x0, x1, a_max)?;
    let mut vals = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            vals.push(cosh_numerator(pts[i], pts[j]));
        }
    }
    vals.sort_unstable();
    vals.truncate(pairs);
    let min = vals.first().copied().unwrap_or(i64::MAX);
    let tangent = vals.iter().filter(|&&v| v == 5).count();
    if vals.iter().any(|&v| v < 5) {
        return Err(RenderError::Precondition(format!("overlapping disks, 3cosh = {min}")));
    }
    Ok((min, tangent, vals.len()))
}

/// Named figures: `fig1`, `fig4`, `fig5`, `fig6-left`, `fig3-left`, `fig7`.
pub fn figure(name: &str) -> Result<String, RenderError> {
    let tri = Viewport::new(-0.1, 0.6, 2.2, 300.0)?;
    match name {
        "fig1" => {
            let b = c_exceptional(1).map_err(|e| RenderError::Precondition(e.to_string()))?;
            Ok(draw_billiard(&b, 100, tri)?.to_svg())
        }
        "fig4" => {
            let mut scenes = Vec::new();
            for (j, n) in [(1, 100), (2, 200), (3, 60)] {
                let b = c_exceptional(j).map_err(|e| RenderError::Precondition(e.to_string()))?;
                let mut s = draw_billiard(&b, n, tri)?;
                s.label(0.0, 2.1, &format!("C{j}"));
                scenes.push(s);
            }
            Ok(side_by_side(&scenes, 20.0))
        }
        "fig5" => {
            let v = Viewport::new(0.0, 1.0, 1.05, 500.0)?;
            let mut left = draw_ford(v, &BigRational::new(1.into(), 2.into()), 20)?;
            left.axis();
            // 1/√5 < 4/9 only for display
            let mut right = draw_ford(v, &BigRational::new(4.into(), 9.into()), 20)?;
            right.axis();
            Ok(side_by_side(&[left, right], 20.0))
        }
        "fig6-left" => disks_figure(&PointForm::rho(), 0.5 * 3f64.ln()),
        "fig3-left" => disks_figure(&PointForm::i(), ((1.0 + 5f64.sqrt()) / 2.0).ln()),
        "fig7" => disks_figure(&PointForm::sqrt_minus_two(), 0.5 * 2f64.ln()),
        other => Err(RenderError::UnknownFigure(other.to_string())),
    }
}

fn disks_figure(zf: &PointForm, radius: f64) -> Result<String, RenderError> {
    let v = Viewport::new(-1.0, 1.0, 1.6, 600.0)?;
    let mut s = draw_orbit_disks(zf, radius, v, 0.25)?;
    draw_farey(&mut s, 6);
    s.axis();
    Ok(s.to_svg())
}

pub const FIGURES: [&str; 6] = ["fig1", "fig4", "fig5", "fig6-left", "fig3-left", "fig7"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_stable() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn reduce_definite() {
        assert_eq!(definite_reduce(3, 3, 1), (1, 1, 1));
        assert_eq!(definite_reduce(3, 5, 3), (1, 1, 3));
        assert_eq!(definite_reduce(1, 0, 1), (1, 0, 1));
        assert_eq!(definite_reduce(7, -4, 1), (1, 0, 3));
    }

    #[test]
    fn rho_orbit_and_tangency() {
        let pts = orbit_forms(&PointForm::rho(), 0.0, 1.0, 3).unwrap();
        assert!(pts.contains(&(1, -1, 1)));
        let (min, tangent, n) = rho_tangency(-1.0, 1.0, 40, 100).unwrap();
        assert_eq!(min, 5);
        assert_eq!(n, 100);
        assert!(tangent > 0);
    }

    #[test]
    fn empty_window_gives_empty_scene() {
        let v = Viewport::new(0.25, 0.26, 1.0, 100.0).unwrap();
        let s = draw_ford(v, &BigRational::new(1.into(), 2.into()), 3).unwrap();
        assert!(s.is_empty());
        assert!(Viewport::new(1.0, 0.0, 1.0, 10.0).is_err());
    }

    #[test]
    fn vertical_billiard_is_one_segment() {
        let b = crate::spectra::c0();
        let s = draw_billiard(&b, 10, Viewport::new(-0.1, 0.6, 2.0, 100.0).unwrap()).unwrap();
        // three outline pieces and one trajectory piece
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn figures_are_deterministic() {
        for f in FIGURES {
            assert_eq!(figure(f).unwrap(), figure(f).unwrap(), "{f}");
        }
    }
}
