//! Browser bindings. Each export wraps a plain function returning
//! `Result<String, String>`, which is what the tests exercise.

use serde_json::json;
use wasm_bindgen::prelude::*;

use mbs_core::literal::{parse_billiard, parse_form, parse_surd};
use mbs_core::render::{draw_billiard, draw_ford, Viewport};
use mbs_core::spectra::{lambda_i, lambda_inf, lambda_point, PointForm, SpectrumId};

const MAX_SEGMENTS: usize = 5000;

/// SVG of the first `segments` segments of a billiard folded into the triangle.
pub fn billiard_svg(literal: &str, segments: usize) -> Result<String, String> {
    let b = parse_billiard(literal).map_err(|e| e.to_string())?;
    let v = Viewport::new(-0.1, 0.6, 2.2, 420.0).map_err(|e| e.to_string())?;
    let mut scene = draw_billiard(&b, segments.clamp(1, MAX_SEGMENTS), v).map_err(|e| e.to_string())?;
    scene.axis();
    Ok(scene.to_svg())
}

/// Ford circles on `[0, 1]` with radius `scale/q²`, `scale` a rational literal.
pub fn ford_svg(scale: &str, q_max: u32) -> Result<String, String> {
    let s = parse_surd(scale)
        .map_err(|e| e.to_string())?
        .to_rational()
        .ok_or("the scale must be rational")?;
    let v = Viewport::new(0.0, 1.0, 1.05, 600.0).map_err(|e| e.to_string())?;
    let mut scene = draw_ford(v, &s, u64::from(q_max.clamp(1, 60))).map_err(|e| e.to_string())?;
    scene.axis();
    Ok(scene.to_svg())
}

/// JSON with the exact value of `λ_z` for `z` in inf, i, rho, 2i or a
/// definite form literal.
pub fn lambda_json(point: &str, literal: &str) -> Result<String, String> {
    let b = parse_billiard(literal).map_err(|e| e.to_string())?;
    let pt = if point == "inf" {
        lambda_inf(&b)
    } else {
        let z = match SpectrumId::parse(point).and_then(SpectrumId::point) {
            Some(z) => z,
            None => PointForm::new(parse_form(point).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?,
        };
        if z.name() == Some("i") && b.proper {
            lambda_i(&b)
        } else {
            lambda_point(&z, &b, 20_000)
        }
    }
    .map_err(|e| e.to_string())?;
    let mut v = pt.to_json(15);
    v["text"] = json!(pt.value.to_string());
    Ok(v.to_string())
}

#[wasm_bindgen(js_name = billiardSvg)]
pub fn billiard_svg_js(literal: &str, segments: usize) -> Result<String, JsError> {
    billiard_svg(literal, segments).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fordSvg)]
pub fn ford_svg_js(scale: &str, q_max: u32) -> Result<String, JsError> {
    ford_svg(scale, q_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = lambda)]
pub fn lambda_js(point: &str, literal: &str) -> Result<String, JsError> {
    lambda_json(point, literal).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn billiard_figure() {
        let svg = billiard_svg("form(1,-1,-5)", 50).unwrap();
        assert!(svg.starts_with("<?xml") && svg.contains("<path"));
        assert!(billiard_svg("form(1,", 5).is_err());
    }

    #[test]
    fn ford_figure() {
        let svg = ford_svg("1/2", 10).unwrap();
        assert_eq!(svg.matches("<circle").count(), 33);
        assert!(ford_svg("sqrt(5)", 10).is_err());
    }

    #[test]
    fn lambda_values() {
        let v: serde_json::Value = serde_json::from_str(&lambda_json("rho", "form(1,-5,-1)").unwrap()).unwrap();
        assert_eq!(v["text"], "sqrt(87)/5");
        let v: serde_json::Value = serde_json::from_str(&lambda_json("i", "per(1,3)").unwrap()).unwrap();
        assert_eq!(v["text"], "sqrt(21)/2");
        let v: serde_json::Value = serde_json::from_str(&lambda_json("inf", "per(1,3)").unwrap()).unwrap();
        assert_eq!(v["text"], "sqrt(21)");
        assert!(lambda_json("i", "1.5").is_err());
    }
}
