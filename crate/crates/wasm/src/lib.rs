//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function has a plain Rust twin returning `Result<String, String>`
//! so the logic can be tested natively; the `#[wasm_bindgen]` wrappers only
//! convert errors into JS exceptions.

use std::collections::HashMap;
use std::fmt::Write;

use farey_core::equi::{exactness_check, height, trend_row};
use farey_core::norm::build_c_leq;
use farey_core::sb::{ancestors, bounds, parents, Parent};
use farey_core::verify::{parse_norm, parse_rational};
use farey_core::{Dna, Sl2Word, Vertex};
use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Coronas larger than this are refused; the page would not draw them anyway.
pub const MAX_POINTS: usize = 200_000;

const LAYER_COLOURS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn f64_of(v: &Vertex) -> (f64, f64) {
    (
        v.x().to_f64().unwrap_or(f64::INFINITY),
        v.y().to_f64().unwrap_or(f64::INFINITY),
    )
}

/// Renders `c(|.| <= r)` as an SVG: the Farey path through the lattice points,
/// each point coloured by the deepest Φ-layer it survives to. Returns the SVG
/// followed by a JSON summary line, separated by a NUL byte.
pub fn corona_svg_impl(norm: &str, r: &str) -> Result<String, String> {
    let norm = parse_norm(norm).map_err(|e| e.to_string())?;
    let r = parse_rational(r).map_err(|e| e.to_string())?;
    let c = build_c_leq(&norm, &r, MAX_POINTS).map_err(|e| e.to_string())?;
    let mut depth: HashMap<&Vertex, usize> = HashMap::new();
    for (k, level) in c.tower().iter().enumerate() {
        for v in level.interior() {
            depth.insert(v, k);
        }
    }
    let pts = c.path().points();
    let scale = pts
        .iter()
        .map(f64_of)
        .fold(1.0f64, |m, (x, y)| m.max(x).max(y));
    let size = 600.0;
    let pad = 20.0;
    let to_screen = |v: &Vertex| {
        let (x, y) = f64_of(v);
        (pad + x / scale * (size - 2.0 * pad), size - pad - y / scale * (size - 2.0 * pad))
    };
    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">"#
    );
    let (ox, oy) = (pad, size - pad);
    let _ = write!(
        svg,
        r##"<line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}" stroke="#bbb"/><line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}" stroke="#bbb"/>"##,
        size - pad,
        pad
    );
    svg.push_str(r##"<polyline fill="none" stroke="#444" stroke-width="0.8" points=""##);
    for v in pts {
        let (x, y) = to_screen(v);
        let _ = write!(svg, "{x:.2},{y:.2} ");
    }
    svg.push_str(r#""/>"#);
    let radius = if pts.len() > 2000 { 1.0 } else { 3.0 };
    for v in pts {
        let (x, y) = to_screen(v);
        let colour = depth.get(v).map_or("#000", |&k| LAYER_COLOURS[k % LAYER_COLOURS.len()]);
        let _ = write!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{radius}" fill="{colour}"><title>{v}</title></circle>"#
        );
    }
    svg.push_str("</svg>");
    let summary = json!({
        "norm": norm.to_string(),
        "r": r.to_string(),
        "degree": c.degree(),
        "height": c.height(),
        "dna": Dna::encode(&c).layers,
    });
    Ok(format!("{svg}\0{summary}"))
}

/// Structural data of one vertex as JSON: bounds, parents, word exponents,
/// ancestors, height `H` and whether the potential is additive across it.
pub fn inspect_vertex_impl(x: &str, y: &str) -> Result<String, String> {
    let v = Vertex::from_strings(x, y).map_err(|e| e.to_string())?;
    let e = |e: farey_core::Error| e.to_string();
    let parent = |p: &Parent| p.vertex().map_or("endpoints".to_string(), |v| v.to_string());
    let out = if v.is_interior() {
        let word = Sl2Word::of_vertex(&v).map_err(e)?;
        let (lo, hi) = bounds(&v).map_err(e)?;
        let ps = parents(&v).map_err(e)?;
        let chain = ancestors(&v).map_err(e)?;
        json!({
            "vertex": v.to_string(),
            "value": format!("{}/{}", v.y(), v.x()),
            "interior": true,
            "exponents": word.exponents().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "sign": ps.sign.to_string(),
            "lower": lo.to_string(),
            "upper": hi.to_string(),
            "mother": parent(&ps.mother),
            "father": parent(&ps.father),
            "depth": chain.len(),
            "ancestors": chain.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "height": height(&v).to_string(),
            "exact": exactness_check(&v).map_err(e)?,
        })
    } else {
        json!({
            "vertex": v.to_string(),
            "interior": false,
            "height": height(&v).to_string(),
        })
    };
    Ok(out.to_string())
}

/// `δ₁`, `δ₂` of `c_R` for the sum norm at `R = lo, lo+step, …, ≤ hi`, as a
/// JSON array of `{r, degree, delta1, delta2}` with decimal statistics.
pub fn discrepancy_curve_impl(lo: u32, hi: u32, step: u32) -> Result<String, String> {
    if lo < 2 || hi < lo || step == 0 {
        return Err(format!("need 2 <= lo <= hi and step > 0, got {lo}..{hi} step {step}"));
    }
    if hi > 2000 {
        return Err("radii above 2000 are too slow for the browser".into());
    }
    let mut rows = Vec::new();
    for r in (lo..=hi).step_by(step as usize) {
        let row = trend_row(r.into()).map_err(|e| e.to_string())?;
        rows.push(json!({
            "r": r,
            "degree": row.degree,
            "delta1": row.delta1.to_f64(),
            "delta2": row.delta2.to_f64(),
        }));
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn corona_svg(norm: &str, r: &str) -> Result<String, JsValue> {
    corona_svg_impl(norm, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn inspect_vertex(x: &str, y: &str) -> Result<String, JsValue> {
    inspect_vertex_impl(x, y).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn discrepancy_curve(lo: u32, hi: u32, step: u32) -> Result<String, JsValue> {
    discrepancy_curve_impl(lo, hi, step).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn split(out: &str) -> (&str, Value) {
        let (svg, summary) = out.split_once('\0').unwrap();
        (svg, serde_json::from_str(summary).unwrap())
    }

    #[test]
    fn corona_svg_draws_every_point() {
        let out = corona_svg_impl("linear:1,1", "4").unwrap();
        let (svg, summary) = split(&out);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
        // five interior points plus both endpoints
        assert_eq!(svg.matches("<circle").count(), 7);
        assert!(svg.contains("<title>(3,1)</title>"));
        assert_eq!(summary["degree"], 6);
        assert_eq!(summary["dna"], json!([[0], [-1, 1]]));
    }

    #[test]
    fn corona_svg_rejects_bad_input() {
        assert!(corona_svg_impl("linear:0,1", "4").is_err());
        assert!(corona_svg_impl("p:2", "abc").is_err());
        assert!(corona_svg_impl("linear:1,1", "100000").is_err());
    }

    #[test]
    fn inspect_examples() {
        let v: Value = serde_json::from_str(&inspect_vertex_impl("3", "5").unwrap()).unwrap();
        assert_eq!(v["value"], "5/3");
        assert_eq!((v["lower"].as_str(), v["upper"].as_str()), (Some("(2,3)"), Some("(1,2)")));
        assert_eq!(v["exact"], true);
        assert_eq!(v["height"], "5/8");
        let end: Value = serde_json::from_str(&inspect_vertex_impl("0", "1").unwrap()).unwrap();
        assert_eq!(end["interior"], false);
        assert!(inspect_vertex_impl("2", "4").is_err());
    }

    #[test]
    fn discrepancy_curve_rows() {
        let rows: Value = serde_json::from_str(&discrepancy_curve_impl(10, 30, 10).unwrap()).unwrap();
        let rows = rows.as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2]["r"], 30);
        assert!(rows.iter().all(|r| r["delta2"].as_f64().unwrap() > 0.0));
        assert!(discrepancy_curve_impl(1, 10, 1).is_err());
        assert!(discrepancy_curve_impl(10, 5000, 1).is_err());
    }
}
