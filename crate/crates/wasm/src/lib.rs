//! Browser bindings. Every export takes plain strings and returns a JSON report.

use hyperturan::entropy::entropy_report;
use hyperturan::extremal::gen_turan;
use hyperturan::families::{gen_t, is_free};
use hyperturan::hgfile::{parse_hg, parse_weights, write_hg};
use hyperturan::lagrangian::{maximize, MaximizeConfig};
use hyperturan::steiner::{fano, sts9};
use hyperturan::{RGraph, TrianglePattern};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest vertex count the page accepts for the Lagrangian.
pub const DEMO_MAX_VERTICES: usize = 12;

fn named_graph(kind: &str, a: usize, b: usize) -> Result<RGraph, String> {
    match kind {
        "turan" => gen_turan(a, b),
        "t" => gen_t(a, b),
        "fano" => Ok(fano()),
        "sts9" => Ok(sts9()),
        other => return Err(format!("unknown generator `{other}`")),
    }
    .map_err(|e| e.to_string())
}

fn graph_value(g: &RGraph) -> Value {
    json!({ "n": g.n(), "r": g.r(), "edges": g.edge_tuples() })
}

/// Generates a named graph and scans it for a triangle pattern.
pub fn generate_report(kind: &str, a: usize, b: usize, pattern: &str) -> Result<String, String> {
    let g = named_graph(kind, a, b)?;
    let p = TrianglePattern::parse(pattern, g.r()).map_err(|e| e.to_string())?;
    let scan = is_free(&g, &p).map_err(|e| e.to_string())?;
    Ok(json!({
        "hg": write_hg(&g),
        "graph": graph_value(&g),
        "pattern": p.to_string(),
        "free": scan.free,
        "witness": scan.witness,
    })
    .to_string())
}

/// Maximizes the Lagrangian of a graph given in .hg text.
pub fn lagrangian_report(hg: &str, restarts: usize) -> Result<String, String> {
    let g = parse_hg(hg).map_err(|e| e.to_string())?;
    if g.n() > DEMO_MAX_VERTICES {
        return Err(format!(
            "the demo accepts at most {DEMO_MAX_VERTICES} vertices, got {}",
            g.n()
        ));
    }
    let cfg = MaximizeConfig {
        restarts,
        ..Default::default()
    };
    let res = maximize(&g, &cfg).map_err(|e| e.to_string())?;
    Ok(json!({ "graph": graph_value(&g), "tol": cfg.tol, "result": res }).to_string())
}

/// Entropies and the alpha vector of the ordered edge distribution.
pub fn entropy_json(hg: &str, weights: &str) -> Result<String, String> {
    let g = parse_hg(hg).map_err(|e| e.to_string())?;
    let x = parse_weights(weights).map_err(|e| e.to_string())?;
    if x.dim() != g.n() {
        return Err(format!("{} weights for {} vertices", x.dim(), g.n()));
    }
    let rep = entropy_report(&g, &x).map_err(|e| e.to_string())?;
    Ok(json!({ "graph": graph_value(&g), "log_base": 2, "report": rep }).to_string())
}

#[wasm_bindgen]
pub fn generate(kind: &str, a: usize, b: usize, pattern: &str) -> Result<String, JsValue> {
    generate_report(kind, a, b, pattern).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lagrangian(hg: &str, restarts: usize) -> Result<String, JsValue> {
    lagrangian_report(hg, restarts).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn entropy(hg: &str, weights: &str) -> Result<String, JsValue> {
    entropy_json(hg, weights).map_err(|e| JsValue::from_str(&e))
}
