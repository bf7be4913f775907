//! Browser bindings: count tables, bound surfaces and double-chain
//! constructions, each returned as a JSON string.

use ncforest::bounds::construction::{build_from_data, enumerate_inputs, Variant};
use ncforest::bounds::lower::{base, lb_forests_exponent, lb_noiso_exponent, lb_trees_exponent};
use ncforest::bounds::BoundConstants;
use ncforest::classes::{Catalog, GraphClass};
use ncforest::geometry::make_double_chain;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_N: usize = 150;

/// `{"class": .., "counts": ["1", ...]}` for `n = from..=to`.
pub fn counts_json(class: &str, from: usize, to: usize) -> Result<String, String> {
    let class: GraphClass = class.parse().map_err(|e| format!("{e}"))?;
    if from > to || to > MAX_N {
        return Err(format!("range must satisfy from <= to <= {MAX_N}"));
    }
    let catalog = Catalog::new(to.max(12));
    let counts = catalog.counts(class, from..=to).map_err(|e| e.to_string())?;
    let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    Ok(json!({ "class": class.tag(), "from": from, "counts": counts }).to_string())
}

/// Lower-bound exponent and base at one parameter point, with the printed
/// constants. `gamma` is ignored except for `lb-forests`.
pub fn bound_point_json(kind: &str, alpha: f64, beta: f64, gamma: f64) -> Result<String, String> {
    let c = BoundConstants::printed();
    let e = match kind {
        "lb-trees" => lb_trees_exponent(alpha, beta, &c),
        "lb-forests" => lb_forests_exponent(alpha, beta, gamma, &c),
        "lb-noiso" => lb_noiso_exponent(alpha, beta, &c),
        _ => return Err(format!("unknown bound {kind:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({ "bound": kind, "exponent": e, "base": base(e) }).to_string())
}

/// Input number `index` (modulo the number of inputs) of a construction on
/// a double chain with `n <= 3` points per chain, and the graph it builds.
pub fn construction_json(variant: &str, n: usize, index: usize) -> Result<String, String> {
    let variant = Variant::ALL
        .into_iter()
        .find(|v| v.name() == variant)
        .ok_or_else(|| format!("unknown variant {variant:?}"))?;
    if !(1..=3).contains(&n) {
        return Err("n must be 1, 2 or 3".into());
    }
    let inputs = enumerate_inputs(variant, n, 2).map_err(|e| e.to_string())?;
    if inputs.is_empty() {
        return Err("no inputs for this size".into());
    }
    let input = &inputs[index % inputs.len()];
    let g = build_from_data(input).map_err(|e| e.to_string())?;
    let ps = make_double_chain(n).map_err(|e| e.to_string())?;
    let edges: Vec<[usize; 2]> = g.edges().map(|(a, b)| [a, b]).collect();
    Ok(json!({
        "n": n,
        "index": index % inputs.len(),
        "inputs": inputs.len(),
        "points": ps.points(),
        "input": input.to_json(),
        "canonical": input.is_canonical(),
        "edges": edges,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn counts(class: &str, from: usize, to: usize) -> Result<String, JsError> {
    counts_json(class, from, to).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_point(kind: &str, alpha: f64, beta: f64, gamma: f64) -> Result<String, JsError> {
    bound_point_json(kind, alpha, beta, gamma).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construction(variant: &str, n: usize, index: usize) -> Result<String, JsError> {
    construction_json(variant, n, index).map_err(|e| JsError::new(&e))
}
