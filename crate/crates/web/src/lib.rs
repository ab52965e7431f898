//! Browser bindings for the sumtree demo page.
//!
//! Each exported function returns a JSON string; failures come back as a JS
//! string error. The plain `*_json` functions hold the logic so they can be
//! tested natively.

mod svg;

use serde::Serialize;
use sumtree::construct::{build_with_budget, Alpha};
use sumtree::sumcolor::{solve, Count};
use sumtree::treebank::{coloring_sum, random_tree, tree_stats};
use sumtree::verify::{sequence_report, tree_strength_bound, SequenceRow};
use wasm_bindgen::prelude::*;

/// Largest tree the page will build and solve.
pub const DEMO_BUDGET: u64 = 20_000;
/// Largest tree the page will draw.
pub const RENDER_MAX: usize = 2_000;

#[derive(Serialize)]
struct ConstructionView {
    i: u32,
    j: u32,
    n: usize,
    sigma: u64,
    construction_sum: u64,
    strength: u64,
    count: Count,
    max_degree: usize,
    root_color: u64,
    svg: Option<String>,
}

#[derive(Serialize)]
struct SolveView {
    n: usize,
    seed: u64,
    sigma: u64,
    strength: u64,
    strength_bound: u64,
    count: Count,
    max_degree: usize,
    witness: Vec<u64>,
    svg: Option<String>,
}

#[derive(Serialize)]
struct RatioView {
    alpha: String,
    rows: Vec<SequenceRow>,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn construction_json(i: u32, j: u32) -> Result<String, String> {
    let (tree, coloring) = build_with_budget(i, j, DEMO_BUDGET).map_err(|e| e.to_string())?;
    let report = solve(&tree);
    let svg = (tree.len() <= RENDER_MAX).then(|| svg::render(&tree, &coloring));
    to_json(&ConstructionView {
        i,
        j,
        n: tree.len(),
        sigma: report.sigma,
        construction_sum: coloring_sum(&coloring),
        strength: report.strength,
        count: report.count,
        max_degree: tree_stats(&tree).max_degree,
        root_color: coloring.get(tree.root()),
        svg,
    })
}

pub fn random_json(n: usize, seed: u64) -> Result<String, String> {
    if n as u64 > DEMO_BUDGET {
        return Err(format!("n = {n} exceeds the demo limit of {DEMO_BUDGET}"));
    }
    let tree = random_tree(n, seed).map_err(|e| e.to_string())?;
    let report = solve(&tree);
    let max_degree = tree_stats(&tree).max_degree;
    let svg = (tree.len() <= RENDER_MAX).then(|| svg::render(&tree, &report.witness));
    to_json(&SolveView {
        n,
        seed,
        sigma: report.sigma,
        strength: report.strength,
        strength_bound: tree_strength_bound(max_degree as u64),
        count: report.count,
        max_degree,
        witness: report.witness.into_inner(),
        svg,
    })
}

pub fn ratio_json(alpha: &str, imax: u32) -> Result<String, String> {
    let a: Alpha = alpha.parse().map_err(|e: sumtree::Error| e.to_string())?;
    let rows = sequence_report(a, imax, DEMO_BUDGET).map_err(|e| e.to_string())?;
    to_json(&RatioView {
        alpha: a.to_string(),
        rows,
    })
}

#[wasm_bindgen]
pub fn construction(i: u32, j: u32) -> Result<String, JsValue> {
    construction_json(i, j).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_random(n: u32, seed: u32) -> Result<String, JsValue> {
    random_json(n as usize, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ratio_table(alpha: &str, imax: u32) -> Result<String, JsValue> {
    ratio_json(alpha, imax).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn construction_reports_the_built_coloring() {
        let v: Value = serde_json::from_str(&construction_json(3, 1).unwrap()).unwrap();
        assert_eq!(v["n"], 21);
        assert_eq!(v["sigma"], 29);
        assert_eq!(v["construction_sum"], 29);
        assert_eq!(v["strength"], 3);
        assert_eq!(v["count"]["value"], 1);
        assert!(v["svg"].as_str().unwrap().contains("<circle"));
    }

    #[test]
    fn large_constructions_are_refused() {
        assert!(construction_json(1, 6).unwrap_err().contains("limit"));
    }

    #[test]
    fn random_view_matches_solver() {
        let v: Value = serde_json::from_str(&random_json(12, 7).unwrap()).unwrap();
        let tree = random_tree(12, 7).unwrap();
        let r = solve(&tree);
        assert_eq!(v["sigma"], r.sigma);
        assert_eq!(v["witness"].as_array().unwrap().len(), 12);
        assert!(v["strength"].as_u64() <= v["strength_bound"].as_u64());
        assert!(random_json(0, 1).is_err());
    }

    #[test]
    fn ratio_rows_hit_the_target() {
        let v: Value = serde_json::from_str(&ratio_json("1/4", 4).unwrap()).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows
            .iter()
            .all(|r| r["ratio"] == "1/4" && r["pass"] == true));
        assert!(ratio_json("3/4", 4).is_err());
    }
}
