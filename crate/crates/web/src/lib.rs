//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function takes and returns strings; results are JSON.
//! The `*_impl` functions hold the logic so it can be tested natively.

pub mod layout;

use std::collections::BTreeSet;

use aoaforge::{
    convert_text, emit_table, generate_random_table, parse_schedule_table, render_aoa_dot, schedule, AoaDocument,
    AugmentPolicy, ConvertOptions,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct ConvertView {
    network: AoaDocument,
    makespan: u64,
    critical_path: Vec<String>,
    dummies: Vec<DummyView>,
    svg: String,
    dot: String,
}

#[derive(Serialize)]
struct DummyView {
    id: String,
    replaces: Vec<String>,
}

#[derive(Serialize)]
struct LevelView {
    level: u32,
    activities: Vec<String>,
}

pub fn convert_impl(table: &str) -> Result<String, String> {
    let conv = convert_text(table, &ConvertOptions::default()).map_err(|e| e.to_string())?;
    let cpm = schedule(&conv.aoa).map_err(|e| e.to_string())?;
    let critical_path: Vec<String> = cpm.critical_activities(&conv.aoa).iter().map(|c| c.to_string()).collect();
    let marked: BTreeSet<String> = cpm.critical.iter().map(|c| c.to_string()).collect();
    let dummies = conv
        .dummies()
        .iter()
        .map(|d| DummyView {
            id: d.id.to_string(),
            replaces: d.replaced_bars.iter().map(|(t, h)| format!("{t}→{h}")).collect(),
        })
        .collect();
    let view = ConvertView {
        svg: layout::render_svg(&conv.aoa, &marked),
        dot: render_aoa_dot(&conv.aoa),
        makespan: cpm.makespan,
        network: AoaDocument::new(&conv.aoa).with_stats(conv.stats).with_cpm(cpm),
        critical_path,
        dummies,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn random_table_impl(nodes: u32, density: f64, seed: u32) -> Result<String, String> {
    generate_random_table(nodes as usize, density, seed.into()).map(|t| emit_table(&t)).map_err(|e| e.to_string())
}

pub fn levels_impl(table: &str) -> Result<String, String> {
    let t = parse_schedule_table(table).map_err(|e| e.to_string())?;
    let g = aoaforge::build_aon(&t, AugmentPolicy::Auto).map_err(|e| e.to_string())?;
    let view: Vec<LevelView> = g
        .topological_levels()
        .groups()
        .into_iter()
        .map(|(level, ids)| LevelView { level, activities: ids.iter().map(|i| i.to_string()).collect() })
        .collect();
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

/// Converts a CSV table; returns the network, schedule and an SVG drawing.
#[wasm_bindgen]
pub fn convert(table: &str) -> Result<String, JsError> {
    convert_impl(table).map_err(|e| JsError::new(&e))
}

/// A random table as CSV.
#[wasm_bindgen]
pub fn random_table(nodes: u32, density: f64, seed: u32) -> Result<String, JsError> {
    random_table_impl(nodes, density, seed).map_err(|e| JsError::new(&e))
}

/// Topological levels of the table's precedence graph.
#[wasm_bindgen]
pub fn levels(table: &str) -> Result<String, JsError> {
    levels_impl(table).map_err(|e| JsError::new(&e))
}
