//! Browser demo for the carcass library.
//!
//! The three operations are plain functions from graph text to JSON, so they
//! can be tested natively; the `#[wasm_bindgen]` exports at the bottom only
//! convert errors to JS strings. Vertex ids are 1-based throughout.

pub mod svg;

use carcass::carcass::{BuildOptions, Carcass, Projection};
use carcass::dot;
use carcass::graph::load_graph;
use carcass::queries;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize, Debug)]
pub struct Unit {
    pub id: usize,
    pub kind: &'static str,
    pub vertices: Vec<usize>,
    /// Skeleton node, or the two ends of the skeleton path.
    pub projection: Vec<usize>,
}

#[derive(Serialize, Debug)]
pub struct MinimalCutView {
    pub id: usize,
    pub skeleton_edges: Vec<usize>,
    pub steiner_side: Vec<usize>,
}

#[derive(Serialize, Debug)]
pub struct Analysis {
    pub lambda: u64,
    pub steiner: Vec<usize>,
    pub vertex_count: usize,
    pub units: Vec<Unit>,
    pub skeleton_nodes: usize,
    pub skeleton_edges: usize,
    pub minimal_cuts: Vec<MinimalCutView>,
    pub flow_calls: u64,
    pub graph_svg: String,
    pub skeleton_svg: String,
}

#[derive(Serialize, Debug)]
pub struct Separation {
    pub inside: Vec<usize>,
    pub capacity: u64,
    pub text: String,
    pub graph_svg: String,
}

#[derive(Serialize, Debug)]
pub struct StripView {
    pub text: String,
    pub dot: String,
    pub svg: String,
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn load(text: &str) -> Result<Carcass, String> {
    let ctx = load_graph(text).map_err(|e| e.to_string())?;
    Carcass::build(ctx, BuildOptions::default()).map_err(|e| e.to_string())
}

fn vertex(c: &Carcass, v: usize) -> Result<usize, String> {
    let n = c.graph().vertex_count();
    if v == 0 || v > n {
        return Err(format!("vertex {v} out of range 1..={n}"));
    }
    Ok(v - 1)
}

pub fn analyze(text: &str) -> Result<Analysis, String> {
    let c = load(text)?;
    let steiner = c.ctx.steiner();
    let sk = &c.skeleton;
    let units = c
        .flesh
        .units
        .iter()
        .enumerate()
        .map(|(id, members)| Unit {
            id,
            kind: c.flesh.kind[id].name(),
            vertices: one_based(members),
            projection: match c.projection.units[id] {
                Projection::Node(x) => vec![x],
                Projection::Path(a, b) => vec![a, b],
            },
        })
        .collect();
    let minimal_cuts = sk
        .minimal_cuts()
        .into_iter()
        .enumerate()
        .map(|(id, cut)| MinimalCutView { id, skeleton_edges: sk.cut_edges(cut), steiner_side: one_based(&sk.cut_side(cut).vertices(steiner)) })
        .collect();
    Ok(Analysis {
        lambda: c.lambda(),
        steiner: one_based(steiner),
        vertex_count: c.graph().vertex_count(),
        units,
        skeleton_nodes: sk.node_count(),
        skeleton_edges: sk.edges.len(),
        minimal_cuts,
        flow_calls: c.flow_calls,
        graph_svg: svg::graph_svg(c.graph(), steiner, None),
        skeleton_svg: svg::skeleton_svg(sk, steiner),
    })
}

pub fn separate(text: &str, u: usize, v: usize) -> Result<Separation, String> {
    let c = load(text)?;
    let (x, y) = (vertex(&c, u)?, vertex(&c, v)?);
    let found = queries::report_vertex_separating_mincut(&c, x, y).map_err(|e| e.to_string())?;
    let reported = found.ok_or_else(|| format!("no Steiner mincut separates {u} and {v}"))?;
    let n = c.graph().vertex_count();
    let side: Vec<bool> = (0..n).map(|w| reported.cut.contains(w)).collect();
    Ok(Separation {
        inside: one_based(&reported.cut.inside()),
        capacity: reported.capacity,
        text: reported.render(),
        graph_svg: svg::graph_svg(c.graph(), c.ctx.steiner(), Some(&side)),
    })
}

pub fn st_strip(text: &str, s: usize, t: usize) -> Result<StripView, String> {
    let c = load(text)?;
    let (x, y) = (vertex(&c, s)?, vertex(&c, t)?);
    let (_, strip) = queries::build_dst(&c, x, y).map_err(|e| e.to_string())?;
    Ok(StripView { text: dot::strip_text(&strip), dot: dot::strip_dot(&strip), svg: svg::strip_svg(&strip) })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    let value = r.map_err(|e| JsValue::from_str(&e))?;
    serde_json::to_string(&value).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Builds the carcass and returns its description as JSON.
#[wasm_bindgen(js_name = analyzeGraph)]
pub fn analyze_graph(text: &str) -> Result<String, JsValue> {
    to_js(analyze(text))
}

/// Reports one Steiner mincut separating vertices `u` and `v`.
#[wasm_bindgen(js_name = separatingMincut)]
pub fn separating_mincut(text: &str, u: usize, v: usize) -> Result<String, JsValue> {
    to_js(separate(text, u, v))
}

/// The strip of all s-t mincuts for two Steiner vertices.
#[wasm_bindgen(js_name = stStrip)]
pub fn st_strip_js(text: &str, s: usize, t: usize) -> Result<String, JsValue> {
    to_js(st_strip(text, s, t))
}
