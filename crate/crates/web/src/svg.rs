//! Small hand-rolled SVG drawings. No layout engine: graphs and skeletons go on
//! a circle, strips are layered by longest path from the source.

use std::fmt::Write;

use carcass::graph::{format_vertex_list, MultiGraph};
use carcass::skeleton::Skeleton;
use carcass::strip::{Strip, SINK, SOURCE};

const SIZE: f64 = 360.0;
const RADIUS: f64 = 140.0;

fn on_circle(i: usize, n: usize) -> (f64, f64) {
    let angle = std::f64::consts::TAU * i as f64 / n.max(1) as f64 - std::f64::consts::FRAC_PI_2;
    (SIZE / 2.0 + RADIUS * angle.cos(), SIZE / 2.0 + RADIUS * angle.sin())
}

fn open(out: &mut String, w: f64, h: f64) {
    write!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#)
        .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The input graph. `inside` marks one side of a cut: those vertices are
/// filled and edges crossing the cut are drawn thick and red. Steiner vertices
/// get a double ring.
pub fn graph_svg(g: &MultiGraph, steiner: &[usize], inside: Option<&[bool]>) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    open(&mut out, SIZE, SIZE);
    for e in g.edges() {
        let ((x1, y1), (x2, y2)) = (on_circle(e.u, n), on_circle(e.v, n));
        let crossing = inside.is_some_and(|s| s[e.u] != s[e.v]);
        let (stroke, width) = if crossing { ("#c0392b", 2.0 + e.mult as f64) } else { ("#555", e.mult as f64) };
        write!(out, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{stroke}" stroke-width="{width}"/>"#).unwrap();
        if e.mult > 1 {
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            write!(out, r#"<text x="{mx:.1}" y="{my:.1}" fill="{stroke}">×{}</text>"#, e.mult).unwrap();
        }
    }
    for v in 0..n {
        let (x, y) = on_circle(v, n);
        let fill = if inside.is_some_and(|s| s[v]) { "#f5cba7" } else { "#fff" };
        if steiner.contains(&v) {
            write!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="17" fill="none" stroke="#333"/>"##).unwrap();
        }
        write!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="13" fill="{fill}" stroke="#333"/>"##).unwrap();
        write!(out, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, y + 4.0, v + 1).unwrap();
    }
    out.push_str("</svg>");
    out
}

/// Skeleton nodes on a circle, labelled with their Steiner vertices; cycle
/// edges dashed.
pub fn skeleton_svg(sk: &Skeleton, steiner: &[usize]) -> String {
    let n = sk.node_count();
    let mut out = String::new();
    open(&mut out, SIZE, SIZE);
    for ed in &sk.edges {
        let ((x1, y1), (x2, y2)) = (on_circle(ed.a, n), on_circle(ed.b, n));
        let dash = if ed.is_tree() { "" } else { r#" stroke-dasharray="5,4""# };
        write!(out, r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="#2c3e50"{dash}/>"##).unwrap();
    }
    for (x, node) in sk.nodes.iter().enumerate() {
        let (cx, cy) = on_circle(x, n);
        if node.steiner.is_empty() {
            write!(out, r##"<circle cx="{cx:.1}" cy="{cy:.1}" r="4" fill="#2c3e50"/>"##).unwrap();
        } else {
            let label = escape(&format_vertex_list(&node.steiner.vertices(steiner)));
            let w = 14.0 + 7.0 * label.len() as f64;
            write!(
                out,
                r##"<rect x="{:.1}" y="{:.1}" width="{w:.1}" height="22" rx="4" fill="#d6eaf8" stroke="#2c3e50"/>"##,
                cx - w / 2.0,
                cy - 11.0
            )
            .unwrap();
            write!(out, r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#, cy + 4.0).unwrap();
        }
    }
    out.push_str("</svg>");
    out
}

/// Strip vertex layers: source on layer 0, every other vertex one below its
/// deepest in-neighbour, sink pushed to the bottom.
fn layers(strip: &Strip) -> Vec<usize> {
    let k = strip.vertex_count();
    let mut layer = vec![0usize; k];
    // Longest path in a DAG by relaxation; k rounds suffice.
    for _ in 0..k {
        let mut changed = false;
        for e in &strip.edges {
            if layer[e.head] < layer[e.tail] + 1 {
                layer[e.head] = layer[e.tail] + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let bottom = layer.iter().copied().max().unwrap_or(0).max(1);
    layer[SINK] = bottom;
    layer[SOURCE] = 0;
    layer
}

/// Layered drawing of a strip, arcs pointing downward from source to sink.
pub fn strip_svg(strip: &Strip) -> String {
    let k = strip.vertex_count();
    let layer = layers(strip);
    let depth = layer.iter().copied().max().unwrap_or(1);
    let mut slot = vec![0usize; k];
    let mut width_of = vec![0usize; depth + 1];
    for x in 0..k {
        slot[x] = width_of[layer[x]];
        width_of[layer[x]] += 1;
    }
    let height = 70.0 * depth as f64 + 60.0;
    let pos = |x: usize| {
        let row = width_of[layer[x]] as f64;
        (SIZE * (slot[x] as f64 + 0.5) / row, 30.0 + 70.0 * layer[x] as f64)
    };
    let mut out = String::new();
    open(&mut out, SIZE, height);
    out.push_str(r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0L10,5L0,10z" fill="#555"/></marker></defs>"##);
    for e in &strip.edges {
        let ((x1, y1), (x2, y2)) = (pos(e.tail), pos(e.head));
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let (ex, ey) = (x2 - dx / len * 16.0, y2 - dy / len * 16.0);
        write!(
            out,
            r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{ex:.1}" y2="{ey:.1}" stroke="#555" stroke-width="{}" marker-end="url(#arrow)"/>"##,
            e.mult
        )
        .unwrap();
    }
    for x in 0..k {
        let (cx, cy) = pos(x);
        let label = escape(&format_vertex_list(&strip.classes[x]));
        let fill = match x {
            SOURCE => "#abebc6",
            SINK => "#f5b7b1",
            _ => "#fff",
        };
        let w = 20.0 + 7.0 * label.len() as f64;
        write!(out, r##"<rect x="{:.1}" y="{:.1}" width="{w:.1}" height="24" rx="12" fill="{fill}" stroke="#333"/>"##, cx - w / 2.0, cy - 12.0)
            .unwrap();
        write!(out, r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#, cy + 4.0).unwrap();
    }
    out.push_str("</svg>");
    out
}
