//! Graphviz DOT export, plus plain-text dumps of strips and of the projection
//! mapping.
//!
//! Vertex ids in labels are 1-based, as in graph files.

use std::fmt::Write;

use crate::carcass::{Carcass, Projection, UnitKind};
use crate::graph::format_vertex_list;
use crate::skeleton::{NodeKind, Skeleton};
use crate::strip::Strip;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Terminals are double circles. Every edge leaves its tail from the south
/// port and enters its head at the north port, so the in-side and out-side of
/// each inherent partition sit on opposite faces of the node.
pub fn strip_dot(strip: &Strip) -> String {
    let mut out = String::from("digraph strip {\n  rankdir=TB;\n");
    for (x, class) in strip.classes.iter().enumerate() {
        let shape = if strip.is_terminal(x) { "doublecircle" } else { "circle" };
        let role = match x {
            crate::strip::SOURCE => "s: ",
            crate::strip::SINK => "t: ",
            _ => "",
        };
        let label = format!("{role}{}", format_vertex_list(class));
        writeln!(out, "  v{x} [shape={shape}, label={}];", quote(&label)).unwrap();
    }
    for e in &strip.edges {
        write!(out, "  v{} -> v{} [tailport=s, headport=n", e.tail, e.head).unwrap();
        if e.mult > 1 {
            write!(out, ", label=\"{}\"", e.mult).unwrap();
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

/// One line per strip vertex, then one line per arc.
///
/// ```text
/// class 0 source: 1
/// class 1 sink: 3
/// class 2: 2
/// arc 0 -> 2 mult=1
/// ```
pub fn strip_text(strip: &Strip) -> String {
    let mut out = String::new();
    for (x, class) in strip.classes.iter().enumerate() {
        let role = match x {
            crate::strip::SOURCE => " source",
            crate::strip::SINK => " sink",
            _ => "",
        };
        writeln!(out, "class {x}{role}: {}", format_vertex_list(class)).unwrap();
    }
    for e in &strip.edges {
        writeln!(out, "arc {} -> {} mult={}", e.tail, e.head, e.mult).unwrap();
    }
    out
}

/// Cycle edges are dashed and empty nodes are drawn as small points.
pub fn skeleton_dot(sk: &Skeleton, steiner: &[usize]) -> String {
    let mut out = String::from("graph skeleton {\n");
    for (x, node) in sk.nodes.iter().enumerate() {
        if node.steiner.is_empty() {
            let shape = if node.kind == NodeKind::Cycle { "point" } else { "circle, width=0.15, label=\"\"" };
            writeln!(out, "  n{x} [shape={shape}];").unwrap();
        } else {
            let label = format_vertex_list(&node.steiner.vertices(steiner));
            writeln!(out, "  n{x} [shape=box, label={}];", quote(&label)).unwrap();
        }
    }
    for (e, ed) in sk.edges.iter().enumerate() {
        let style = if ed.is_tree() { "solid" } else { "dashed" };
        writeln!(out, "  n{} -- n{} [style={style}, tooltip=\"e{e}\"];", ed.a, ed.b).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Units labelled by their vertices and shaped by kind.
pub fn flesh_dot(c: &Carcass) -> String {
    let mut out = String::from("graph flesh {\n");
    for (u, members) in c.flesh.units.iter().enumerate() {
        let style = match c.flesh.kind[u] {
            UnitKind::Steiner => "shape=box, style=bold",
            UnitKind::Terminal => "shape=ellipse, style=filled, fillcolor=lightgray",
            UnitKind::Stretched => "shape=diamond",
        };
        writeln!(out, "  u{u} [{style}, label={}];", quote(&format_vertex_list(members))).unwrap();
    }
    for e in c.flesh.quotient.edges() {
        write!(out, "  u{} -- u{}", e.u, e.v).unwrap();
        if e.mult > 1 {
            write!(out, " [label=\"{}\"]", e.mult).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// One line per unit: `u → x` for a node, `u → (a,b)` for a path.
pub fn projection_text(c: &Carcass) -> String {
    let mut out = String::new();
    for (u, p) in c.projection.units.iter().enumerate() {
        match p {
            Projection::Node(x) => writeln!(out, "{u} → {x}").unwrap(),
            Projection::Path(a, b) => writeln!(out, "{u} → ({a},{b})").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carcass::BuildOptions;
    use crate::fixtures;
    use crate::graph::load_graph;
    use crate::strip::build_strip;

    #[test]
    fn p3_exports() {
        let c = Carcass::build(load_graph(fixtures::P3).unwrap(), BuildOptions::default()).unwrap();
        assert_eq!(projection_text(&c), "0 → 0\n1 → (0,1)\n2 → 1\n");
        let sk = skeleton_dot(&c.skeleton, c.ctx.steiner());
        assert!(sk.contains("n0 -- n1 [style=solid"));
        let strip = build_strip(c.graph(), &[0], &[2]).unwrap();
        let d = strip_dot(&strip);
        assert_eq!(d.matches("doublecircle").count(), 2);
        assert_eq!(d.matches("->").count(), 2);
        assert_eq!(strip_text(&strip), "class 0 source: 1\nclass 1 sink: 3\nclass 2: 2\narc 0 -> 2 mult=1\narc 2 -> 1 mult=1\n");
        assert!(flesh_dot(&c).contains("shape=diamond"));
    }

    #[test]
    fn cycle_edges_are_dashed() {
        let c = Carcass::build(load_graph(fixtures::C4).unwrap(), BuildOptions::default()).unwrap();
        let d = skeleton_dot(&c.skeleton, c.ctx.steiner());
        assert_eq!(d.matches("dashed").count(), 4);
        assert_eq!(d.matches("shape=point").count(), 4);
    }
}
