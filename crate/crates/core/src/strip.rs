//! Strips: the quotient of a graph by all minimum `(S1,S2)`-cuts, oriented as
//! a single-source single-sink balanced DAG.
//!
//! Vertex numbering is canonical: the source is vertex 0, the sink vertex 1,
//! and non-terminals follow in order of their smallest graph vertex. Edges are
//! kept per graph edge (a graph edge of multiplicity `w` stands for `w`
//! parallel instances, all oriented the same way) and sorted by graph edge id.
//! Two strips over the same graph are therefore equal as values exactly when
//! they have the same classes and the same orientation.

use std::collections::{HashMap, VecDeque};

use crate::error::{breach, Error, Result};
use crate::graph::{contract_by_map, MultiGraph, VertexCut};
use crate::maxflow::{max_flow, FlowResult};

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StripEdge {
    /// Id of the graph edge this strip edge comes from.
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    /// Graph vertex to strip vertex.
    pub phi: Vec<usize>,
    /// Strip vertex to sorted graph vertices.
    pub classes: Vec<Vec<usize>>,
    pub edges: Vec<StripEdge>,
}

/// A strip with its orientation forgotten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripAnalogue {
    pub vertex_count: usize,
    pub source: usize,
    pub sink: usize,
    /// `(u, v, multiplicity)`.
    pub edges: Vec<(usize, usize, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Toward {
    Source,
    Sink,
}

/// Recovers the unique balanced orientation of a strip analogue.
///
/// Returns one flag per edge, `true` when the edge is oriented `u -> v`.
/// A vertex is released once half of its degree has been oriented inwards;
/// releasing it orients all its remaining edges outwards.
pub fn orient_undirected_analogue(a: &StripAnalogue) -> Result<Vec<bool>> {
    let k = a.vertex_count;
    if a.source >= k || a.sink >= k || a.source == a.sink {
        return Err(Error::NotBalanced("bad terminal ids".into()));
    }
    let mut incident = vec![Vec::new(); k];
    let mut degree = vec![0u64; k];
    for (i, &(u, v, w)) in a.edges.iter().enumerate() {
        if u >= k || v >= k || u == v {
            return Err(Error::NotBalanced(format!("edge {i} is malformed")));
        }
        incident[u].push(i);
        incident[v].push(i);
        degree[u] += w as u64;
        degree[v] += w as u64;
    }
    let terminal = |x: usize| x == a.source || x == a.sink;
    if let Some(x) = (0..k).find(|&x| !terminal(x) && degree[x] % 2 == 1) {
        return Err(Error::NotBalanced(format!("vertex {x} has odd degree {}", degree[x])));
    }

    let mut remaining = degree.clone();
    let mut done: Vec<Option<bool>> = vec![None; a.edges.len()];
    let mut queued = vec![false; k];
    let mut queue = VecDeque::from([a.source]);
    queued[a.source] = true;
    let mut oriented = 0;
    while let Some(w) = queue.pop_front() {
        let mut ready = Vec::new();
        for &i in &incident[w] {
            if done[i].is_some() {
                continue;
            }
            let (u, v, mult) = a.edges[i];
            let other = if u == w { v } else { u };
            done[i] = Some(u == w);
            oriented += 1;
            remaining[other] -= mult as u64;
            if terminal(other) || queued[other] {
                continue;
            }
            if remaining[other] * 2 < degree[other] {
                return Err(Error::NotBalanced(format!("vertex {other} receives more than half its degree")));
            }
            if remaining[other] * 2 == degree[other] {
                queued[other] = true;
                ready.push(other);
            }
        }
        ready.sort_unstable();
        queue.extend(ready);
    }
    if oriented != a.edges.len() {
        return Err(Error::NotBalanced("process stalled before all edges were oriented".into()));
    }
    Ok(done.into_iter().map(|d| d.expect("all oriented")).collect())
}

impl Strip {
    pub fn vertex_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_terminal(&self, x: usize) -> bool {
        x == SOURCE || x == SINK
    }

    /// Builds a strip from a labelling of graph vertices. Labels are arbitrary
    /// integers; `source_label` and `sink_label` mark the terminals. Edges
    /// between different labels are oriented by `orient`, which receives the
    /// canonical strip and the graph edge and returns `true` for `u -> v`;
    /// when `orient` is `None` the balanced orientation is recovered from the
    /// undirected analogue.
    pub fn assemble(
        g: &MultiGraph,
        labels: &[usize],
        source_label: usize,
        sink_label: usize,
        orient: Option<&dyn Fn(usize) -> bool>,
    ) -> Result<Strip> {
        let n = g.vertex_count();
        if source_label == sink_label {
            return Err(Error::OverlappingTerminals);
        }
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (v, &l) in labels.iter().enumerate().take(n) {
            first.entry(l).or_insert(v);
        }
        if !first.contains_key(&source_label) || !first.contains_key(&sink_label) {
            return Err(Error::TerminalPlacement("a terminal class is empty".into()));
        }
        let mut others: Vec<(usize, usize)> = first.iter().filter(|(l, _)| **l != source_label && **l != sink_label).map(|(&l, &v)| (v, l)).collect();
        others.sort_unstable();
        let mut id: HashMap<usize, usize> = HashMap::new();
        id.insert(source_label, SOURCE);
        id.insert(sink_label, SINK);
        for (i, (_, l)) in others.iter().enumerate() {
            id.insert(*l, i + 2);
        }
        let phi: Vec<usize> = labels.iter().map(|l| id[l]).collect();
        let mut classes = vec![Vec::new(); id.len()];
        for (v, &x) in phi.iter().enumerate() {
            classes[x].push(v);
        }
        let mut strip = Strip { phi, classes, edges: Vec::new() };
        let crossing: Vec<usize> = (0..g.edges().len()).filter(|&e| strip.phi[g.edge(e).u] != strip.phi[g.edge(e).v]).collect();
        let forward: Vec<bool> = match orient {
            Some(f) => crossing.iter().map(|&e| f(e)).collect(),
            None => {
                let analogue = StripAnalogue {
                    vertex_count: strip.vertex_count(),
                    source: SOURCE,
                    sink: SINK,
                    edges: crossing
                        .iter()
                        .map(|&e| {
                            let ed = g.edge(e);
                            (strip.phi[ed.u], strip.phi[ed.v], ed.mult)
                        })
                        .collect(),
                };
                orient_undirected_analogue(&analogue)?
            }
        };
        strip.edges = crossing
            .iter()
            .zip(forward)
            .map(|(&e, fwd)| {
                let ed = g.edge(e);
                let (a, b) = (strip.phi[ed.u], strip.phi[ed.v]);
                let (tail, head) = if fwd { (a, b) } else { (b, a) };
                StripEdge { edge: e, tail, head, mult: ed.mult }
            })
            .collect();
        Ok(strip)
    }

    /// Strip from a max flow between the terminal sets. The source class is
    /// the residual reach of `S1`, the sink class the residual co-reach of
    /// `S2`, and the remaining vertices are grouped into strongly connected
    /// components of the residual graph.
    pub fn from_flow(g: &MultiGraph, flow: &FlowResult) -> Result<Strip> {
        let n = g.vertex_count();
        if (0..n).any(|v| flow.source_side[v] && flow.sink_side[v]) {
            return breach("flow is not maximum: source and sink sides overlap");
        }
        let rest: Vec<bool> = (0..n).map(|v| !flow.source_side[v] && !flow.sink_side[v]).collect();
        let comp = residual_components(g, flow, &rest);
        // Labels: n for the source class, n + 1 for the sink, component roots otherwise.
        let labels: Vec<usize> = (0..n)
            .map(|v| {
                if flow.source_side[v] {
                    n
                } else if flow.sink_side[v] {
                    n + 1
                } else {
                    comp[v]
                }
            })
            .collect();
        for (e, ed) in g.edges().iter().enumerate() {
            if labels[ed.u] != labels[ed.v] && flow.flow[e].unsigned_abs() != ed.mult as u64 {
                return breach(format!("edge {e} joins two strip classes but is not saturated"));
            }
        }
        Strip::assemble(g, &labels, n, n + 1, Some(&|e| flow.flow[e] > 0))
    }

    pub fn analogue(&self) -> StripAnalogue {
        StripAnalogue {
            vertex_count: self.vertex_count(),
            source: SOURCE,
            sink: SINK,
            edges: self.edges.iter().map(|e| (e.tail, e.head, e.mult)).collect(),
        }
    }

    /// Quotient multigraph of the strip, ignoring orientation.
    pub fn quotient(&self, g: &MultiGraph) -> MultiGraph {
        contract_by_map(g, &self.phi, self.vertex_count())
    }

    pub fn in_degree(&self, x: usize) -> u64 {
        self.edges.iter().filter(|e| e.head == x).map(|e| e.mult as u64).sum()
    }

    pub fn out_degree(&self, x: usize) -> u64 {
        self.edges.iter().filter(|e| e.tail == x).map(|e| e.mult as u64).sum()
    }

    /// Graph edge ids entering and leaving a non-terminal.
    pub fn inherent_partition(&self, x: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if x >= self.vertex_count() {
            return Err(Error::InvalidArgument(format!("no strip vertex {x}")));
        }
        if self.is_terminal(x) {
            return Err(Error::IsTerminal(x));
        }
        let ins = self.edges.iter().filter(|e| e.head == x).map(|e| e.edge).collect();
        let outs = self.edges.iter().filter(|e| e.tail == x).map(|e| e.edge).collect();
        Ok((ins, outs))
    }

    /// Checks the balanced-DAG shape: a unique source and sink, balanced
    /// non-terminals and no directed cycle.
    pub fn check_balanced(&self) -> Result<()> {
        let k = self.vertex_count();
        for x in 0..k {
            let (i, o) = (self.in_degree(x), self.out_degree(x));
            match x {
                SOURCE if i != 0 => return breach("source has incoming edges"),
                SINK if o != 0 => return breach("sink has outgoing edges"),
                _ if !self.is_terminal(x) && (i != o || i == 0) => return breach(format!("non-terminal {x} has in-degree {i} and out-degree {o}")),
                _ => {}
            }
        }
        if self.out_degree(SOURCE) != self.in_degree(SINK) {
            return breach("out-degree of source differs from in-degree of sink");
        }
        let mut indeg = vec![0usize; k];
        for e in &self.edges {
            indeg[e.head] += 1;
        }
        let mut stack: Vec<usize> = (0..k).filter(|&x| indeg[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = stack.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.tail == x) {
                indeg[e.head] -= 1;
                if indeg[e.head] == 0 {
                    stack.push(e.head);
                }
            }
        }
        if seen != k {
            return breach("orientation has a directed cycle");
        }
        Ok(())
    }

    /// True iff no oriented edge enters `u`.
    pub fn is_transversal(&self, u: &[usize]) -> Result<bool> {
        let mut inside = vec![false; self.vertex_count()];
        for &x in u {
            if x >= inside.len() {
                return Err(Error::InvalidArgument(format!("no strip vertex {x}")));
            }
            inside[x] = true;
        }
        if !inside[SOURCE] || inside[SINK] {
            return Err(Error::TerminalPlacement("U must contain the source and not the sink".into()));
        }
        Ok(!self.edges.iter().any(|e| inside[e.head] && !inside[e.tail]))
    }

    /// `Φ⁻¹(U)` as a cut of the graph.
    pub fn preimage(&self, u: &[usize]) -> Result<VertexCut> {
        let mut inside = vec![false; self.vertex_count()];
        for &x in u {
            inside[x] = true;
        }
        VertexCut::from_mask(self.phi.iter().map(|&x| inside[x]).collect())
    }

    /// Vertices reachable from `x` along reversed edges (toward the source)
    /// or along edges (toward the sink), including `x`; sorted.
    pub fn reachability_cone(&self, x: usize, toward: Toward) -> Result<Vec<usize>> {
        if x >= self.vertex_count() {
            return Err(Error::InvalidArgument(format!("no strip vertex {x}")));
        }
        if self.is_terminal(x) {
            return Err(Error::IsTerminal(x));
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for e in &self.edges {
                let next = match toward {
                    Toward::Source if e.head == y => e.tail,
                    Toward::Sink if e.tail == y => e.head,
                    _ => continue,
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        Ok((0..seen.len()).filter(|&y| seen[y]).collect())
    }
}

/// Strongly connected components of the residual graph restricted to `rest`.
/// Returns, for each vertex in `rest`, the smallest vertex of its component.
fn residual_components(g: &MultiGraph, flow: &FlowResult, rest: &[bool]) -> Vec<usize> {
    let n = g.vertex_count();
    let arcs = |x: usize, reverse: bool| -> Vec<usize> {
        g.neighbors(x)
            .iter()
            .filter(|&&(y, e)| rest[y] && if reverse { flow.residual(g, e, y) > 0 } else { flow.residual(g, e, x) > 0 })
            .map(|&(y, _)| y)
            .collect()
    };
    // Kosaraju with explicit stacks.
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    for s in (0..n).filter(|&v| rest[v]) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, arcs(s, false), 0usize)];
        while let Some((x, out, i)) = stack.last_mut() {
            if *i < out.len() {
                let y = out[*i];
                *i += 1;
                if !seen[y] {
                    seen[y] = true;
                    let next = arcs(y, false);
                    stack.push((y, next, 0));
                }
            } else {
                order.push(*x);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in arcs(x, true) {
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        let root = *members.iter().min().expect("nonempty");
        for m in members {
            comp[m] = root;
        }
    }
    comp
}

/// Strip of all minimum `(S1,S2)`-cuts, built from one max flow.
pub fn build_strip(g: &MultiGraph, s1: &[usize], s2: &[usize]) -> Result<Strip> {
    let flow = max_flow(g, s1, s2)?;
    Strip::from_flow(g, &flow)
}
