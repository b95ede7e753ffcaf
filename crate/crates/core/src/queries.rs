//! Queries answered from the flesh, the skeleton and the projection alone.
//!
//! None of these functions calls max-flow.

use std::collections::BTreeSet;

use crate::carcass::{Carcass, Projection, UnitKind};
use crate::error::{breach, Error, Result};
use crate::graph::{contract_by_map, MultiGraph, VertexCut};
use crate::skeleton::{Cycle, EdgeKind, MinimalCut, NodeKind, SkEdge, SkNode, Skeleton};
use crate::strip::{Strip, Toward, SINK, SOURCE};
use crate::validcuts::SteinerSet;

/// Whether the proper path of a stretched unit uses one of the cut's edges.
fn path_crosses_cut(sk: &Skeleton, ends: (usize, usize), cut: MinimalCut) -> bool {
    sk.cut_edges(cut).into_iter().any(|e| sk.path_contains_edge(ends.0, ends.1, e))
}

/// Strip of the bunch of a minimal cut, assembled unit by unit and oriented
/// from the undirected analogue. The source holds the side returned by
/// [`Skeleton::cut_side`].
pub fn strip_for_minimal_cut(c: &Carcass, cut: MinimalCut) -> Result<Strip> {
    let sk = &c.skeleton;
    let n_units = c.flesh.unit_count();
    let (source, sink) = (n_units, n_units + 1);
    let unit_label: Vec<usize> = (0..n_units)
        .map(|u| match c.projection.units[u] {
            Projection::Node(x) => {
                if sk.node_on_cut_side(cut, x) {
                    source
                } else {
                    sink
                }
            }
            Projection::Path(a, b) => {
                if path_crosses_cut(sk, (a, b), cut) {
                    u
                } else if sk.node_on_cut_side(cut, a) {
                    source
                } else {
                    sink
                }
            }
        })
        .collect();
    let labels: Vec<usize> = c.flesh.phi.iter().map(|&u| unit_label[u]).collect();
    Strip::assemble(c.graph(), &labels, source, sink, None)
}

/// `ℋ_{s,t}`: the part of the skeleton between `φ(s)` and `φ(t)`, with every
/// hanging subcactus folded into the corridor node it hangs from.
#[derive(Debug, Clone)]
pub struct QuerySubcactus {
    pub skeleton: Skeleton,
    /// Original skeleton node to node of the subcactus.
    pub node_map: Vec<usize>,
    /// Subcactus node to the original nodes it contains.
    pub members: Vec<Vec<usize>>,
    /// Nodes holding `s` and `t`.
    pub anchors: (usize, usize),
    /// Original skeleton edges kept in the subcactus.
    pub corridor_edges: BTreeSet<usize>,
}

impl QuerySubcactus {
    /// Minimal cuts of the subcactus that separate the two anchors.
    pub fn minimal_cuts(&self) -> Vec<MinimalCut> {
        let (a, b) = self.anchors;
        self.skeleton
            .minimal_cuts()
            .into_iter()
            .filter(|&cut| self.skeleton.node_on_cut_side(cut, a) != self.skeleton.node_on_cut_side(cut, b))
            .collect()
    }
}

fn steiner_position(c: &Carcass, v: usize) -> Result<usize> {
    if v >= c.graph().vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v + 1, n: c.graph().vertex_count() });
    }
    c.ctx.steiner_index(v).ok_or(Error::NotSteiner(v + 1))
}

/// Builds `ℋ_{s,t}` for Steiner vertices `s` and `t` (0-based graph ids).
pub fn build_h_st(c: &Carcass, s: usize, t: usize) -> Result<QuerySubcactus> {
    let sk = &c.skeleton;
    let (si, ti) = (steiner_position(c, s)?, steiner_position(c, t)?);
    let (n1, n2) = (sk.phi[si], sk.phi[ti]);
    if n1 == n2 {
        return Err(Error::NotSeparated(s + 1, t + 1));
    }
    let tree = &sk.t;
    let (u, v) = (sk.f[n1], sk.f[n2]);
    let tpath = tree.path(u, v);
    let uv = tree.lca(u, v);

    // Corridor: tree nodes on the path and every node of a cycle on it.
    let mut corridor = BTreeSet::new();
    let mut corridor_edges = BTreeSet::new();
    for w in tpath.windows(2) {
        corridor_edges.insert(tree.edge_between(w[0], w[1]));
    }
    for &tv in &tpath {
        match sk.implant_of[tv] {
            Some(cy) => {
                corridor.extend(sk.cycles[cy].nodes.iter().copied());
                corridor_edges.extend(sk.cycles[cy].edges.iter().copied());
            }
            None => {
                corridor.insert((0..sk.node_count()).find(|&x| sk.f[x] == tv).expect("tree vertex has a node"));
            }
        }
    }
    let corridor: Vec<usize> = corridor.into_iter().collect();
    let mut new_id = vec![usize::MAX; sk.node_count()];
    for (i, &x) in corridor.iter().enumerate() {
        new_id[x] = i;
    }

    // Every node is absorbed by the corridor node its subcactus hangs from.
    let node_map: Vec<usize> = (0..sk.node_count())
        .map(|x| {
            let w = sk.f[x];
            let p = [tree.lca(u, w), tree.lca(v, w), uv].into_iter().max_by_key(|&y| tree.depth[y]).unwrap();
            let host = match sk.implant_of[p] {
                Some(cy) => sk.port(cy, x),
                None => (0..sk.node_count()).find(|&y| sk.f[y] == p).expect("tree vertex has a node"),
            };
            new_id[host]
        })
        .collect();
    let mut members = vec![Vec::new(); corridor.len()];
    let mut steiner = vec![SteinerSet::EMPTY; corridor.len()];
    for x in 0..sk.node_count() {
        members[node_map[x]].push(x);
        steiner[node_map[x]] = steiner[node_map[x]].union(sk.nodes[x].steiner);
    }
    let nodes: Vec<SkNode> = corridor.iter().enumerate().map(|(i, &x)| SkNode { steiner: steiner[i], kind: sk.nodes[x].kind }).collect();

    let mut edges = Vec::new();
    let mut edge_id = std::collections::HashMap::new();
    for &e in &corridor_edges {
        edge_id.insert(e, edges.len());
        let ed = sk.edges[e];
        edges.push(SkEdge { a: new_id[ed.a], b: new_id[ed.b], kind: ed.kind });
    }
    let mut cycle_id = std::collections::HashMap::new();
    let mut cycles = Vec::new();
    for &tv in &tpath {
        if let Some(cy) = sk.implant_of[tv] {
            cycle_id.insert(cy, cycles.len());
            let orig = &sk.cycles[cy];
            cycles.push(Cycle { nodes: orig.nodes.iter().map(|&x| new_id[x]).collect(), edges: orig.edges.iter().map(|e| edge_id[e]).collect() });
        }
    }
    for ed in &mut edges {
        if let EdgeKind::Cycle(cy) = ed.kind {
            ed.kind = EdgeKind::Cycle(cycle_id[&cy]);
        }
    }
    let phi = sk.phi.iter().map(|&x| node_map[x]).collect();
    let sub = Skeleton::from_parts(nodes, edges, cycles, phi, sk.steiner_count)?;
    Ok(QuerySubcactus { skeleton: sub, node_map, members, anchors: (new_id[n1], new_id[n2]), corridor_edges })
}

/// The `(s,t)`-strip assembled from `ℋ_{s,t}`: units projected away from the
/// corridor collapse into the corridor node they hang from, units whose
/// projection runs along the corridor stay on their own.
pub fn build_dst(c: &Carcass, s: usize, t: usize) -> Result<(QuerySubcactus, Strip)> {
    let h = build_h_st(c, s, t)?;
    let sk = &c.skeleton;
    let n_units = c.flesh.unit_count();
    let unit_label: Vec<usize> = (0..n_units)
        .map(|u| match c.projection.units[u] {
            Projection::Node(x) => n_units + h.node_map[x],
            Projection::Path(a, b) => {
                let uses_corridor = match sk.proper_path(a, b) {
                    Some(p) => p.iter().any(|e| h.corridor_edges.contains(e)),
                    None => false,
                };
                if uses_corridor {
                    u
                } else {
                    n_units + h.node_map[a]
                }
            }
        })
        .collect();
    let labels: Vec<usize> = c.flesh.phi.iter().map(|&u| unit_label[u]).collect();
    let strip = Strip::assemble(c.graph(), &labels, n_units + h.anchors.0, n_units + h.anchors.1, None)?;
    Ok((h, strip))
}

/// A reported S-mincut and its capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportedCut {
    pub cut: VertexCut,
    pub capacity: u64,
}

impl ReportedCut {
    /// `"cut inside: 1,2 capacity: 1"` with 1-based ids.
    pub fn render(&self) -> String {
        format!("cut inside: {} capacity: {}", crate::graph::format_vertex_list(&self.cut.inside()), self.capacity)
    }
}

fn lexicographically_smallest(candidates: Vec<VertexCut>) -> Option<VertexCut> {
    candidates.into_iter().min_by(|a, b| a.inside().cmp(&b.inside()))
}

/// An S-mincut separating two units, or `None` when they coincide.
pub fn report_separating_mincut(c: &Carcass, x: usize, y: usize) -> Result<Option<ReportedCut>> {
    let nu = c.flesh.unit_count();
    if x >= nu || y >= nu {
        return Err(Error::InvalidArgument(format!("unit id out of range 0..{nu}")));
    }
    if x == y {
        return Ok(None);
    }
    let sk = &c.skeleton;
    let kinds = (c.flesh.kind[x], c.flesh.kind[y]);
    let (x, y) = if kinds.0 != UnitKind::Stretched && kinds.1 == UnitKind::Stretched { (y, x) } else { (x, y) };
    let (rx, ry) = (c.flesh.units[x][0], c.flesh.units[y][0]);

    let cut = match c.projection.units[x] {
        Projection::Path(a, b) => {
            let first = sk.proper_path(a, b).and_then(|p| p.first().copied());
            let Some(e) = first else { return breach("stretched unit without a projection path") };
            let strip = c.tree_strips[e].as_ref().expect("tree edge");
            let (px, py) = (strip.phi[rx], strip.phi[ry]);
            match py {
                SOURCE => strip.preimage(&[SOURCE])?,
                SINK => strip.preimage(&(0..strip.vertex_count()).filter(|&z| z != SINK).collect::<Vec<_>>())?,
                _ if py == px => return breach("two units share a non-terminal of a distinguishing strip"),
                _ => {
                    let cone_x = strip.reachability_cone(px, Toward::Source)?;
                    let cone_y = strip.reachability_cone(py, Toward::Source)?;
                    let mut cands = Vec::new();
                    if !cone_x.contains(&py) {
                        cands.push(strip.preimage(&cone_x)?);
                    }
                    if !cone_y.contains(&px) {
                        cands.push(strip.preimage(&cone_y)?);
                    }
                    match lexicographically_smallest(cands) {
                        Some(cut) => cut,
                        None => return breach("both reachability cones contain the other unit"),
                    }
                }
            }
        }
        Projection::Node(nx) => {
            let Projection::Node(ny) = c.projection.units[y] else { unreachable!("stretched unit is x") };
            if nx == ny {
                return breach("two terminal units share a skeleton node");
            }
            let next = sk.t.step_toward(sk.f[nx], sk.f[ny]).expect("distinct compressed vertices");
            let e = sk.t.edge_between(sk.f[nx], next);
            let strip = c.tree_strips[e].as_ref().expect("tree edge");
            let rest: Vec<usize> = (0..strip.vertex_count()).filter(|&z| z != SINK).collect();
            lexicographically_smallest(vec![strip.preimage(&[SOURCE])?, strip.preimage(&rest)?]).expect("two candidates")
        }
    };
    let capacity = c.graph().boundary(cut.mask());
    Ok(Some(ReportedCut { cut, capacity }))
}

/// S-mincut separating the endpoints of a graph edge, or `None` when they share a unit.
pub fn report_edge_separating_mincut(c: &Carcass, edge: usize) -> Result<Option<ReportedCut>> {
    if edge >= c.graph().edges().len() {
        return Err(Error::InvalidArgument(format!("no edge {edge}")));
    }
    let e = c.graph().edge(edge);
    report_separating_mincut(c, c.flesh.phi[e.u], c.flesh.phi[e.v])
}

/// Same as [`report_separating_mincut`] for two graph vertices.
pub fn report_vertex_separating_mincut(c: &Carcass, u: usize, v: usize) -> Result<Option<ReportedCut>> {
    let n = c.graph().vertex_count();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x + 1, n });
        }
    }
    report_separating_mincut(c, c.flesh.phi[u], c.flesh.phi[v])
}

/// Quotient of the flesh around one skeleton cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingGraph {
    pub cycle: usize,
    /// Number of cycle nodes; ring vertices `0..ring_size` are the cycle
    /// positions, later ids are surviving stretched units.
    pub ring_size: usize,
    /// Ring vertex of each unit.
    pub vertex_of_unit: Vec<usize>,
    /// Surviving units with the cycle edge position they project to.
    pub survivors: Vec<(usize, usize)>,
    pub graph: MultiGraph,
}

pub fn ring_view(c: &Carcass, cycle: usize) -> Result<RingGraph> {
    let sk = &c.skeleton;
    let cyc = sk.cycles.get(cycle).ok_or(Error::NoSuchCycle(cycle))?;
    let k = cyc.len();
    let pos = |x: usize| sk.cycle_position(sk.port(cycle, x)).expect("port is on the cycle").1;
    let mut survivors = Vec::new();
    let mut vertex_of_unit = Vec::with_capacity(c.flesh.unit_count());
    for u in 0..c.flesh.unit_count() {
        let v = match c.projection.units[u] {
            Projection::Node(x) => pos(x),
            Projection::Path(a, b) => {
                let on_cycle = sk
                    .proper_path(a, b)
                    .unwrap_or_default()
                    .into_iter()
                    .find_map(|e| (sk.edges[e].kind == EdgeKind::Cycle(cycle)).then(|| cyc.edges.iter().position(|&f| f == e).unwrap()));
                match on_cycle {
                    Some(p) => {
                        survivors.push((u, p));
                        k + survivors.len() - 1
                    }
                    None => pos(a),
                }
            }
        };
        vertex_of_unit.push(v);
    }
    let map: Vec<usize> = c.flesh.phi.iter().map(|&u| vertex_of_unit[u]).collect();
    let graph = contract_by_map(c.graph(), &map, k + survivors.len());

    let edge_of = |v: usize| (v >= k).then(|| survivors[v - k].1);
    for e in graph.edges() {
        match (edge_of(e.u), edge_of(e.v)) {
            (None, None) => {
                let d = e.u.abs_diff(e.v);
                if d != 1 && d != k - 1 {
                    return breach(format!("ring vertices {} and {} are adjacent across the cycle", e.u, e.v));
                }
            }
            (Some(p), Some(q)) if p != q => return breach("adjacent units lie on different cycle edges"),
            (Some(p), None) | (None, Some(p)) => {
                let node = if e.u < k { e.u } else { e.v };
                if node != p && node != (p + 1) % k {
                    return breach("unit is adjacent to a cycle vertex away from its edge");
                }
            }
            _ => {}
        }
    }
    Ok(RingGraph { cycle, ring_size: k, vertex_of_unit, survivors, graph })
}

/// Kind name of each node of a skeleton, for display.
pub fn node_kind_name(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Tree => "tree",
        NodeKind::Cycle => "cycle",
    }
}
