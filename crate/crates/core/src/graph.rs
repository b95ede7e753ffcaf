//! Multigraphs, vertex cuts, quotients and the text graph format.
//!
//! Vertex ids are 0-based everywhere in the library. The text format uses
//! 1-based ids; [`load_graph`] subtracts one and [`format_vertex`] adds it back.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// One line of the edge list: an undirected edge with integer multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph whose parallel edges are folded into weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    /// Builds a graph; rejects self-loops, zero multiplicities and out-of-range ids.
    /// Connectivity is not required here.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if e.u == e.v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {}", e.u + 1)));
            }
            if e.mult == 0 {
                return Err(Error::InvalidArgument("edge multiplicity must be positive".into()));
            }
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(MultiGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// `(neighbour, edge id)` pairs sorted by neighbour id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.mult as u64).sum()
    }

    /// Weighted degree.
    pub fn degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|&(_, e)| self.edges[e].mult as u64).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Capacity of the cut whose inside is given by the membership vector.
    pub fn boundary(&self, inside: &[bool]) -> u64 {
        self.edges.iter().filter(|e| inside[e.u] != inside[e.v]).map(|e| e.mult as u64).sum()
    }
}

/// An ordered cut `(A, V \ A)` with both sides nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCut {
    inside: Vec<bool>,
}

impl VertexCut {
    pub fn new(n: usize, inside: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; n];
        for v in inside {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v + 1, n });
            }
            mask[v] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(inside: Vec<bool>) -> Result<Self> {
        let k = inside.iter().filter(|&&b| b).count();
        if k == 0 || k == inside.len() {
            return Err(Error::InvalidCut("a cut side is empty".into()));
        }
        Ok(VertexCut { inside })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.inside[v]
    }

    pub fn mask(&self) -> &[bool] {
        &self.inside
    }

    pub fn vertex_count(&self) -> usize {
        self.inside.len()
    }

    /// Sorted inside vertices.
    pub fn inside(&self) -> Vec<usize> {
        (0..self.inside.len()).filter(|&v| self.inside[v]).collect()
    }

    pub fn complement(&self) -> VertexCut {
        VertexCut { inside: self.inside.iter().map(|b| !b).collect() }
    }

    /// True when both cuts describe the same unordered bipartition.
    pub fn same_partition(&self, other: &VertexCut) -> bool {
        self.inside == other.inside || self.inside.iter().zip(&other.inside).all(|(a, b)| a != b)
    }

    /// Orientation with vertex 0 inside.
    pub fn normalized(&self) -> VertexCut {
        if self.inside[0] {
            self.clone()
        } else {
            self.complement()
        }
    }

    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.inside[a] != self.inside[b]
    }
}

impl fmt::Display for VertexCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", format_vertex_list(&self.inside()))
    }
}

/// `c(A)`: multiplicity-weighted number of edges with exactly one endpoint in `A`.
pub fn cut_capacity(g: &MultiGraph, cut: &VertexCut) -> Result<u64> {
    if cut.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidCut(format!("cut over {} vertices used on a graph with {}", cut.vertex_count(), g.vertex_count())));
    }
    Ok(g.boundary(cut.mask()))
}

/// Graph together with its Steiner set and, once computed, `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerContext {
    pub graph: MultiGraph,
    steiner: Vec<usize>,
    steiner_index: Vec<Option<usize>>,
    pub lambda: Option<u64>,
}

impl SteinerContext {
    pub fn new(graph: MultiGraph, steiner: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = graph.vertex_count();
        let mut s: Vec<usize> = steiner.into_iter().collect();
        for &x in &s {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x + 1, n });
            }
        }
        s.sort_unstable();
        let before = s.len();
        s.dedup();
        if s.len() != before {
            return Err(Error::InvalidArgument("duplicate Steiner vertex".into()));
        }
        if s.len() < 2 {
            return Err(Error::SteinerTooSmall(s.len()));
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut steiner_index = vec![None; n];
        for (i, &x) in s.iter().enumerate() {
            steiner_index[x] = Some(i);
        }
        Ok(SteinerContext { graph, steiner: s, steiner_index, lambda: None })
    }

    /// Steiner vertices in increasing id order; position in this slice is the
    /// bit index used by [`crate::validcuts::SteinerSet`].
    pub fn steiner(&self) -> &[usize] {
        &self.steiner
    }

    pub fn steiner_index(&self, v: usize) -> Option<usize> {
        self.steiner_index.get(v).copied().flatten()
    }

    pub fn is_steiner(&self, v: usize) -> bool {
        self.steiner_index(v).is_some()
    }
}

/// Parses the text graph format into a context with `λ` unset.
///
/// ```text
/// # comment
/// n m k
/// u v w        (m lines, 1-based ids, w >= 1)
/// s1 s2 ... sk
/// ```
pub fn load_graph(text: &str) -> Result<SteinerContext> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("expected an integer, got {t:?}") })).collect()
    };

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let h = parse_nums(hline, header)?;
    if h.len() != 3 {
        return Err(Error::Parse { line: hline, msg: "header must be \"n m k\"".into() });
    }
    let (n, m, k) = (h[0], h[1], h[2]);
    if n == 0 {
        return Err(Error::Parse { line: hline, msg: "n must be positive".into() });
    }

    let to_vertex = |line: usize, x: usize| -> Result<usize> {
        match x {
            0 => Err(Error::Parse { line, msg: "vertex ids are 1-based".into() }),
            x if x > n => Err(Error::VertexOutOfRange { vertex: x, n }),
            x => Ok(x - 1),
        }
    };

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: last_line + 1, msg: format!("expected {m} edge lines") })?;
        last_line = ln;
        let f = parse_nums(ln, l)?;
        if f.len() != 3 {
            return Err(Error::Parse { line: ln, msg: "edge line must be \"u v w\"".into() });
        }
        let (u, v) = (to_vertex(ln, f[0])?, to_vertex(ln, f[1])?);
        if u == v {
            return Err(Error::Parse { line: ln, msg: "self-loops are not allowed".into() });
        }
        let mult =
            u32::try_from(f[2]).ok().filter(|&w| w >= 1).ok_or(Error::Parse { line: ln, msg: "multiplicity must be in 1..=u32::MAX".into() })?;
        edges.push(Edge { u, v, mult });
    }

    let (sline, s) = lines.next().ok_or(Error::Parse { line: last_line + 1, msg: "missing Steiner vertex line".into() })?;
    let ids = parse_nums(sline, s)?;
    if ids.len() != k {
        return Err(Error::Parse { line: sline, msg: format!("expected {k} Steiner ids, got {}", ids.len()) });
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing content".into() });
    }
    let steiner = ids.iter().map(|&x| to_vertex(sline, x)).collect::<Result<Vec<_>>>()?;
    if steiner.len() < 2 {
        return Err(Error::SteinerTooSmall(steiner.len()));
    }
    SteinerContext::new(MultiGraph::new(n, edges)?, steiner)
}

/// Inverse of [`load_graph`] up to comments and whitespace.
pub fn write_graph(ctx: &SteinerContext) -> String {
    let g = &ctx.graph;
    let mut out = format!("{} {} {}\n", g.vertex_count(), g.edges().len(), ctx.steiner().len());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u + 1, e.v + 1, e.mult));
    }
    let ids: Vec<String> = ctx.steiner().iter().map(|v| (v + 1).to_string()).collect();
    out.push_str(&ids.join(" "));
    out.push('\n');
    out
}

/// External (1-based) id of an internal vertex.
pub fn format_vertex(v: usize) -> usize {
    v + 1
}

/// Space-free comma list of 1-based ids.
pub fn format_vertex_list(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// A quotient graph and the map from original vertices to groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub graph: MultiGraph,
    pub map: Vec<usize>,
    /// Set when the refining family was empty, so everything collapsed into one group.
    pub degenerate: bool,
}

impl Quotient {
    pub fn group_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Members of each group, sorted.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.group_count()];
        for (v, &gid) in self.map.iter().enumerate() {
            out[gid].push(v);
        }
        out
    }
}

/// Contracts each group to a vertex; parallel edges are merged with summed
/// multiplicity, self-loops are dropped.
pub fn contract(g: &MultiGraph, groups: &[Vec<usize>]) -> Result<Quotient> {
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; n];
    for (gid, grp) in groups.iter().enumerate() {
        if grp.is_empty() {
            return Err(Error::InvalidPartition(format!("group {gid} is empty")));
        }
        for &v in grp {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v + 1, n });
            }
            if map[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {} appears twice", v + 1)));
            }
            map[v] = gid;
        }
    }
    if let Some(v) = map.iter().position(|&x| x == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {} is not covered", v + 1)));
    }
    Ok(Quotient { graph: contract_by_map(g, &map, groups.len()), map, degenerate: false })
}

/// Contraction with a precomputed vertex-to-group map; group ids must be `0..k`.
pub fn contract_by_map(g: &MultiGraph, map: &[usize], k: usize) -> MultiGraph {
    let mut merged: HashMap<(usize, usize), u32> = HashMap::new();
    let mut order = Vec::new();
    for e in g.edges() {
        let (a, b) = (map[e.u], map[e.v]);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let slot = merged.entry(key).or_insert_with(|| {
            order.push(key);
            0
        });
        *slot += e.mult;
    }
    order.sort_unstable();
    let edges = order.into_iter().map(|(u, v)| Edge { u, v, mult: merged[&(u, v)] }).collect();
    MultiGraph::new(k, edges).expect("contracted graph is well formed")
}

/// Groups are numbered by first appearance in vertex order, so the result is deterministic.
pub fn refine_partition(n: usize, cuts: &[VertexCut]) -> Vec<usize> {
    let mut label = vec![0usize; n];
    for cut in cuts {
        let mut remap: HashMap<(usize, bool), usize> = HashMap::new();
        for (v, l) in label.iter_mut().enumerate() {
            let next = remap.len();
            *l = *remap.entry((*l, cut.contains(v))).or_insert(next);
        }
    }
    label
}

/// Quotient of `g` in which two vertices share a group iff no cut of the
/// family separates them.
pub fn quotient_by_cut_family(g: &MultiGraph, cuts: &[VertexCut]) -> Result<Quotient> {
    for c in cuts {
        if c.vertex_count() != g.vertex_count() {
            return Err(Error::InvalidCut("cut size does not match graph".into()));
        }
    }
    let map = refine_partition(g.vertex_count(), cuts);
    let k = map.iter().max().map_or(0, |m| m + 1);
    Ok(Quotient { graph: contract_by_map(g, &map, k), map, degenerate: cuts.is_empty() })
}
