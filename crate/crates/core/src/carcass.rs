//! Flesh, unit classification and the projection mapping.
//!
//! Construction uses exactly `(|S| - 1) + (2^{|S|-1} - 1) + T` max-flow calls,
//! where `T` is the number of skeleton tree edges:
//!
//! 1. one flow from `x = S[0]` to every other Steiner vertex gives `λ`, and the
//!    strips of the flows of value `λ` refine `V` into units;
//! 2. one flow per subset of `S` containing `x` enumerates the valid cuts;
//! 3. one flow per tree edge `e` of the skeleton gives the strip of the bunch
//!    `𝒞(ν, e)`. A non-Steiner unit is distinguished by `e` exactly when it is
//!    a non-terminal of that strip.
//!
//! Cycle edges are never flowed: a cycle edge belongs to a unit's projection
//! precisely when both tree edges hanging off its endpoints do.

use std::collections::BTreeSet;

use crate::error::{breach, Error, Result};
use crate::graph::{contract_by_map, MultiGraph, SteinerContext};
use crate::maxflow::{flow_calls, max_flow, steiner_flows};
use crate::skeleton::{build_skeleton, EdgeKind, MinimalCut, NodeKind, Skeleton};
use crate::strip::Strip;
use crate::validcuts::{enumerate_valid_cuts, ValidCutSet, DEFAULT_ENUM_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest `|S|` accepted by the valid-cut enumeration.
    pub max_enum: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_enum: DEFAULT_ENUM_BOUND }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    Steiner,
    Terminal,
    Stretched,
}

impl UnitKind {
    pub fn name(self) -> &'static str {
        match self {
            UnitKind::Steiner => "steiner",
            UnitKind::Terminal => "terminal",
            UnitKind::Stretched => "stretched",
        }
    }
}

/// Two sides of a unit's incident graph edges; each side is sorted and the
/// side holding the smallest edge id comes first.
pub type EdgeBipartition = (Vec<usize>, Vec<usize>);

fn canonical_bipartition(a: Vec<usize>, b: Vec<usize>) -> EdgeBipartition {
    let (mut a, mut b) = (a, b);
    a.sort_unstable();
    b.sort_unstable();
    if a.is_empty() || (!b.is_empty() && b[0] < a[0]) {
        (b, a)
    } else {
        (a, b)
    }
}

/// The quotient of the graph by all S-mincuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flesh {
    /// Graph vertex to unit.
    pub phi: Vec<usize>,
    /// Unit to sorted graph vertices; units are numbered by smallest vertex.
    pub units: Vec<Vec<usize>>,
    pub kind: Vec<UnitKind>,
    /// Inherent partition of each stretched unit, as graph edge ids.
    pub inherent: Vec<Option<EdgeBipartition>>,
    pub quotient: MultiGraph,
}

impl Flesh {
    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Graph edges with exactly one endpoint in `unit`.
    pub fn incident_edges(&self, g: &MultiGraph, unit: usize) -> Vec<usize> {
        (0..g.edges().len())
            .filter(|&e| {
                let ed = g.edge(e);
                (self.phi[ed.u] == unit) != (self.phi[ed.v] == unit)
            })
            .collect()
    }

    /// Graph edges joining two different units.
    pub fn edges_between(&self, g: &MultiGraph, x: usize, y: usize) -> Vec<usize> {
        (0..g.edges().len())
            .filter(|&e| {
                let ed = g.edge(e);
                let (a, b) = (self.phi[ed.u], self.phi[ed.v]);
                (a, b) == (x, y) || (a, b) == (y, x)
            })
            .collect()
    }
}

/// Where a unit lives in the skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Projection {
    Node(usize),
    /// Endpoints of a proper path whose first and last edges are tree edges.
    Path(usize, usize),
}

impl Projection {
    /// Endpoints; a node projection yields the node twice.
    pub fn ends(self) -> (usize, usize) {
        match self {
            Projection::Node(x) => (x, x),
            Projection::Path(a, b) => (a, b),
        }
    }

    /// Skeleton edges of the projection, in path order.
    pub fn edges(self, sk: &Skeleton) -> Vec<usize> {
        match self {
            Projection::Node(_) => Vec::new(),
            Projection::Path(a, b) => sk.proper_path(a, b).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMapping {
    pub units: Vec<Projection>,
}

/// Everything the query layer needs.
#[derive(Debug, Clone)]
pub struct Carcass {
    pub ctx: SteinerContext,
    pub valid: ValidCutSet,
    pub skeleton: Skeleton,
    pub flesh: Flesh,
    pub projection: ProjectionMapping,
    /// Strip of the bunch `𝒞(a, e)` for each tree edge `e = (a, b)`, indexed by
    /// skeleton edge id (`None` for cycle edges).
    pub tree_strips: Vec<Option<Strip>>,
    /// Max-flow calls issued by [`Carcass::build`].
    pub flow_calls: u64,
}

fn refine_by_labels(labels: &mut [usize], by: &[usize]) {
    let mut remap = std::collections::HashMap::new();
    for v in 0..labels.len() {
        let next = remap.len();
        labels[v] = *remap.entry((labels[v], by[v])).or_insert(next);
    }
}

impl Carcass {
    pub fn build(mut ctx: SteinerContext, opts: BuildOptions) -> Result<Carcass> {
        let k = ctx.steiner().len();
        if k > opts.max_enum {
            return Err(Error::SteinerTooLarge { size: k, bound: opts.max_enum });
        }
        let calls_before = flow_calls();
        let flows = steiner_flows(&mut ctx)?;
        let lambda = ctx.lambda.expect("set by steiner_flows");
        let g = ctx.graph.clone();
        let n = g.vertex_count();

        // Units: refine V by the strips of all (x, y) flows of value λ.
        let mut labels = vec![0usize; n];
        for (_, flow) in flows.iter().filter(|(_, f)| f.value == lambda) {
            let strip = Strip::from_flow(&g, flow)?;
            refine_by_labels(&mut labels, &strip.phi);
        }
        let unit_count = labels.iter().max().map_or(0, |m| m + 1);
        let mut units = vec![Vec::new(); unit_count];
        for (v, &u) in labels.iter().enumerate() {
            units[u].push(v);
        }

        let valid = enumerate_valid_cuts(&ctx, opts.max_enum)?;
        let skeleton = build_skeleton(&valid)?;

        let s = ctx.steiner().to_vec();
        let full = skeleton.full();
        let mut tree_strips: Vec<Option<Strip>> = vec![None; skeleton.edges.len()];
        for e in skeleton.tree_edges() {
            let side = skeleton.cut_side(MinimalCut::Tree(e));
            let flow = max_flow(&g, &side.vertices(&s), &side.complement(full).vertices(&s))?;
            if flow.value != lambda {
                return breach(format!("tree edge {e} does not define a valid cut"));
            }
            tree_strips[e] = Some(Strip::from_flow(&g, &flow)?);
        }

        let mut kind = Vec::with_capacity(unit_count);
        let mut proj = Vec::with_capacity(unit_count);
        let mut inherent = Vec::with_capacity(unit_count);
        for members in &units {
            let rep = members[0];
            if let Some(i) = members.iter().find_map(|&v| ctx.steiner_index(v)) {
                kind.push(UnitKind::Steiner);
                proj.push(Projection::Node(skeleton.phi[i]));
                inherent.push(None);
                continue;
            }
            let distinguishing: Vec<usize> = skeleton
                .tree_edges()
                .filter(|&e| {
                    let strip = tree_strips[e].as_ref().expect("tree edge");
                    !strip.is_terminal(strip.phi[rep])
                })
                .collect();
            if distinguishing.is_empty() {
                kind.push(UnitKind::Terminal);
                proj.push(Projection::Node(map_terminal_unit(&skeleton, &tree_strips, rep)?));
                inherent.push(None);
            } else {
                kind.push(UnitKind::Stretched);
                proj.push(project_stretched_unit(&skeleton, &distinguishing)?);
                inherent.push(Some(inherent_partition_of(&tree_strips, &distinguishing, rep)?));
            }
        }

        let quotient = contract_by_map(&g, &labels, unit_count);
        let flesh = Flesh { phi: labels, units, kind, inherent, quotient };
        Ok(Carcass {
            ctx,
            valid,
            skeleton,
            flesh,
            projection: ProjectionMapping { units: proj },
            tree_strips,
            flow_calls: flow_calls() - calls_before,
        })
    }

    pub fn lambda(&self) -> u64 {
        self.ctx.lambda.expect("built carcass has λ")
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.ctx.graph
    }

    /// Tree edges of the skeleton whose strip keeps `unit` as a non-terminal.
    pub fn distinguishing_tree_edges(&self, unit: usize) -> Vec<usize> {
        let rep = self.flesh.units[unit][0];
        self.skeleton
            .tree_edges()
            .filter(|&e| {
                let strip = self.tree_strips[e].as_ref().expect("tree edge");
                !strip.is_terminal(strip.phi[rep])
            })
            .collect()
    }

    /// `π(x, y)` for adjacent units, oriented from `x` to `y`.
    pub fn project_edge(&self, x: usize, y: usize) -> Result<Projection> {
        if x == y {
            return Err(Error::InvalidArgument("an edge needs two distinct units".into()));
        }
        if self.flesh.edges_between(self.graph(), x, y).is_empty() {
            return Err(Error::InvalidArgument(format!("units {x} and {y} are not adjacent")));
        }
        let (px, py) = (self.projection.units[x], self.projection.units[y]);
        let needed: BTreeSet<usize> = px.edges(&self.skeleton).into_iter().chain(py.edges(&self.skeleton)).collect();
        let proj = self.covering_path(px, py, &needed, false)?;
        Ok(self.orient_along_flow(proj, x, y))
    }

    /// When the prefix and suffix rules leave the direction open (for
    /// instance when `π(x) = π(y)`), the strip of a tree edge on the path
    /// decides it: the path starts on the side that holds `x` whenever a
    /// mincut of that bunch separates `x` from `y`.
    fn orient_along_flow(&self, proj: Projection, x: usize, y: usize) -> Projection {
        let Projection::Path(a, b) = proj else { return proj };
        let (rx, ry) = (self.flesh.units[x][0], self.flesh.units[y][0]);
        for e in proj.edges(&self.skeleton) {
            let Some(strip) = &self.tree_strips[e] else { continue };
            let (sx, sy) = (strip.phi[rx], strip.phi[ry]);
            if sx == sy {
                continue;
            }
            let Some(arc) = strip.edges.iter().find(|se| (se.tail, se.head) == (sx, sy) || (se.tail, se.head) == (sy, sx)) else {
                continue;
            };
            let x_on_source_side = arc.tail == sx;
            return if self.skeleton.node_on_cut_side(MinimalCut::Tree(e), a) == x_on_source_side { proj } else { Projection::Path(b, a) };
        }
        proj
    }

    /// The shortest proper path from an end of `from` to an end of `to` whose
    /// edges include `needed` (or equal it, when `exact`).
    fn covering_path(&self, from: Projection, to: Projection, needed: &BTreeSet<usize>, exact: bool) -> Result<Projection> {
        let (fa, fb) = from.ends();
        let (ta, tb) = to.ends();
        let mut best: Option<(usize, usize, usize)> = None;
        for a in [fa, fb] {
            for b in [ta, tb] {
                let Some(path) = self.skeleton.proper_path(a, b) else { continue };
                let set: BTreeSet<usize> = path.iter().copied().collect();
                let ok = if exact { set == *needed } else { needed.is_subset(&set) };
                if ok && best.is_none_or(|(len, _, _)| path.len() < len) {
                    best = Some((path.len(), a, b));
                }
            }
        }
        match best {
            Some((0, a, _)) => Ok(Projection::Node(a)),
            Some((_, a, b)) => Ok(Projection::Path(a, b)),
            None => breach("no proper path joins the two projections"),
        }
    }

    /// Projection of a coherent path of units.
    pub fn project_coherent_path(&self, path: &[usize]) -> Result<Projection> {
        if path.len() < 2 {
            return Err(Error::InvalidArgument("a path needs at least two units".into()));
        }
        let g = self.graph();
        let mut steps = Vec::new();
        for w in path.windows(2) {
            let between = self.flesh.edges_between(g, w[0], w[1]);
            if between.is_empty() {
                return Err(Error::InvalidArgument(format!("units {} and {} are not adjacent", w[0], w[1])));
            }
            steps.push(between);
        }
        for i in 1..path.len() - 1 {
            let unit = path[i];
            let Some((side_a, _)) = &self.flesh.inherent[unit] else {
                return Err(Error::NotCoherent(format!("interior unit {unit} is not stretched")));
            };
            let on_a = |edges: &[usize]| -> Result<bool> {
                let hits = edges.iter().filter(|e| side_a.contains(e)).count();
                match hits {
                    0 => Ok(false),
                    h if h == edges.len() => Ok(true),
                    _ => Err(Error::NotCoherent(format!("edges into unit {unit} straddle its partition"))),
                }
            };
            if on_a(&steps[i - 1])? == on_a(&steps[i])? {
                return Err(Error::NotCoherent(format!("both path edges at unit {unit} lie on one side of its inherent partition")));
            }
        }
        let mut needed = BTreeSet::new();
        for w in path.windows(2) {
            needed.extend(self.project_edge(w[0], w[1])?.edges(&self.skeleton));
        }
        let (first, last) = (self.projection.units[path[0]], self.projection.units[path[path.len() - 1]]);
        self.covering_path(first, last, &needed, true)
    }
}

/// The unique tree node lying on the side that contains the unit for every
/// tree edge.
fn map_terminal_unit(sk: &Skeleton, strips: &[Option<Strip>], rep: usize) -> Result<usize> {
    let mut toward_side: Vec<(usize, bool)> = Vec::new();
    for e in sk.tree_edges() {
        let strip = strips[e].as_ref().expect("tree edge");
        match strip.phi[rep] {
            crate::strip::SOURCE => toward_side.push((e, true)),
            crate::strip::SINK => toward_side.push((e, false)),
            _ => return breach("terminal unit is distinguished by a tree edge"),
        }
    }
    let hits: Vec<usize> = (0..sk.node_count())
        .filter(|&x| sk.nodes[x].kind == NodeKind::Tree)
        .filter(|&x| toward_side.iter().all(|&(e, a_side)| sk.node_on_cut_side(MinimalCut::Tree(e), x) == a_side))
        .collect();
    match hits.as_slice() {
        [x] => Ok(*x),
        _ => breach(format!("terminal unit has {} candidate nodes", hits.len())),
    }
}

/// Endpoints of the proper path formed by the distinguishing tree edges and
/// the cycle edges flanked by two of them.
fn project_stretched_unit(sk: &Skeleton, tree_edges: &[usize]) -> Result<Projection> {
    let mut set: BTreeSet<usize> = tree_edges.iter().copied().collect();
    let hanging = |x: usize| sk.incident(x).iter().find(|&&(_, e)| sk.edges[e].is_tree()).map(|&(_, e)| e);
    for (e, ed) in sk.edges.iter().enumerate() {
        if let EdgeKind::Cycle(_) = ed.kind {
            if let (Some(ta), Some(tb)) = (hanging(ed.a), hanging(ed.b)) {
                if set.contains(&ta) && set.contains(&tb) {
                    set.insert(e);
                }
            }
        }
    }
    let mut degree = vec![0usize; sk.node_count()];
    for &e in &set {
        degree[sk.edges[e].a] += 1;
        degree[sk.edges[e].b] += 1;
    }
    let ends: Vec<usize> = (0..sk.node_count()).filter(|&x| degree[x] == 1).collect();
    if ends.len() != 2 || degree.iter().any(|&d| d > 2) {
        return breach("distinguishing edges of a stretched unit do not form a path");
    }
    let (a, b) = (ends[0], ends[1]);
    let path = match sk.proper_path(a, b) {
        Some(p) => p,
        None => return breach("distinguishing edges of a stretched unit do not form a proper path"),
    };
    if path.iter().copied().collect::<BTreeSet<_>>() != set {
        return breach("distinguishing edges of a stretched unit are disconnected");
    }
    if !sk.edges[path[0]].is_tree() || !sk.edges[*path.last().unwrap()].is_tree() {
        return breach("projection of a stretched unit must start and end with tree edges");
    }
    Ok(Projection::Path(a, b))
}

/// Inherent partition read from each distinguishing strip; all must agree.
fn inherent_partition_of(strips: &[Option<Strip>], tree_edges: &[usize], rep: usize) -> Result<EdgeBipartition> {
    let mut found: Option<EdgeBipartition> = None;
    for &e in tree_edges {
        let strip = strips[e].as_ref().expect("tree edge");
        let (ins, outs) = strip.inherent_partition(strip.phi[rep])?;
        let p = canonical_bipartition(ins, outs);
        match &found {
            None => found = Some(p),
            Some(q) if *q == p => {}
            Some(_) => return breach("inherent partitions differ between strips"),
        }
    }
    found.ok_or_else(|| Error::InvariantBreach("stretched unit without distinguishing strips".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::load_graph;

    fn build(text: &str) -> Carcass {
        Carcass::build(load_graph(text).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn p3_carcass() {
        let c = build(fixtures::P3);
        assert_eq!(c.lambda(), 1);
        assert_eq!(c.flesh.units, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(c.flesh.kind, vec![UnitKind::Steiner, UnitKind::Stretched, UnitKind::Steiner]);
        assert_eq!(c.flesh.inherent[1], Some((vec![0], vec![1])));
        assert_eq!(c.skeleton.node_count(), 2);
        assert_eq!(c.projection.units[1].edges(&c.skeleton), vec![0]);
    }

    #[test]
    fn star_centre_is_terminal() {
        let c = build(fixtures::STAR);
        assert_eq!(c.flesh.unit_count(), 4);
        assert_eq!(c.flesh.kind[3], UnitKind::Terminal);
        let Projection::Node(x) = c.projection.units[3] else { panic!() };
        assert!(c.skeleton.nodes[x].steiner.is_empty());
        assert_eq!(c.skeleton.degree(x), 3);
    }

    #[test]
    fn two_vertex_and_pendant() {
        let c = build(fixtures::TWO_VERTEX);
        assert_eq!(c.lambda(), 3);
        assert_eq!(c.flesh.unit_count(), 2);
        let c = build(fixtures::P3_PENDANT);
        assert_eq!(c.flesh.units, vec![vec![0, 3], vec![1], vec![2]]);
    }

    #[test]
    fn flow_budget_is_exact() {
        for (_, text) in fixtures::ALL {
            let c = build(text);
            let k = c.ctx.steiner().len() as u64;
            let t = c.skeleton.tree_edges().count() as u64;
            assert_eq!(c.flow_calls, (k - 1) + (1 << (k - 1)) - 1 + t);
        }
    }

    #[test]
    fn even_cycle_units_cross_one_cycle_edge() {
        let c = build(fixtures::EVEN_CYCLE);
        assert_eq!(c.lambda(), 2);
        assert_eq!(c.skeleton.cycles.len(), 1);
        for u in 0..c.flesh.unit_count() {
            if c.flesh.kind[u] == UnitKind::Stretched {
                let path = c.projection.units[u].edges(&c.skeleton);
                let kinds: Vec<bool> = path.iter().map(|&e| c.skeleton.edges[e].is_tree()).collect();
                assert_eq!(kinds, vec![true, false, true]);
            }
        }
    }

    #[test]
    fn coherent_paths() {
        let c = build(fixtures::P3);
        assert_eq!(c.project_coherent_path(&[0, 1, 2]).unwrap().edges(&c.skeleton), vec![0]);
        assert_eq!(c.project_edge(0, 1).unwrap().edges(&c.skeleton), vec![0]);
        let star = build(fixtures::STAR);
        assert!(matches!(star.project_coherent_path(&[0, 3, 1]), Err(Error::NotCoherent(_))));
    }
}
