//! Brute-force ground truth by exhaustive cut enumeration, and a checker that
//! compares a built [`Carcass`] against it.
//!
//! Everything here is exponential in `n` and meant for instances with at most
//! [`ORACLE_BOUND`] vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use crate::carcass::{Carcass, Projection, UnitKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph, SteinerContext, VertexCut};
use crate::maxflow::{flow_calls, max_flow};
use crate::queries;
use crate::skeleton::{EdgeKind, MinimalCut, NodeKind};
use crate::strip::{build_strip, Strip, SINK, SOURCE};
use crate::validcuts::{crosses, SteinerSet};

pub const ORACLE_BOUND: usize = 20;

/// All S-mincuts of an instance and everything derived from them.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub n: usize,
    pub lambda: u64,
    pub steiner: Vec<usize>,
    /// Every S-mincut as a vertex bitmask holding `S[0]`, sorted.
    pub mincuts: Vec<u32>,
    /// Mincuts grouped by their anchored Steiner side.
    pub bunches: BTreeMap<SteinerSet, Vec<u32>>,
    /// Anchored sides of all valid cuts, sorted.
    pub valid_cuts: Vec<SteinerSet>,
    /// Vertex to unit, units numbered by smallest vertex.
    pub unit_of: Vec<usize>,
    pub units: Vec<Vec<usize>>,
}

fn mask_capacity(g: &MultiGraph, mask: u32) -> u64 {
    g.edges().iter().filter(|e| (mask >> e.u & 1) != (mask >> e.v & 1)).map(|e| e.mult as u64).sum()
}

/// Capacity of every vertex subset, indexed by bitmask.
pub fn capacity_table(g: &MultiGraph) -> Vec<u64> {
    (0..1u32 << g.vertex_count()).map(|m| mask_capacity(g, m)).collect()
}

pub fn mask_to_cut(n: usize, mask: u32) -> Result<VertexCut> {
    VertexCut::from_mask((0..n).map(|v| mask >> v & 1 == 1).collect())
}

pub fn cut_to_mask(cut: &VertexCut) -> u32 {
    cut.inside().into_iter().fold(0, |m, v| m | 1 << v)
}

/// Enumerates all `2^{n-1}` bipartitions of `V`.
pub fn enumerate_all(ctx: &SteinerContext) -> Result<OracleReport> {
    let g = &ctx.graph;
    let n = g.vertex_count();
    if n > ORACLE_BOUND {
        return Err(Error::InstanceTooLarge { n, bound: ORACLE_BOUND });
    }
    let steiner = ctx.steiner().to_vec();
    let s_mask: u32 = steiner.iter().fold(0, |m, &v| m | 1 << v);
    let anchor = 1u32 << steiner[0];
    let full = (1u32 << n) - 1;

    let mut lambda = u64::MAX;
    let mut mincuts = Vec::new();
    for mask in 0..full {
        if mask & anchor == 0 || mask & s_mask == s_mask {
            continue;
        }
        let c = mask_capacity(g, mask);
        if c < lambda {
            lambda = c;
            mincuts.clear();
        }
        if c == lambda {
            mincuts.push(mask);
        }
    }

    let side_of = |mask: u32| SteinerSet(steiner.iter().enumerate().filter(|&(_, &v)| mask >> v & 1 == 1).fold(0, |s, (i, _)| s | 1 << i));
    let mut bunches: BTreeMap<SteinerSet, Vec<u32>> = BTreeMap::new();
    for &m in &mincuts {
        bunches.entry(side_of(m)).or_default().push(m);
    }
    let valid_cuts = bunches.keys().copied().collect();

    let mut unit_of = vec![0usize; n];
    for &m in &mincuts {
        let mut remap = BTreeMap::new();
        for (v, u) in unit_of.iter_mut().enumerate() {
            let next = remap.len();
            *u = *remap.entry((*u, m >> v & 1)).or_insert(next);
        }
    }
    let mut units = vec![Vec::new(); unit_of.iter().max().map_or(0, |x| x + 1)];
    for v in 0..n {
        units[unit_of[v]].push(v);
    }
    Ok(OracleReport { n, lambda, steiner, mincuts, bunches, valid_cuts, unit_of, units })
}

impl OracleReport {
    pub fn full(&self) -> SteinerSet {
        SteinerSet::full(self.steiner.len())
    }

    pub fn vertex_full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Mincuts of the bunch of `side`, oriented so that `side` is inside.
    pub fn bunch(&self, side: SteinerSet) -> Vec<u32> {
        let key = side.anchored(self.full());
        let flip = key != side;
        self.bunches.get(&key).map(|ms| ms.iter().map(|&m| if flip { !m & self.vertex_full() } else { m }).collect()).unwrap_or_default()
    }

    pub fn is_valid(&self, side: SteinerSet) -> bool {
        self.bunches.contains_key(&side.anchored(self.full()))
    }

    /// `N(side)`: intersection of the bunch's mincuts oriented with `side` inside.
    pub fn tight(&self, side: SteinerSet) -> Option<u32> {
        let b = self.bunch(side);
        (!b.is_empty()).then(|| b.iter().fold(self.vertex_full(), |acc, &m| acc & m))
    }

    /// Whether some mincut of the bunch holds `v` inside and another leaves it out.
    pub fn distinguishes(&self, side: SteinerSet, v: usize) -> bool {
        let b = self.bunch(side);
        b.iter().any(|&m| m >> v & 1 == 1) && b.iter().any(|&m| m >> v & 1 == 0)
    }

    /// Anchored valid cuts that put `s` and `t` (Steiner indices) on different sides.
    pub fn valid_cuts_separating(&self, s: usize, t: usize) -> Vec<SteinerSet> {
        self.valid_cuts.iter().copied().filter(|side| side.contains(s) != side.contains(t)).collect()
    }
}

/// Capacity of a minimum `(S1, S2)`-cut and every cut reaching it, as
/// bitmasks containing `S1`, sorted.
pub fn st_mincuts(g: &MultiGraph, s1: &[usize], s2: &[usize]) -> Result<(u64, Vec<u32>)> {
    let n = g.vertex_count();
    if n > ORACLE_BOUND {
        return Err(Error::InstanceTooLarge { n, bound: ORACLE_BOUND });
    }
    let m1: u32 = s1.iter().fold(0, |m, &v| m | 1 << v);
    let m2: u32 = s2.iter().fold(0, |m, &v| m | 1 << v);
    if m1 & m2 != 0 || m1 == 0 || m2 == 0 {
        return Err(Error::OverlappingTerminals);
    }
    let mut best = u64::MAX;
    let mut cuts = Vec::new();
    for mask in 0..1u32 << n {
        if mask & m1 != m1 || mask & m2 != 0 {
            continue;
        }
        let c = mask_capacity(g, mask);
        if c < best {
            best = c;
            cuts.clear();
        }
        if c == best {
            cuts.push(mask);
        }
    }
    Ok((best, cuts))
}

/// Preimages of all transversal cuts of a strip, as vertex bitmasks.
pub fn transversal_cuts(strip: &Strip) -> Result<Vec<u32>> {
    let inner: Vec<usize> = (0..strip.vertex_count()).filter(|&x| !strip.is_terminal(x)).collect();
    if inner.len() > ORACLE_BOUND {
        return Err(Error::InstanceTooLarge { n: inner.len(), bound: ORACLE_BOUND });
    }
    let mut out = Vec::new();
    for pick in 0..1u32 << inner.len() {
        let mut u = vec![SOURCE];
        u.extend(inner.iter().enumerate().filter(|&(i, _)| pick >> i & 1 == 1).map(|(_, &x)| x));
        if strip.is_transversal(&u)? {
            out.push(cut_to_mask(&strip.preimage(&u)?));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Graph with one instance of `edge` subdivided by a new last vertex.
pub fn subdivide(ctx: &SteinerContext, edge: usize) -> Result<SteinerContext> {
    let g = &ctx.graph;
    let n = g.vertex_count();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let e = edges[edge];
    if e.mult == 1 {
        edges.remove(edge);
    } else {
        edges[edge].mult -= 1;
    }
    edges.push(Edge { u: e.u, v: n, mult: 1 });
    edges.push(Edge { u: n, v: e.v, mult: 1 });
    SteinerContext::new(MultiGraph::new(n + 1, edges)?, ctx.steiner().iter().copied())
}

/// Which of `sides` distinguish the midpoint of a subdivided copy of `edge`.
pub fn subdivision_distinguishing(ctx: &SteinerContext, edge: usize, sides: &[SteinerSet]) -> Result<Vec<bool>> {
    let sub = subdivide(ctx, edge)?;
    let report = enumerate_all(&sub)?;
    let mid = ctx.graph.vertex_count();
    Ok(sides.iter().map(|&s| report.distinguishes(s, mid)).collect())
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub anchor: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "ok - {}", self.anchor)
        } else {
            write!(f, "not ok - {}: {}", self.anchor, self.detail)
        }
    }
}

/// TAP text: a plan line followed by one numbered line per verdict.
pub fn render_tap(verdicts: &[Verdict]) -> String {
    let mut out = format!("1..{}\n", verdicts.len());
    for (i, v) in verdicts.iter().enumerate() {
        let status = if v.ok { "ok" } else { "not ok" };
        out.push_str(&format!("{status} {} - {}", i + 1, v.anchor));
        if !v.ok {
            out.push_str(&format!(" # {}", v.detail));
        }
        out.push('\n');
    }
    out
}

type Check = fn(&Carcass, &OracleReport) -> std::result::Result<(), String>;

/// Every check run by [`check_carcass`], in order.
pub const CHECKS: &[(&str, Check)] = &[
    ("lambda", check_lambda),
    ("flesh-units", check_units),
    ("valid-cuts", check_valid_cuts),
    ("bunch-count", check_bunch_count),
    ("minimal-cut-multiset", check_minimal_cut_multiset),
    ("leaf-sets-indivisible", check_leaves),
    ("cycle-shape", check_cycle_shape),
    ("empty-tree-nodes", check_empty_tree_nodes),
    ("steiner-placement", check_steiner_placement),
    ("unit-kinds", check_unit_kinds),
    ("terminal-unit-placement", check_terminal_placement),
    ("stretched-unit-projection", check_stretched_projection),
    ("one-edge-per-cycle", check_one_edge_per_cycle),
    ("edge-projection", check_edge_projection),
    ("edge-projection-prefix-suffix", check_prefix_suffix),
    ("inherent-partition", check_inherent_partition),
    ("distinctness", check_distinctness),
    ("forbidden-combinations", check_forbidden_combinations),
    ("four-point", check_four_point),
    ("disjoint-triple-intersection", check_disjoint_triples),
    ("crossing-family", check_crossing_family),
    ("laminar-count", check_laminar_count),
    ("strip-orientation-roundtrip", check_orientation_roundtrip),
    ("strip-flow-balance", check_flow_balance),
    ("strip-transversal-bijection", check_transversal_bijection),
    ("strip-from-carcass", check_strip_from_carcass),
    ("mincut-cover", check_mincut_cover),
    ("separating-mincut-query", check_separating_query),
    ("h-st-query", check_h_st),
    ("dst-query", check_dst),
    ("ring-constraints", check_rings),
    ("unidirectionality", check_unidirectionality),
    ("flow-budget", check_flow_budget),
    ("queries-use-no-flow", check_queries_flow_free),
];

/// Runs every check; a panic inside a check becomes a failed verdict.
pub fn check_carcass(c: &Carcass, report: &OracleReport) -> Vec<Verdict> {
    CHECKS
        .iter()
        .map(|&(anchor, check)| {
            let outcome = catch_unwind(AssertUnwindSafe(|| check(c, report)));
            let (ok, detail) = match outcome {
                Ok(Ok(())) => (true, String::new()),
                Ok(Err(msg)) => (false, msg),
                Err(p) => {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    (false, format!("panicked: {msg}"))
                }
            };
            Verdict { anchor, ok, detail }
        })
        .collect()
}

/// Runs a single named check.
pub fn run_check(c: &Carcass, report: &OracleReport, anchor: &str) -> Option<Verdict> {
    let &(anchor, check) = CHECKS.iter().find(|(a, _)| *a == anchor)?;
    let outcome = catch_unwind(AssertUnwindSafe(|| check(c, report)));
    Some(match outcome {
        Ok(Ok(())) => Verdict { anchor, ok: true, detail: String::new() },
        Ok(Err(msg)) => Verdict { anchor, ok: false, detail: msg },
        Err(_) => Verdict { anchor, ok: false, detail: "panicked".into() },
    })
}

type CheckResult = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn minimal_cuts_with_sides(c: &Carcass) -> Vec<(MinimalCut, SteinerSet)> {
    let sk = &c.skeleton;
    sk.minimal_cuts().into_iter().map(|cut| (cut, sk.cut_side(cut))).collect()
}

fn edges_hit(c: &Carcass, cut: MinimalCut, path: &[usize]) -> bool {
    c.skeleton.cut_edges(cut).iter().any(|e| path.contains(e))
}

fn stretched_units(c: &Carcass) -> impl Iterator<Item = usize> + '_ {
    (0..c.flesh.unit_count()).filter(|&u| c.flesh.kind[u] == UnitKind::Stretched)
}

/// Pairs of distinct adjacent units `(x, y)` with `x < y`.
fn flesh_edges(c: &Carcass) -> Vec<(usize, usize, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (id, e) in c.graph().edges().iter().enumerate() {
        let (x, y) = (c.flesh.phi[e.u], c.flesh.phi[e.v]);
        if x != y && seen.insert((x.min(y), x.max(y))) {
            out.push((x.min(y), x.max(y), id));
        }
    }
    out
}

fn strip_of_side(c: &Carcass, side: SteinerSet) -> Result<Strip> {
    let s = c.ctx.steiner();
    let full = c.skeleton.full();
    build_strip(c.graph(), &side.vertices(s), &side.complement(full).vertices(s))
}

fn check_lambda(c: &Carcass, r: &OracleReport) -> CheckResult {
    ensure(c.lambda() == r.lambda, || format!("carcass {} oracle {}", c.lambda(), r.lambda))
}

fn check_units(c: &Carcass, r: &OracleReport) -> CheckResult {
    ensure(c.flesh.units == r.units, || format!("carcass {:?} oracle {:?}", c.flesh.units, r.units))
}

fn check_valid_cuts(c: &Carcass, r: &OracleReport) -> CheckResult {
    ensure(c.valid.cuts == r.valid_cuts, || format!("carcass {:?} oracle {:?}", c.valid.cuts, r.valid_cuts))
}

fn check_bunch_count(_: &Carcass, r: &OracleReport) -> CheckResult {
    ensure(r.bunches.len() == r.valid_cuts.len(), || "bunches and valid cuts differ in number".into())
}

fn check_minimal_cut_multiset(c: &Carcass, r: &OracleReport) -> CheckResult {
    let mut count: BTreeMap<SteinerSet, usize> = BTreeMap::new();
    for (_, side) in minimal_cuts_with_sides(c) {
        *count.entry(side.anchored(r.full())).or_default() += 1;
    }
    let keys: Vec<SteinerSet> = count.keys().copied().collect();
    ensure(keys == r.valid_cuts, || format!("minimal cuts give {keys:?}, oracle {:?}", r.valid_cuts))?;
    match count.iter().find(|(_, &k)| !(1..=3).contains(&k)) {
        Some((side, k)) => Err(format!("valid cut {side:?} represented {k} times")),
        None => Ok(()),
    }
}

fn check_leaves(c: &Carcass, r: &OracleReport) -> CheckResult {
    for x in c.skeleton.leaves() {
        let l = c.skeleton.nodes[x].steiner;
        ensure(!l.is_empty() && r.is_valid(l), || format!("leaf {x} does not hold a valid cut"))?;
        let divided = r.valid_cuts.iter().any(|&v| !v.intersect(l).is_empty() && !l.is_subset(v));
        ensure(!divided, || format!("leaf {x} holds a divisible set"))?;
    }
    Ok(())
}

fn check_cycle_shape(c: &Carcass, _: &OracleReport) -> CheckResult {
    let sk = &c.skeleton;
    e2s(sk.check_cycles())?;
    for (ci, cyc) in sk.cycles.iter().enumerate() {
        let k = cyc.len();
        for i in 0..k {
            let ed = sk.edges[cyc.edges[i]];
            let (a, b) = (cyc.nodes[i], cyc.nodes[(i + 1) % k]);
            ensure((ed.a, ed.b) == (a, b) || (ed.a, ed.b) == (b, a), || format!("cycle {ci} edge {i} is misplaced"))?;
        }
        ensure(cyc.nodes.iter().collect::<BTreeSet<_>>().len() == k, || format!("cycle {ci} repeats a node"))?;
    }
    Ok(())
}

fn check_empty_tree_nodes(c: &Carcass, _: &OracleReport) -> CheckResult {
    e2s(c.skeleton.check_empty_nodes())
}

fn check_steiner_placement(c: &Carcass, _: &OracleReport) -> CheckResult {
    e2s(c.skeleton.check_phi())?;
    let cycle_nodes_empty = c.skeleton.nodes.iter().all(|nd| nd.kind == NodeKind::Tree || nd.steiner.is_empty());
    ensure(cycle_nodes_empty, || "a cycle node stores Steiner vertices".into())
}

fn check_unit_kinds(c: &Carcass, r: &OracleReport) -> CheckResult {
    let sides = minimal_cuts_with_sides(c);
    for u in 0..c.flesh.unit_count() {
        let rep = c.flesh.units[u][0];
        let expected = if c.flesh.units[u].iter().any(|&v| c.ctx.is_steiner(v)) {
            UnitKind::Steiner
        } else if sides.iter().any(|&(_, s)| r.distinguishes(s, rep)) {
            UnitKind::Stretched
        } else {
            UnitKind::Terminal
        };
        ensure(c.flesh.kind[u] == expected, || format!("unit {u} is {:?}, oracle {expected:?}", c.flesh.kind[u]))?;
    }
    Ok(())
}

fn check_terminal_placement(c: &Carcass, r: &OracleReport) -> CheckResult {
    let sides = minimal_cuts_with_sides(c);
    for u in 0..c.flesh.unit_count() {
        if c.flesh.kind[u] == UnitKind::Stretched {
            continue;
        }
        let Projection::Node(x) = c.projection.units[u] else {
            return Err(format!("non-stretched unit {u} projects to a path"));
        };
        ensure(c.skeleton.nodes[x].kind == NodeKind::Tree, || format!("unit {u} sits on a cycle node"))?;
        let rep = c.flesh.units[u][0];
        for &(cut, side) in &sides {
            let inside = r.tight(side).ok_or("minimal cut without a bunch")? >> rep & 1 == 1;
            ensure(c.skeleton.node_on_cut_side(cut, x) == inside, || format!("unit {u} on the wrong side of {cut:?}"))?;
        }
    }
    Ok(())
}

fn check_stretched_projection(c: &Carcass, r: &OracleReport) -> CheckResult {
    let sk = &c.skeleton;
    let sides = minimal_cuts_with_sides(c);
    for u in stretched_units(c) {
        let Projection::Path(a, b) = c.projection.units[u] else {
            return Err(format!("stretched unit {u} projects to a node"));
        };
        let path = sk.proper_path(a, b).ok_or_else(|| format!("unit {u}: no proper path"))?;
        ensure(!path.is_empty(), || format!("unit {u}: empty path"))?;
        ensure(sk.edges[path[0]].is_tree() && sk.edges[*path.last().unwrap()].is_tree(), || {
            format!("unit {u}: path does not start and end with tree edges")
        })?;
        let rep = c.flesh.units[u][0];
        for &(cut, side) in &sides {
            let oracle = r.distinguishes(side, rep);
            let mapped = edges_hit(c, cut, &path);
            ensure(oracle == mapped, || format!("unit {u}, cut {cut:?}: oracle {oracle}, projection {mapped}"))?;
        }
    }
    Ok(())
}

fn check_one_edge_per_cycle(c: &Carcass, _: &OracleReport) -> CheckResult {
    for u in stretched_units(c) {
        let mut per_cycle = BTreeMap::new();
        for e in c.projection.units[u].edges(&c.skeleton) {
            if let EdgeKind::Cycle(cy) = c.skeleton.edges[e].kind {
                *per_cycle.entry(cy).or_insert(0) += 1;
            }
        }
        ensure(per_cycle.values().all(|&k| k <= 1), || format!("unit {u} uses two edges of a cycle"))?;
    }
    Ok(())
}

fn check_edge_projection(c: &Carcass, _: &OracleReport) -> CheckResult {
    let sides = minimal_cuts_with_sides(c);
    let just_sides: Vec<SteinerSet> = sides.iter().map(|&(_, s)| s).collect();
    for (x, y, id) in flesh_edges(c) {
        let path = e2s(c.project_edge(x, y))?.edges(&c.skeleton);
        let oracle = e2s(subdivision_distinguishing(&c.ctx, id, &just_sides))?;
        for (i, &(cut, _)) in sides.iter().enumerate() {
            let mapped = edges_hit(c, cut, &path);
            ensure(oracle[i] == mapped, || format!("edge ({x},{y}), cut {cut:?}: oracle {}, projection {mapped}", oracle[i]))?;
        }
    }
    Ok(())
}

fn check_prefix_suffix(c: &Carcass, _: &OracleReport) -> CheckResult {
    let sk = &c.skeleton;
    for (x, y, _) in flesh_edges(c) {
        let pxy = e2s(c.project_edge(x, y))?;
        let (start, end) = pxy.ends();
        let path = pxy.edges(sk);
        for (unit, at_start) in [(x, true), (y, false)] {
            let p = c.projection.units[unit];
            let edges = p.edges(sk);
            let ok = match p {
                Projection::Node(v) => v == if at_start { start } else { end },
                Projection::Path(..) => {
                    let k = edges.len();
                    let part: BTreeSet<usize> =
                        if at_start { path[..k.min(path.len())].iter() } else { path[path.len().saturating_sub(k)..].iter() }.copied().collect();
                    k <= path.len() && part == edges.iter().copied().collect()
                }
            };
            ensure(ok, || format!("edge ({x},{y}): projection of unit {unit} is not at the right end"))?;
        }
        for (unit, other) in [(x, y), (y, x)] {
            if c.flesh.kind[unit] == UnitKind::Terminal {
                let Projection::Node(v) = c.projection.units[unit] else { unreachable!() };
                let (a, b) = c.projection.units[other].ends();
                let inner = c.projection.units[other].edges(sk).iter().any(|&e| {
                    let ed = sk.edges[e];
                    (ed.a == v || ed.b == v) && v != a && v != b
                });
                ensure(!inner, || format!("terminal unit {unit} lies strictly inside the projection of {other}"))?;
            }
        }
    }
    Ok(())
}

fn check_inherent_partition(c: &Carcass, r: &OracleReport) -> CheckResult {
    let g = c.graph();
    let sides = minimal_cuts_with_sides(c);
    for u in stretched_units(c) {
        let rep = c.flesh.units[u][0];
        let (a, b) = c.flesh.inherent[u].clone().ok_or_else(|| format!("unit {u} has no inherent partition"))?;
        let weight = |es: &[usize]| es.iter().map(|&e| g.edge(e).mult as u64).sum::<u64>();
        ensure(weight(&a) == weight(&b), || format!("unit {u}: unbalanced partition"))?;
        for &(cut, side) in sides.iter().filter(|&&(_, s)| r.distinguishes(s, rep)) {
            let strip = e2s(strip_of_side(c, side))?;
            let (ins, outs) = e2s(strip.inherent_partition(strip.phi[rep]))?;
            let (mut ins, mut outs) = (ins, outs);
            ins.sort_unstable();
            outs.sort_unstable();
            ensure((ins == a && outs == b) || (ins == b && outs == a), || format!("unit {u}: partition in the strip of {cut:?} differs"))?;
        }
    }
    Ok(())
}

fn check_distinctness(c: &Carcass, _: &OracleReport) -> CheckResult {
    for (cut, side) in minimal_cuts_with_sides(c) {
        let strip = e2s(strip_of_side(c, side))?;
        for x in (0..strip.vertex_count()).filter(|&x| !strip.is_terminal(x)) {
            let class = &strip.classes[x];
            let u = c.flesh.phi[class[0]];
            ensure(*class == c.flesh.units[u], || format!("strip of {cut:?}: class {class:?} is not one unit"))?;
            ensure(c.flesh.kind[u] == UnitKind::Stretched, || format!("strip of {cut:?}: unit {u} is not stretched"))?;
        }
    }
    Ok(())
}

fn check_forbidden_combinations(c: &Carcass, r: &OracleReport) -> CheckResult {
    let sk = &c.skeleton;
    let full = sk.full();
    let sides = minimal_cuts_with_sides(c);
    for u in stretched_units(c) {
        let rep = c.flesh.units[u][0];
        for (ci, cyc) in sk.cycles.iter().enumerate() {
            let k = cyc.len();
            let adjacent = (0..k).filter(|&i| r.distinguishes(sk.cycle_node_set(ci, (i + 1) % k), rep)).count();
            ensure(adjacent <= 2, || format!("unit {u}: {adjacent} adjacent-pair cuts of cycle {ci}"))?;
        }
        let hits: Vec<SteinerSet> = sides.iter().map(|&(_, s)| s).filter(|&s| r.distinguishes(s, rep)).collect();
        for (i, &a) in hits.iter().enumerate() {
            for &b in &hits[i + 1..] {
                ensure(!crosses(a, b, full), || format!("unit {u} distinguished by two crossing cuts"))?;
            }
        }
    }
    Ok(())
}

/// Both orientations of every S-mincut.
fn oriented_mincuts(r: &OracleReport) -> Vec<u32> {
    r.mincuts.iter().flat_map(|&m| [m, !m & r.vertex_full()]).collect()
}

const TRIPLE_BOUND: usize = 7;

fn check_four_point(c: &Carcass, r: &OracleReport) -> CheckResult {
    if r.n > TRIPLE_BOUND {
        return Ok(());
    }
    let cap = capacity_table(c.graph());
    let full = r.vertex_full();
    let all = oriented_mincuts(r);
    for (i, &a) in all.iter().enumerate() {
        for (j, &b) in all.iter().enumerate().skip(i) {
            for &d in &all[j..] {
                let lhs = cap[a as usize] + cap[b as usize] + cap[d as usize];
                let (na, nb, nd) = (!a & full, !b & full, !d & full);
                let rhs = cap[(a & nb & nd) as usize] + cap[(na & b & nd) as usize] + cap[(na & nb & d) as usize] + cap[(a & b & d) as usize];
                ensure(lhs >= rhs, || format!("four-point fails for {a:#b}, {b:#b}, {d:#b}"))?;
            }
        }
    }
    Ok(())
}

fn check_disjoint_triples(c: &Carcass, r: &OracleReport) -> CheckResult {
    if r.n > TRIPLE_BOUND {
        return Ok(());
    }
    let s_mask: u32 = c.ctx.steiner().iter().fold(0, |m, &v| m | 1 << v);
    let all = oriented_mincuts(r);
    for (i, &a) in all.iter().enumerate() {
        for (j, &b) in all.iter().enumerate().skip(i + 1) {
            if a & b & s_mask != 0 {
                continue;
            }
            for &d in &all[j + 1..] {
                if a & d & s_mask == 0 && b & d & s_mask == 0 {
                    ensure(a & b & d == 0, || format!("{a:#b}, {b:#b}, {d:#b} share a vertex"))?;
                }
            }
        }
    }
    Ok(())
}

fn check_crossing_family(_: &Carcass, r: &OracleReport) -> CheckResult {
    let full = r.full();
    for (i, &a) in r.valid_cuts.iter().enumerate() {
        for &b in &r.valid_cuts[i + 1..] {
            if !crosses(a, b, full) {
                continue;
            }
            let corners = [a.intersect(b), a.minus(b), b.minus(a), a.union(b).complement(full)];
            ensure(corners.iter().all(|&x| r.is_valid(x)), || format!("a corner of {a:?} and {b:?} is not valid"))?;
            let diagonal = a.minus(b).union(b.minus(a));
            ensure(!r.is_valid(diagonal), || format!("the diagonal of {a:?} and {b:?} is valid"))?;
        }
    }
    Ok(())
}

fn check_laminar_count(c: &Carcass, r: &OracleReport) -> CheckResult {
    let k = c.valid.laminar_cuts().count();
    ensure(k <= 2 * r.steiner.len(), || format!("{k} laminar valid cuts for |S| = {}", r.steiner.len()))
}

fn check_orientation_roundtrip(c: &Carcass, _: &OracleReport) -> CheckResult {
    for (cut, side) in minimal_cuts_with_sides(c) {
        let strip = e2s(strip_of_side(c, side))?;
        let again = e2s(Strip::assemble(c.graph(), &strip.phi, SOURCE, SINK, None))?;
        ensure(again == strip, || format!("strip of {cut:?} changes after re-orientation"))?;
    }
    Ok(())
}

fn check_flow_balance(c: &Carcass, _: &OracleReport) -> CheckResult {
    for (cut, side) in minimal_cuts_with_sides(c) {
        let strip = e2s(strip_of_side(c, side))?;
        e2s(strip.check_balanced())?;
        let (out, inn) = (strip.out_degree(SOURCE), strip.in_degree(SINK));
        ensure(out == inn && out == c.lambda(), || format!("strip of {cut:?}: source out {out}, sink in {inn}"))?;
    }
    Ok(())
}

fn check_transversal_bijection(c: &Carcass, r: &OracleReport) -> CheckResult {
    for (cut, side) in minimal_cuts_with_sides(c) {
        let strip = e2s(strip_of_side(c, side))?;
        let mut bunch = r.bunch(side);
        bunch.sort_unstable();
        let trans = e2s(transversal_cuts(&strip))?;
        ensure(trans == bunch, || format!("strip of {cut:?}: {} transversal cuts, {} mincuts", trans.len(), bunch.len()))?;
    }
    Ok(())
}

fn check_strip_from_carcass(c: &Carcass, _: &OracleReport) -> CheckResult {
    for (cut, side) in minimal_cuts_with_sides(c) {
        let direct = e2s(strip_of_side(c, side))?;
        let derived = e2s(queries::strip_for_minimal_cut(c, cut))?;
        ensure(direct == derived, || format!("strip of {cut:?} differs from the flow-built strip"))?;
    }
    Ok(())
}

fn check_mincut_cover(c: &Carcass, r: &OracleReport) -> CheckResult {
    let full = r.vertex_full();
    let anchor = 1u32 << r.steiner[0];
    let mut found = BTreeSet::new();
    for (cut, _) in minimal_cuts_with_sides(c) {
        let strip = e2s(queries::strip_for_minimal_cut(c, cut))?;
        for m in e2s(transversal_cuts(&strip))? {
            found.insert(if m & anchor != 0 { m } else { !m & full });
        }
    }
    let oracle: BTreeSet<u32> = r.mincuts.iter().copied().collect();
    ensure(found == oracle, || format!("transversal cuts give {} mincuts, oracle {}", found.len(), oracle.len()))
}

fn check_separating_query(c: &Carcass, r: &OracleReport) -> CheckResult {
    for x in 0..c.flesh.unit_count() {
        for y in 0..c.flesh.unit_count() {
            let rep = e2s(queries::report_separating_mincut(c, x, y))?;
            match rep {
                None => ensure(x == y, || format!("no cut reported for units {x}, {y}"))?,
                Some(rc) => {
                    ensure(rc.capacity == r.lambda, || format!("units {x}, {y}: capacity {}", rc.capacity))?;
                    let (vx, vy) = (c.flesh.units[x][0], c.flesh.units[y][0]);
                    ensure(rc.cut.separates(vx, vy), || format!("units {x}, {y}: cut does not separate them"))?;
                    let s_side = rc.cut.inside().iter().filter(|&&v| c.ctx.is_steiner(v)).count();
                    ensure(s_side > 0 && s_side < r.steiner.len(), || format!("units {x}, {y}: cut does not divide S"))?;
                }
            }
        }
    }
    Ok(())
}

fn steiner_pairs(c: &Carcass) -> Vec<(usize, usize, usize, usize)> {
    let s = c.ctx.steiner();
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if c.skeleton.phi[i] != c.skeleton.phi[j] {
                out.push((i, j, s[i], s[j]));
            }
        }
    }
    out
}

fn check_h_st(c: &Carcass, r: &OracleReport) -> CheckResult {
    for (i, j, s, t) in steiner_pairs(c) {
        let h = e2s(queries::build_h_st(c, s, t))?;
        let mut count: BTreeMap<SteinerSet, usize> = BTreeMap::new();
        for cut in h.minimal_cuts() {
            *count.entry(h.skeleton.cut_side(cut).anchored(r.full())).or_default() += 1;
        }
        let got: Vec<SteinerSet> = count.keys().copied().collect();
        let want = r.valid_cuts_separating(i, j);
        ensure(got == want, || format!("pair ({i},{j}): subcactus gives {got:?}, oracle {want:?}"))?;
        ensure(count.values().all(|k| (1..=3).contains(k)), || format!("pair ({i},{j}): bad multiplicity"))?;
    }
    let same: Vec<_> = (0..r.steiner.len())
        .flat_map(|i| (i + 1..r.steiner.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| c.skeleton.phi[i] == c.skeleton.phi[j])
        .collect();
    for (i, j) in same {
        let res = queries::build_h_st(c, r.steiner[i], r.steiner[j]);
        ensure(matches!(res, Err(Error::NotSeparated(..))), || format!("pair ({i},{j}) should not be separated"))?;
    }
    Ok(())
}

fn check_dst(c: &Carcass, _: &OracleReport) -> CheckResult {
    for (i, j, s, t) in steiner_pairs(c) {
        let flow = e2s(max_flow(c.graph(), &[s], &[t]))?;
        if flow.value != c.lambda() {
            return Err(format!("pair ({i},{j}) is separated in the skeleton but maxflow is {}", flow.value));
        }
        let (_, strip) = e2s(queries::build_dst(c, s, t))?;
        let direct = e2s(build_strip(c.graph(), &[s], &[t]))?;
        ensure(strip == direct, || format!("pair ({i},{j}): strip differs from the flow-built strip"))?;
    }
    Ok(())
}

fn check_rings(c: &Carcass, _: &OracleReport) -> CheckResult {
    for cy in 0..c.skeleton.cycles.len() {
        let ring = e2s(queries::ring_view(c, cy))?;
        ensure(ring.graph.is_connected(), || format!("ring of cycle {cy} is disconnected"))?;
    }
    ensure(matches!(queries::ring_view(c, c.skeleton.cycles.len()), Err(Error::NoSuchCycle(_))), || {
        "ring view of a missing cycle did not fail".into()
    })
}

fn check_unidirectionality(c: &Carcass, r: &OracleReport) -> CheckResult {
    let sk = &c.skeleton;
    let sides = minimal_cuts_with_sides(c);
    for (x, y, _) in flesh_edges(c) {
        let pxy = e2s(c.project_edge(x, y))?;
        let (start, _) = pxy.ends();
        let path = pxy.edges(sk);
        let (vx, vy) = (c.flesh.units[x][0], c.flesh.units[y][0]);
        for &(cut, side) in sides.iter().filter(|&&(cut, _)| edges_hit(c, cut, &path)) {
            let start_inside = sk.node_on_cut_side(cut, start);
            for m in r.bunch(side) {
                let (ix, iy) = (m >> vx & 1 == 1, m >> vy & 1 == 1);
                if ix != iy {
                    ensure(ix == start_inside, || format!("edge ({x},{y}): cut {cut:?} puts x on the far side"))?;
                }
            }
        }
    }
    Ok(())
}

fn check_flow_budget(c: &Carcass, r: &OracleReport) -> CheckResult {
    let k = r.steiner.len() as u64;
    let t = c.skeleton.tree_edges().count() as u64;
    let bound = (1u64 << (k - 1)) + 3 * t + k;
    ensure(c.flow_calls <= bound, || format!("{} flow calls, bound {bound}", c.flow_calls))
}

fn check_queries_flow_free(c: &Carcass, _: &OracleReport) -> CheckResult {
    let before = flow_calls();
    for (cut, _) in minimal_cuts_with_sides(c) {
        e2s(queries::strip_for_minimal_cut(c, cut))?;
    }
    for (_, _, s, t) in steiner_pairs(c) {
        e2s(queries::build_dst(c, s, t))?;
    }
    for x in 0..c.flesh.unit_count() {
        for y in 0..c.flesh.unit_count() {
            e2s(queries::report_separating_mincut(c, x, y))?;
        }
    }
    for cy in 0..c.skeleton.cycles.len() {
        e2s(queries::ring_view(c, cy))?;
    }
    let used = flow_calls() - before;
    ensure(used == 0, || format!("queries issued {used} max-flow calls"))
}
