//! The skeleton: a t-cactus whose minimal cuts are exactly the valid cuts of `S`.
//!
//! A cactus node is either a *tree node* or a *cycle node* (an empty node on a
//! cycle, with one tree edge hanging off it). The companion tree `t(ℋ)`
//! contracts every cycle into a single *implant* vertex; its edges are the
//! cactus tree edges. Path questions about the cactus are answered on `t(ℋ)`
//! and then refined inside the implanted cycles.

mod build;
pub mod tree;

pub use build::{build_laminar_tree, build_skeleton, implant_cycles, order_circular_family, LaminarTree};

use crate::error::{breach, Error, Result};
use crate::validcuts::{SteinerSet, ValidCutSet};
use tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Tree,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Tree,
    /// Edge of the cycle with this id.
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkNode {
    pub steiner: SteinerSet,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkEdge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

impl SkEdge {
    pub fn other(&self, x: usize) -> usize {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }

    pub fn is_tree(&self) -> bool {
        self.kind == EdgeKind::Tree
    }
}

/// A cycle in cyclic order: `edges[i]` joins `nodes[i]` and `nodes[(i+1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A minimal cut of the cactus: one tree edge, or two non-adjacent edges of
/// one cycle identified by their positions `i < j` in [`Cycle::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinimalCut {
    Tree(usize),
    CyclePair { cycle: usize, i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub nodes: Vec<SkNode>,
    pub edges: Vec<SkEdge>,
    pub cycles: Vec<Cycle>,
    /// Steiner index to node.
    pub phi: Vec<usize>,
    pub steiner_count: usize,
    adj: Vec<Vec<(usize, usize)>>,
    cycle_pos: Vec<Option<(usize, usize)>>,
    tree_side: Vec<SteinerSet>,
    cycle_sets: Vec<Vec<SteinerSet>>,
    /// Companion tree over compressed nodes.
    pub t: RootedTree,
    /// Cactus node to vertex of `t`.
    pub f: Vec<usize>,
    /// Vertex of `t` to the cycle it stands for, if it is an implant vertex.
    pub implant_of: Vec<Option<usize>>,
}

impl Skeleton {
    /// Assembles a skeleton and computes its derived indices. The parts must
    /// form a t-cactus: cycles are vertex-disjoint and every edge whose kind
    /// names a cycle appears in that cycle's edge list.
    pub fn from_parts(nodes: Vec<SkNode>, edges: Vec<SkEdge>, cycles: Vec<Cycle>, phi: Vec<usize>, steiner_count: usize) -> Result<Skeleton> {
        let n = nodes.len();
        if n == 0 {
            return breach("skeleton has no nodes");
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.a >= n || e.b >= n || e.a == e.b {
                return breach(format!("skeleton edge {i} is malformed"));
            }
            adj[e.a].push((e.b, i));
            adj[e.b].push((e.a, i));
        }
        let mut cycle_pos = vec![None; n];
        for (c, cyc) in cycles.iter().enumerate() {
            if cyc.nodes.len() != cyc.edges.len() || cyc.nodes.len() < 3 {
                return breach(format!("cycle {c} is malformed"));
            }
            for (p, &x) in cyc.nodes.iter().enumerate() {
                if x >= n || cycle_pos[x].is_some() {
                    return breach(format!("node {x} lies on two cycles"));
                }
                cycle_pos[x] = Some((c, p));
            }
            for (p, &e) in cyc.edges.iter().enumerate() {
                let (u, v) = (cyc.nodes[p], cyc.nodes[(p + 1) % cyc.len()]);
                match edges.get(e) {
                    Some(ed) if ed.kind == EdgeKind::Cycle(c) && ((ed.a, ed.b) == (u, v) || (ed.a, ed.b) == (v, u)) => {}
                    _ => return breach(format!("cycle {c} edge list does not match its nodes")),
                }
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if let EdgeKind::Cycle(c) = e.kind {
                if cycles.get(c).is_none_or(|cyc| !cyc.edges.contains(&i)) {
                    return breach(format!("edge {i} claims cycle {c}"));
                }
            }
        }

        // Companion tree: tree nodes keep their own vertex, each cycle gets one.
        let mut f = vec![usize::MAX; n];
        let mut count = 0;
        for x in 0..n {
            if cycle_pos[x].is_none() {
                f[x] = count;
                count += 1;
            }
        }
        let first_implant = count;
        for x in 0..n {
            if let Some((c, _)) = cycle_pos[x] {
                f[x] = first_implant + c;
            }
        }
        let tcount = first_implant + cycles.len();
        let mut implant_of = vec![None; tcount];
        for c in 0..cycles.len() {
            implant_of[first_implant + c] = Some(c);
        }
        let tedges: Vec<(usize, usize, usize)> = edges.iter().enumerate().filter(|(_, e)| e.is_tree()).map(|(i, e)| (f[e.a], f[e.b], i)).collect();
        if tedges.len() + 1 != tcount || !is_tree(tcount, &tedges) {
            return breach("compressing cycles does not yield a tree");
        }
        let mut t = RootedTree::new(tcount, f[0], &tedges);
        // Children of an implant vertex follow the cycle order of their attachment nodes.
        for c in 0..cycles.len() {
            let v = first_implant + c;
            let pos_of_child = |child: usize| -> usize {
                let e = edges[t.parent_edge[child].expect("child")];
                let inside = if f[e.a] == v { e.a } else { e.b };
                cycle_pos[inside].expect("cycle node").1
            };
            let mut ch = t.children[v].clone();
            ch.sort_by_key(|&x| pos_of_child(x));
            t.children[v] = ch;
        }

        let mut sk =
            Skeleton { nodes, edges, cycles, phi, steiner_count, adj, cycle_pos, tree_side: Vec::new(), cycle_sets: Vec::new(), t, f, implant_of };
        sk.tree_side =
            (0..sk.edges.len()).map(|e| if sk.edges[e].is_tree() { sk.collect_steiner(sk.edges[e].a, &[e]) } else { SteinerSet::EMPTY }).collect();
        sk.cycle_sets = (0..sk.cycles.len())
            .map(|c| {
                let cyc = &sk.cycles[c];
                (0..cyc.len())
                    .map(|p| {
                        let prev = cyc.edges[(p + cyc.len() - 1) % cyc.len()];
                        sk.collect_steiner(cyc.nodes[p], &[prev, cyc.edges[p]])
                    })
                    .collect()
            })
            .collect();
        Ok(sk)
    }

    /// Union of Steiner sets reachable from `start` without crossing `blocked`.
    fn collect_steiner(&self, start: usize, blocked: &[usize]) -> SteinerSet {
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut acc = SteinerSet::EMPTY;
        while let Some(x) = stack.pop() {
            acc = acc.union(self.nodes[x].steiner);
            for &(y, e) in &self.adj[x] {
                if !blocked.contains(&e) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        acc
    }

    pub fn full(&self) -> SteinerSet {
        SteinerSet::full(self.steiner_count)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    /// `(neighbour, edge id)` pairs.
    pub fn incident(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[x]
    }

    /// `(cycle id, position)` of a cycle node.
    pub fn cycle_position(&self, x: usize) -> Option<(usize, usize)> {
        self.cycle_pos[x]
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].is_tree())
    }

    /// `S(ν, e)`: Steiner vertices of the subcactus containing `ν` once the
    /// tree edge `e` is removed.
    pub fn side_of_tree_edge(&self, node: usize, e: usize) -> Result<SteinerSet> {
        let edge = self.edges.get(e).ok_or_else(|| Error::InvalidArgument(format!("no edge {e}")))?;
        if !edge.is_tree() {
            return Err(Error::InvalidArgument(format!("edge {e} is a cycle edge")));
        }
        if edge.a != node && edge.b != node {
            return Err(Error::InvalidArgument(format!("edge {e} is not incident to node {node}")));
        }
        Ok(if node == edge.a { self.tree_side[e] } else { self.tree_side[e].complement(self.full()) })
    }

    /// `S(ν_i)` for the node at position `p` of cycle `c`.
    pub fn cycle_node_set(&self, c: usize, p: usize) -> SteinerSet {
        self.cycle_sets[c][p]
    }

    /// `S(ν_p, ν_q)`: union of `S(ν_i)` for `i = p..q` cyclically.
    pub fn side_of_cycle_segment(&self, c: usize, p_node: usize, q_node: usize) -> Result<SteinerSet> {
        let cyc = self.cycles.get(c).ok_or(Error::NoSuchCycle(c))?;
        let pos = |x: usize| match self.cycle_pos.get(x).copied().flatten() {
            Some((cc, p)) if cc == c => Ok(p),
            _ => Err(Error::InvalidArgument(format!("node {x} is not on cycle {c}"))),
        };
        let (p, q) = (pos(p_node)?, pos(q_node)?);
        let mut acc = SteinerSet::EMPTY;
        let mut i = p;
        loop {
            acc = acc.union(self.cycle_sets[c][i]);
            if i == q {
                break;
            }
            i = (i + 1) % cyc.len();
        }
        Ok(acc)
    }

    /// All tree edges followed by all non-adjacent cycle-edge pairs.
    pub fn minimal_cuts(&self) -> Vec<MinimalCut> {
        let mut out: Vec<MinimalCut> = self.tree_edges().map(MinimalCut::Tree).collect();
        for (c, cyc) in self.cycles.iter().enumerate() {
            let k = cyc.len();
            for i in 0..k {
                for j in i + 2..k {
                    if !(i == 0 && j == k - 1) {
                        out.push(MinimalCut::CyclePair { cycle: c, i, j });
                    }
                }
            }
        }
        out
    }

    /// The Steiner side of a minimal cut: `S(a, e)` for a tree edge `(a, b)`,
    /// or `S(ν_{i+1}, ν_j)` for a cycle pair.
    pub fn cut_side(&self, cut: MinimalCut) -> SteinerSet {
        match cut {
            MinimalCut::Tree(e) => self.tree_side[e],
            MinimalCut::CyclePair { cycle, i, j } => (i + 1..=j).fold(SteinerSet::EMPTY, |acc, p| acc.union(self.cycle_sets[cycle][p])),
        }
    }

    /// Cactus edges removed by a minimal cut.
    pub fn cut_edges(&self, cut: MinimalCut) -> Vec<usize> {
        match cut {
            MinimalCut::Tree(e) => vec![e],
            MinimalCut::CyclePair { cycle, i, j } => vec![self.cycles[cycle].edges[i], self.cycles[cycle].edges[j]],
        }
    }

    /// Whether `node` lies on the side returned by [`Skeleton::cut_side`].
    pub fn node_on_cut_side(&self, cut: MinimalCut, node: usize) -> bool {
        match cut {
            MinimalCut::Tree(e) => {
                let (a, b) = (self.f[self.edges[e].a], self.f[self.edges[e].b]);
                let child = if self.t.parent[a] == Some(b) { a } else { b };
                self.t.is_ancestor(child, self.f[node]) == (child == a)
            }
            MinimalCut::CyclePair { cycle, i, j } => {
                let p = self.port_position(cycle, node);
                i < p && p <= j
            }
        }
    }

    /// The node of cycle `c` through which every path from the cycle to
    /// `target` leaves it (`target` itself when it lies on the cycle).
    pub fn port(&self, c: usize, target: usize) -> usize {
        let imp = self.implant_vertex(c);
        if self.f[target] == imp {
            return target;
        }
        let next = self.t.step_toward(imp, self.f[target]).expect("distinct vertices");
        let e = self.edges[self.t.edge_between(imp, next)];
        if self.f[e.a] == imp {
            e.a
        } else {
            e.b
        }
    }

    fn port_position(&self, c: usize, target: usize) -> usize {
        self.cycle_pos[self.port(c, target)].expect("port lies on the cycle").1
    }

    pub fn implant_vertex(&self, c: usize) -> usize {
        self.f[self.cycles[c].nodes[0]]
    }

    /// Cycle edge joining two nodes of the same cycle, if they are adjacent on it.
    pub fn cycle_edge_between(&self, x: usize, y: usize) -> Option<usize> {
        self.adj[x].iter().find(|&&(z, e)| z == y && !self.edges[e].is_tree()).map(|&(_, e)| e)
    }

    /// Edges of the proper path from `a` to `b`, in order, or `None` when the
    /// unique path through `t(ℋ)` would need two edges of some cycle.
    pub fn proper_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let tp = self.t.path(self.f[a], self.f[b]);
        let tree_edges: Vec<usize> = tp.windows(2).map(|w| self.t.edge_between(w[0], w[1])).collect();
        let mut out = Vec::new();
        for (i, &v) in tp.iter().enumerate() {
            if let Some(c) = self.implant_of[v] {
                let on_cycle = |e: usize| {
                    let ed = self.edges[e];
                    if self.f[ed.a] == self.implant_vertex(c) {
                        ed.a
                    } else {
                        ed.b
                    }
                };
                let entry = if i == 0 { a } else { on_cycle(tree_edges[i - 1]) };
                let exit = if i + 1 == tp.len() { b } else { on_cycle(tree_edges[i]) };
                if entry != exit {
                    out.push(self.cycle_edge_between(entry, exit)?);
                }
            }
            if i < tree_edges.len() {
                out.push(tree_edges[i]);
            }
        }
        Some(out)
    }

    /// Whether the path between `a` and `b` uses cactus edge `e`.
    pub fn path_contains_edge(&self, a: usize, b: usize, e: usize) -> bool {
        let (fa, fb) = (self.f[a], self.f[b]);
        let ed = self.edges[e];
        match ed.kind {
            EdgeKind::Tree => self.t.on_path(self.f[ed.a], fa, fb) && self.t.on_path(self.f[ed.b], fa, fb),
            EdgeKind::Cycle(c) => {
                if !self.t.on_path(self.implant_vertex(c), fa, fb) {
                    return false;
                }
                let (pa, pb) = (self.port(c, a), self.port(c, b));
                (pa, pb) == (ed.a, ed.b) || (pa, pb) == (ed.b, ed.a)
            }
        }
    }

    /// Whether the paths `p1` and `p2` share a tree edge or both use edges of
    /// one common cycle.
    pub fn paths_intersect(&self, p1: (usize, usize), p2: (usize, usize)) -> bool {
        let (a1, b1, a2, b2) = (self.f[p1.0], self.f[p1.1], self.f[p2.0], self.f[p2.1]);
        let mut common: Vec<usize> = [self.t.lca(a1, a2), self.t.lca(a1, b2), self.t.lca(b1, a2), self.t.lca(b1, b2)]
            .into_iter()
            .filter(|&x| self.t.on_path(x, a1, b1) && self.t.on_path(x, a2, b2))
            .collect();
        common.sort_unstable();
        common.dedup();
        match common.as_slice() {
            [] => false,
            [v] => match self.implant_of[*v] {
                None => false,
                Some(c) => self.port(c, p1.0) != self.port(c, p1.1) && self.port(c, p2.0) != self.port(c, p2.1),
            },
            _ => true,
        }
    }

    /// Tree nodes of degree one.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&x| self.adj[x].len() == 1).collect()
    }

    /// Every leaf holds a nonempty Steiner set forming an indivisible valid cut.
    pub fn check_leaves(&self, valid: &ValidCutSet) -> Result<()> {
        for x in self.leaves() {
            let s = self.nodes[x].steiner;
            if s.is_empty() || !valid.is_valid(s) || !valid.is_indivisible(s) {
                return breach(format!("leaf {x} does not hold an indivisible valid cut"));
            }
        }
        Ok(())
    }

    /// Cycles have at least four edges; cycle nodes are empty with degree three.
    pub fn check_cycles(&self) -> Result<()> {
        let mut degree = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            degree[e.a] += 1;
            degree[e.b] += 1;
        }
        for (c, cyc) in self.cycles.iter().enumerate() {
            if cyc.len() < 4 || cyc.edges.len() != cyc.nodes.len() {
                return breach(format!("cycle {c} has fewer than four edges"));
            }
            for &e in &cyc.edges {
                if self.edges.get(e).map(|ed| ed.kind) != Some(EdgeKind::Cycle(c)) {
                    return breach(format!("cycle {c} lists a missing edge"));
                }
            }
            let on_cycle = self.edges.iter().filter(|e| e.kind == EdgeKind::Cycle(c)).count();
            if on_cycle != cyc.len() {
                return breach(format!("cycle {c} has {on_cycle} edges for {} nodes", cyc.len()));
            }
            for &x in &cyc.nodes {
                if !self.nodes[x].steiner.is_empty() || self.nodes[x].kind != NodeKind::Cycle || degree[x] != 3 {
                    return breach(format!("cycle node {x} is not an empty degree-3 node"));
                }
            }
        }
        Ok(())
    }

    /// Empty tree nodes have degree at least three.
    pub fn check_empty_nodes(&self) -> Result<()> {
        for (x, node) in self.nodes.iter().enumerate() {
            if node.kind == NodeKind::Tree && node.steiner.is_empty() && self.adj[x].len() < 3 {
                return breach(format!("empty tree node {x} has degree {}", self.adj[x].len()));
            }
        }
        Ok(())
    }

    /// Node Steiner sets partition `S` and `phi` agrees with them.
    pub fn check_phi(&self) -> Result<()> {
        let mut acc = SteinerSet::EMPTY;
        for node in &self.nodes {
            if !acc.intersect(node.steiner).is_empty() {
                return breach("two nodes share a Steiner vertex");
            }
            acc = acc.union(node.steiner);
        }
        if acc != self.full() {
            return breach("some Steiner vertex is not stored in any node");
        }
        for (i, &x) in self.phi.iter().enumerate() {
            if !self.nodes[x].steiner.contains(i) {
                return breach(format!("phi of Steiner index {i} is wrong"));
            }
        }
        Ok(())
    }

    /// Removes one edge, keeping all other ids stable up to the shift. Only
    /// the raw fields are updated; intended for fault-injection tests.
    pub fn without_edge(&self, e: usize) -> Skeleton {
        let mut sk = self.clone();
        sk.edges.remove(e);
        for cyc in &mut sk.cycles {
            cyc.edges.retain(|&x| x != e);
            for x in &mut cyc.edges {
                if *x > e {
                    *x -= 1;
                }
            }
        }
        sk.adj = vec![Vec::new(); sk.nodes.len()];
        for (i, ed) in sk.edges.iter().enumerate() {
            sk.adj[ed.a].push((ed.b, i));
            sk.adj[ed.b].push((ed.a, i));
        }
        sk
    }
}

fn is_tree(n: usize, edges: &[(usize, usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &(u, v, _) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}
