use crate::error::{breach, Error, Result};
use crate::validcuts::{SteinerSet, ValidCutSet};

use super::{Cycle, EdgeKind, NodeKind, SkEdge, SkNode, Skeleton};

/// Intermediate tree whose edges represent the laminar valid cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarTree {
    pub nodes: Vec<SteinerSet>,
    pub edges: Vec<(usize, usize)>,
    /// Crossing cuts hosted by each node.
    pub crossing: Vec<Vec<SteinerSet>>,
}

impl LaminarTree {
    fn incident(&self, x: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == x || self.edges[e].1 == x).collect()
    }

    /// Steiner vertices beyond edge `e` as seen from node `x`.
    pub fn far_set(&self, x: usize, e: usize) -> SteinerSet {
        let (a, b) = self.edges[e];
        let start = if a == x { b } else { a };
        let mut seen = vec![false; self.nodes.len()];
        seen[x] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut acc = SteinerSet::EMPTY;
        while let Some(y) = stack.pop() {
            acc = acc.union(self.nodes[y]);
            for (i, &(p, q)) in self.edges.iter().enumerate() {
                if i == e {
                    continue;
                }
                let z = if p == y {
                    q
                } else if q == y {
                    p
                } else {
                    continue;
                };
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        acc
    }

    /// Far sets of every incident edge, in incident-edge order.
    pub fn regions(&self, x: usize) -> Vec<(usize, SteinerSet)> {
        self.incident(x).into_iter().map(|e| (e, self.far_set(x, e))).collect()
    }

    /// The unique node none of whose far sets is split by `side`.
    fn host(&self, side: SteinerSet) -> Result<usize> {
        let hosts: Vec<usize> = (0..self.nodes.len())
            .filter(|&x| self.regions(x).iter().all(|&(_, far)| far.is_subset(side) || far.intersect(side).is_empty()))
            .collect();
        match hosts.as_slice() {
            [x] => Ok(*x),
            _ => breach(format!("cut {side} has {} host nodes in the laminar tree", hosts.len())),
        }
    }
}

/// Places every laminar cut on its own edge by repeatedly splitting the host
/// node, then assigns each crossing cut to its (empty) host node.
pub fn build_laminar_tree(valid: &ValidCutSet) -> Result<LaminarTree> {
    let full = valid.full();
    let mut t = LaminarTree { nodes: vec![full], edges: Vec::new(), crossing: vec![Vec::new()] };
    let mut laminar: Vec<SteinerSet> = valid.laminar_cuts().collect();
    laminar.sort_by_key(|&x| (x.len().min(valid.steiner_count - x.len()), x));
    for x in laminar {
        let mu = t.host(x)?;
        let regions = t.regions(mu);
        let held = t.nodes[mu];
        let mu2 = t.nodes.len();
        t.nodes[mu] = held.intersect(x);
        t.nodes.push(held.minus(x));
        t.crossing.push(Vec::new());
        for (e, far) in regions {
            if !far.is_subset(x) {
                let (a, b) = t.edges[e];
                t.edges[e] = if a == mu { (mu2, b) } else { (a, mu2) };
            }
        }
        t.edges.push((mu, mu2));
    }
    for x in valid.crossing_cuts() {
        let mu = t.host(x)?;
        if !t.nodes[mu].is_empty() || t.incident(mu).len() < 4 {
            return breach(format!("crossing cut {x} lands on a nonempty or low-degree node"));
        }
        t.crossing[mu].push(x);
    }
    Ok(t)
}

/// Cyclic order of the parts such that every contiguous run is a valid cut
/// and every hosted crossing cut is such a run.
pub fn order_circular_family(parts: &[SteinerSet], crossing: &[SteinerSet], valid: &ValidCutSet) -> Result<Vec<usize>> {
    let l = parts.len();
    if l < 4 {
        return Err(Error::NoConsistentCycle(format!("only {l} parts")));
    }
    let candidates: Vec<Vec<usize>> = if l == 4 {
        vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]
    } else {
        let linked = |i: usize, j: usize| valid.is_valid(parts[i].union(parts[j]));
        let nbrs: Vec<Vec<usize>> = (0..l).map(|i| (0..l).filter(|&j| j != i && linked(i, j)).collect()).collect();
        if nbrs.iter().any(|n| n.len() != 2) {
            return Err(Error::NoConsistentCycle("adjacency graph is not 2-regular".into()));
        }
        let mut order = vec![0, nbrs[0][0]];
        while order.len() < l {
            let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
            let next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
            if next == 0 {
                return Err(Error::NoConsistentCycle("adjacency graph splits into several cycles".into()));
            }
            order.push(next);
        }
        vec![order]
    };
    let full = valid.full();
    for order in candidates {
        let mut segments = Vec::new();
        for start in 0..l {
            let mut acc = SteinerSet::EMPTY;
            for len in 1..l {
                acc = acc.union(parts[order[(start + len - 1) % l]]);
                segments.push(acc.anchored(full));
            }
        }
        let all_valid = segments.iter().all(|&s| valid.is_valid(s));
        let all_hosted = crossing.iter().all(|c| segments.contains(&c.anchored(full)));
        if all_valid && all_hosted && crossing.len() == l * (l - 3) / 2 {
            return Ok(order);
        }
    }
    Err(Error::NoConsistentCycle(format!("no cyclic order of {l} parts fits the crossing cuts")))
}

/// Replaces each node that hosts crossing cuts by a cycle of new empty nodes,
/// one per incident edge, arranged in the given order.
pub fn implant_cycles(t: &LaminarTree, orders: &[(usize, Vec<usize>)], steiner_count: usize) -> Result<Skeleton> {
    let mut nodes: Vec<(SteinerSet, NodeKind)> = t.nodes.iter().map(|&s| (s, NodeKind::Tree)).collect();
    let mut alive = vec![true; nodes.len()];
    let mut edges: Vec<SkEdge> = t.edges.iter().map(|&(a, b)| SkEdge { a, b, kind: EdgeKind::Tree }).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for (mu, order) in orders {
        let incident = t.incident(*mu);
        if incident.len() != order.len() {
            return breach(format!("order at node {mu} does not match its degree"));
        }
        let mut fresh = Vec::with_capacity(incident.len());
        for &e in &incident {
            let c = nodes.len();
            nodes.push((SteinerSet::EMPTY, NodeKind::Cycle));
            alive.push(true);
            let ed = &mut edges[e];
            if ed.a == *mu {
                ed.a = c;
            } else {
                ed.b = c;
            }
            fresh.push(c);
        }
        alive[*mu] = false;
        let ring: Vec<usize> = order.iter().map(|&i| fresh[i]).collect();
        cycles.push(ring);
    }

    let mut id = vec![usize::MAX; nodes.len()];
    let mut out_nodes = Vec::new();
    for (x, &(s, kind)) in nodes.iter().enumerate() {
        if alive[x] {
            id[x] = out_nodes.len();
            out_nodes.push(SkNode { steiner: s, kind });
        }
    }
    let mut out_edges: Vec<SkEdge> = edges.iter().map(|e| SkEdge { a: id[e.a], b: id[e.b], kind: EdgeKind::Tree }).collect();
    let mut out_cycles = Vec::new();
    for (c, ring) in cycles.iter().enumerate() {
        let ring: Vec<usize> = ring.iter().map(|&x| id[x]).collect();
        let mut cyc_edges = Vec::new();
        for p in 0..ring.len() {
            cyc_edges.push(out_edges.len());
            out_edges.push(SkEdge { a: ring[p], b: ring[(p + 1) % ring.len()], kind: EdgeKind::Cycle(c) });
        }
        out_cycles.push(Cycle { nodes: ring, edges: cyc_edges });
    }
    let mut phi = vec![usize::MAX; steiner_count];
    for (x, node) in out_nodes.iter().enumerate() {
        for i in node.steiner.iter() {
            phi[i] = x;
        }
    }
    if phi.contains(&usize::MAX) {
        return breach("a Steiner vertex is missing from the skeleton");
    }
    Skeleton::from_parts(out_nodes, out_edges, out_cycles, phi, steiner_count)
}

/// Full construction: laminar tree, cyclic orders, implanting.
pub fn build_skeleton(valid: &ValidCutSet) -> Result<Skeleton> {
    let t = build_laminar_tree(valid)?;
    let mut orders = Vec::new();
    for mu in 0..t.nodes.len() {
        if t.crossing[mu].is_empty() {
            continue;
        }
        let parts: Vec<SteinerSet> = t.regions(mu).into_iter().map(|(_, far)| far).collect();
        orders.push((mu, order_circular_family(&parts, &t.crossing[mu], valid)?));
    }
    implant_cycles(&t, &orders, valid.steiner_count)
}
