//! Integer max-flow between vertex-set terminals, and tight/loose mincuts.
//!
//! Terminal sets are contracted virtually: every vertex of `S1` sits at BFS
//! level zero and every vertex of `S2` absorbs flow, so no graph is rebuilt.
//! Calls are counted per thread so callers can audit their flow budget.

use std::cell::Cell;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, SteinerContext, VertexCut};

thread_local! {
    static FLOW_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`max_flow`] invocations made on the current thread so far.
pub fn flow_calls() -> u64 {
    FLOW_CALLS.with(|c| c.get())
}

/// Result of one max-flow computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    /// Signed flow per graph edge; positive means from `edge.u` to `edge.v`.
    pub flow: Vec<i64>,
    /// Vertices reachable from `S1` in the residual graph.
    pub source_side: Vec<bool>,
    /// Vertices that can reach `S2` in the residual graph.
    pub sink_side: Vec<bool>,
}

impl FlowResult {
    /// Intersection of all minimum `(S1,S2)`-cuts.
    pub fn tight_cut(&self) -> VertexCut {
        VertexCut::from_mask(self.source_side.clone()).expect("terminals keep both sides nonempty")
    }

    /// Union of all minimum `(S1,S2)`-cuts.
    pub fn loose_cut(&self) -> VertexCut {
        VertexCut::from_mask(self.sink_side.iter().map(|b| !b).collect()).expect("terminals keep both sides nonempty")
    }

    /// Residual capacity of edge `e` traversed from `from`.
    pub fn residual(&self, g: &MultiGraph, e: usize, from: usize) -> i64 {
        let edge = g.edge(e);
        let f = if edge.u == from { self.flow[e] } else { -self.flow[e] };
        edge.mult as i64 - f
    }
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        m[v] = true;
    }
    Ok(m)
}

struct Dinic<'a> {
    g: &'a MultiGraph,
    is_sink: &'a [bool],
    flow: Vec<i64>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Dinic<'_> {
    fn residual(&self, e: usize, from: usize) -> i64 {
        let edge = self.g.edge(e);
        let f = if edge.u == from { self.flow[e] } else { -self.flow[e] };
        edge.mult as i64 - f
    }

    fn push(&mut self, e: usize, from: usize, amount: i64) {
        if self.g.edge(e).u == from {
            self.flow[e] += amount;
        } else {
            self.flow[e] -= amount;
        }
    }

    fn bfs(&mut self, sources: &[usize]) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        let mut queue = VecDeque::new();
        for &s in sources {
            self.level[s] = 0;
            queue.push_back(s);
        }
        let mut reached = false;
        while let Some(x) = queue.pop_front() {
            if self.is_sink[x] {
                reached = true;
                continue;
            }
            for &(y, e) in self.g.neighbors(x) {
                if self.level[y] == usize::MAX && self.residual(e, x) > 0 {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        reached
    }

    fn dfs(&mut self, x: usize, limit: i64) -> i64 {
        if self.is_sink[x] {
            return limit;
        }
        while self.next[x] < self.g.neighbors(x).len() {
            let (y, e) = self.g.neighbors(x)[self.next[x]];
            let r = self.residual(e, x);
            if r > 0 && self.level[y] == self.level[x] + 1 {
                let pushed = self.dfs(y, limit.min(r));
                if pushed > 0 {
                    self.push(e, x, pushed);
                    return pushed;
                }
            }
            self.next[x] += 1;
        }
        0
    }
}

/// Maximum flow from `s1` to `s2` with both sets contracted to single terminals.
pub fn max_flow(g: &MultiGraph, s1: &[usize], s2: &[usize]) -> Result<FlowResult> {
    let n = g.vertex_count();
    let in_s1 = membership(n, s1)?;
    let in_s2 = membership(n, s2)?;
    if s1.is_empty() || s2.is_empty() || (0..n).any(|v| in_s1[v] && in_s2[v]) {
        return Err(Error::OverlappingTerminals);
    }
    FLOW_CALLS.with(|c| c.set(c.get() + 1));

    let mut sources: Vec<usize> = (0..n).filter(|&v| in_s1[v]).collect();
    sources.dedup();
    let mut d = Dinic { g, is_sink: &in_s2, flow: vec![0; g.edges().len()], level: vec![0; n], next: vec![0; n] };
    let mut value: u64 = 0;
    while d.bfs(&sources) {
        d.next.iter_mut().for_each(|p| *p = 0);
        for &s in &sources {
            loop {
                let pushed = d.dfs(s, i64::MAX);
                if pushed == 0 {
                    break;
                }
                value += pushed as u64;
            }
        }
    }

    let flow = d.flow;
    let residual = |e: usize, from: usize| {
        let edge = g.edge(e);
        let f = if edge.u == from { flow[e] } else { -flow[e] };
        edge.mult as i64 - f
    };

    let mut source_side = in_s1.clone();
    let mut stack = sources.clone();
    while let Some(x) = stack.pop() {
        for &(y, e) in g.neighbors(x) {
            if !source_side[y] && residual(e, x) > 0 {
                source_side[y] = true;
                stack.push(y);
            }
        }
    }
    let mut sink_side = in_s2.clone();
    let mut stack: Vec<usize> = (0..n).filter(|&v| in_s2[v]).collect();
    while let Some(y) = stack.pop() {
        for &(x, e) in g.neighbors(y) {
            if !sink_side[x] && residual(e, x) > 0 {
                sink_side[x] = true;
                stack.push(x);
            }
        }
    }
    Ok(FlowResult { value, flow, source_side, sink_side })
}

/// `N(S1,S2)`: the minimum cut closest to `S1`.
pub fn tight_mincut(g: &MultiGraph, s1: &[usize], s2: &[usize]) -> Result<VertexCut> {
    Ok(max_flow(g, s1, s2)?.tight_cut())
}

/// `F(S1,S2)`: the minimum cut farthest from `S1`.
pub fn loose_mincut(g: &MultiGraph, s1: &[usize], s2: &[usize]) -> Result<VertexCut> {
    Ok(max_flow(g, s1, s2)?.loose_cut())
}

/// Fixes `x = S[0]` and returns the per-`y` flows used to derive `λ`, with
/// `λ` stored in the context.
pub fn steiner_flows(ctx: &mut SteinerContext) -> Result<Vec<(usize, FlowResult)>> {
    let s = ctx.steiner().to_vec();
    let x = s[0];
    let mut out = Vec::with_capacity(s.len() - 1);
    for &y in &s[1..] {
        out.push((y, max_flow(&ctx.graph, &[x], &[y])?));
    }
    ctx.lambda = out.iter().map(|(_, f)| f.value).min();
    Ok(out)
}

/// `λ`, the minimum capacity of a cut dividing `S`.
pub fn steiner_mincut_capacity(ctx: &mut SteinerContext) -> Result<u64> {
    steiner_flows(ctx)?;
    Ok(ctx.lambda.expect("|S| >= 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::load_graph;

    fn ctx(text: &str) -> SteinerContext {
        load_graph(text).unwrap()
    }

    #[test]
    fn flow_values() {
        assert_eq!(max_flow(&ctx(fixtures::P3).graph, &[0], &[2]).unwrap().value, 1);
        assert_eq!(max_flow(&ctx(fixtures::TWO_VERTEX).graph, &[0], &[1]).unwrap().value, 3);
        assert_eq!(max_flow(&ctx(fixtures::C4).graph, &[0], &[2]).unwrap().value, 2);
    }

    #[test]
    fn tight_and_loose() {
        let p3 = ctx(fixtures::P3);
        assert_eq!(tight_mincut(&p3.graph, &[0], &[2]).unwrap().inside(), vec![0]);
        assert_eq!(loose_mincut(&p3.graph, &[0], &[2]).unwrap().inside(), vec![0, 1]);
        let star = ctx(fixtures::STAR);
        assert_eq!(tight_mincut(&star.graph, &[1, 2], &[0]).unwrap().inside(), vec![1, 2, 3]);
        let c4 = ctx(fixtures::C4);
        assert_eq!(tight_mincut(&c4.graph, &[0], &[2]).unwrap().inside(), vec![0]);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(steiner_mincut_capacity(&mut ctx(fixtures::P3)).unwrap(), 1);
        assert_eq!(steiner_mincut_capacity(&mut ctx(fixtures::C4)).unwrap(), 2);
        assert_eq!(steiner_mincut_capacity(&mut ctx(fixtures::K4)).unwrap(), 3);
    }

    #[test]
    fn overlapping_terminals_rejected() {
        let p3 = ctx(fixtures::P3);
        assert_eq!(max_flow(&p3.graph, &[0, 1], &[1]), Err(Error::OverlappingTerminals));
        assert_eq!(max_flow(&p3.graph, &[], &[1]), Err(Error::OverlappingTerminals));
    }

    #[test]
    fn calls_are_counted() {
        let p3 = ctx(fixtures::P3);
        let before = flow_calls();
        max_flow(&p3.graph, &[0], &[2]).unwrap();
        tight_mincut(&p3.graph, &[0], &[2]).unwrap();
        assert_eq!(flow_calls() - before, 2);
    }
}
