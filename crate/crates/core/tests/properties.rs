//! Property tests over arbitrary small connected multigraphs.

mod common;

use std::collections::BTreeSet;

use carcass::carcass::{BuildOptions, Carcass};
use carcass::graph::{contract, cut_capacity, quotient_by_cut_family, Edge, MultiGraph, SteinerContext, VertexCut};
use carcass::maxflow::{loose_mincut, max_flow, tight_mincut};
use carcass::oracle::{capacity_table, cut_to_mask, enumerate_all, mask_to_cut, st_mincuts, transversal_cuts};
use carcass::skeleton::{MinimalCut, Skeleton};
use carcass::strip::{build_strip, orient_undirected_analogue, Strip, Toward, SINK, SOURCE};
use carcass::validcuts::SteinerSet;
use proptest::prelude::*;

/// Connected multigraph on `2..=max_n` vertices: a random spanning tree plus
/// extra edges, multiplicities in `1..=3`.
fn arb_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            let extra = prop::collection::vec((0..n, 0..n, 1..=3u32), 0..=6);
            let mults = prop::collection::vec(1..=3u32, n - 1);
            (Just(n), parents, extra, mults)
        })
        .prop_map(|(n, parents, extra, mults)| {
            let mut edges: Vec<Edge> = parents.iter().enumerate().map(|(i, &p)| Edge { u: p, v: i + 1, mult: mults[i] }).collect();
            for (u, v, mult) in extra {
                if u != v {
                    edges.push(Edge { u: u.min(v), v: u.max(v), mult });
                }
            }
            MultiGraph::new(n, edges).unwrap()
        })
}

/// A graph with a Steiner set given by a nonzero bitmask of size at least two.
fn arb_instance(max_n: usize) -> impl Strategy<Value = SteinerContext> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), 0u32..1 << n).prop_map(move |(g, pick)| {
            let mut s: Vec<usize> = (0..n).filter(|&v| pick >> v & 1 == 1).collect();
            if s.len() < 2 {
                s = vec![0, n - 1];
            }
            SteinerContext::new(g, s).unwrap()
        })
    })
}

/// Two disjoint nonempty terminal sets.
fn arb_terminals(g: MultiGraph) -> impl Strategy<Value = (MultiGraph, Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    (Just(g), prop::collection::vec(0..3u8, n)).prop_map(move |(g, roles)| {
        let mut s1: Vec<usize> = (0..n).filter(|&v| roles[v] == 1).collect();
        let mut s2: Vec<usize> = (0..n).filter(|&v| roles[v] == 2).collect();
        if s1.is_empty() {
            s1 = vec![0];
            s2.retain(|&v| v != 0);
        }
        if s2.is_empty() {
            s2 = vec![if s1.contains(&(n - 1)) { (1..n).find(|v| !s1.contains(v)).unwrap_or(n - 1) } else { n - 1 }];
            s1.retain(|v| !s2.contains(v));
        }
        (g, s1, s2)
    })
}

fn arb_flow_instance(max_n: usize) -> impl Strategy<Value = (MultiGraph, Vec<usize>, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(arb_terminals).prop_filter("terminals must be nonempty", |(_, a, b)| !a.is_empty() && !b.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cut_capacity_is_symmetric(g in arb_graph(7), pick in 1u32..127) {
        let n = g.vertex_count();
        let mask = pick & ((1 << n) - 1);
        prop_assume!(mask != 0 && mask != (1 << n) - 1);
        let cut = mask_to_cut(n, mask).unwrap();
        prop_assert_eq!(cut_capacity(&g, &cut).unwrap(), cut_capacity(&g, &cut.complement()).unwrap());
    }

    #[test]
    fn submodularity(g in arb_graph(6)) {
        let cap = capacity_table(&g);
        let full = (1usize << g.vertex_count()) - 1;
        for a in 1..full {
            for b in 1..full {
                prop_assert!(cap[a] + cap[b] >= cap[a & b] + cap[a | b]);
            }
        }
    }

    #[test]
    fn four_point_inequality(g in arb_graph(5)) {
        let cap = capacity_table(&g);
        let full = (1usize << g.vertex_count()) - 1;
        for a in 0..=full {
            for b in 0..=full {
                for c in 0..=full {
                    let (na, nb, nc) = (!a & full, !b & full, !c & full);
                    let rhs = cap[a & nb & nc] + cap[na & b & nc] + cap[na & nb & c] + cap[a & b & c];
                    prop_assert!(cap[a] + cap[b] + cap[c] >= rhs);
                }
            }
        }
    }

    #[test]
    fn quotient_keeps_family_capacities(g in arb_graph(7), picks in prop::collection::vec(1u32..127, 1..4)) {
        let n = g.vertex_count();
        let full = (1u32 << n) - 1;
        let cuts: Vec<VertexCut> = picks.iter().map(|p| p & full).filter(|&m| m != 0 && m != full).map(|m| mask_to_cut(n, m).unwrap()).collect();
        prop_assume!(!cuts.is_empty());
        let q = quotient_by_cut_family(&g, &cuts).unwrap();
        let groups = q.groups();
        let again = contract(&g, &groups).unwrap();
        prop_assert_eq!(&again.graph, &q.graph);
        for cut in &cuts {
            let inside: Vec<usize> = (0..groups.len()).filter(|&i| cut.contains(groups[i][0])).collect();
            let qcut = VertexCut::new(groups.len(), inside).unwrap();
            prop_assert_eq!(cut_capacity(&q.graph, &qcut).unwrap(), cut_capacity(&g, cut).unwrap());
        }
    }

    #[test]
    fn flow_duality_and_extreme_cuts((g, s1, s2) in arb_flow_instance(8)) {
        let (value, cuts) = st_mincuts(&g, &s1, &s2).unwrap();
        let flow = max_flow(&g, &s1, &s2).unwrap();
        prop_assert_eq!(flow.value, value);
        let tight = cut_to_mask(&tight_mincut(&g, &s1, &s2).unwrap());
        let loose = cut_to_mask(&loose_mincut(&g, &s1, &s2).unwrap());
        prop_assert_eq!(tight, cuts.iter().fold(u32::MAX, |a, &b| a & b));
        prop_assert_eq!(loose, cuts.iter().fold(0, |a, &b| a | b));
        let full = (1u32 << g.vertex_count()) - 1;
        let opposite = cut_to_mask(&loose_mincut(&g, &s2, &s1).unwrap());
        prop_assert_eq!(tight, !opposite & full);
        for &a in &cuts {
            for &b in &cuts {
                let (x, y) = (a & !b, b & !a);
                let crossing = g.edges().iter().any(|e| (x >> e.u & 1 == 1 && y >> e.v & 1 == 1) || (y >> e.u & 1 == 1 && x >> e.v & 1 == 1));
                prop_assert!(!crossing);
            }
        }
    }

    #[test]
    fn strip_laws((g, s1, s2) in arb_flow_instance(8)) {
        let strip = build_strip(&g, &s1, &s2).unwrap();
        strip.check_balanced().unwrap();
        prop_assert_eq!(strip.out_degree(SOURCE), strip.in_degree(SINK));

        let analogue = strip.analogue();
        let forward = orient_undirected_analogue(&analogue).unwrap();
        for (e, &(u, v, _)) in analogue.edges.iter().enumerate() {
            let (tail, head) = if forward[e] { (u, v) } else { (v, u) };
            prop_assert_eq!((tail, head), (strip.edges[e].tail, strip.edges[e].head));
        }
        let again = Strip::assemble(&g, &strip.phi, SOURCE, SINK, None).unwrap();
        prop_assert_eq!(&again, &strip);

        let (_, cuts) = st_mincuts(&g, &s1, &s2).unwrap();
        prop_assert_eq!(transversal_cuts(&strip).unwrap(), cuts);

        let k = strip.vertex_count();
        let reach = |from: usize, rev: bool| {
            let mut seen = vec![false; k];
            seen[from] = true;
            let mut stack = vec![from];
            while let Some(x) = stack.pop() {
                for e in &strip.edges {
                    let (a, b) = if rev { (e.head, e.tail) } else { (e.tail, e.head) };
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen
        };
        let from_source = reach(SOURCE, false);
        let to_sink = reach(SINK, true);
        for e in &strip.edges {
            prop_assert!(from_source[e.tail] && to_sink[e.head]);
        }

        let inner: Vec<usize> = (0..k).filter(|&x| !strip.is_terminal(x)).collect();
        for &x in &inner {
            let cone = strip.reachability_cone(x, Toward::Source).unwrap();
            prop_assert!(strip.is_transversal(&cone).unwrap());
            let sink_cone = strip.reachability_cone(x, Toward::Sink).unwrap();
            let rest: Vec<usize> = (0..k).filter(|y| !sink_cone.contains(y) || *y == x).filter(|&y| y != x).collect();
            prop_assert!(strip.is_transversal(&rest).unwrap());
            for &y in &inner {
                if x != y {
                    let cy = strip.reachability_cone(y, Toward::Source).unwrap();
                    prop_assert!(!(cone.contains(&y) && cy.contains(&x)));
                }
            }
        }
    }

    #[test]
    fn valid_cut_laws(ctx in arb_instance(7)) {
        let r = enumerate_all(&ctx).unwrap();
        let c = Carcass::build(ctx.clone(), BuildOptions::default()).unwrap();
        let full = r.full();
        let s = ctx.steiner();
        let tight_of = |side: SteinerSet| cut_to_mask(&tight_mincut(&ctx.graph, &side.vertices(s), &side.complement(full).vertices(s)).unwrap());
        let loose_of = |side: SteinerSet| cut_to_mask(&loose_mincut(&ctx.graph, &side.vertices(s), &side.complement(full).vertices(s)).unwrap());
        let sides: Vec<SteinerSet> = r.valid_cuts.iter().flat_map(|&a| [a, a.complement(full)]).collect();
        for &a in &sides {
            for &b in &sides {
                if a != b && a.is_subset(b) {
                    let (ta, tb) = (tight_of(a), tight_of(b));
                    let (la, lb) = (loose_of(a), loose_of(b));
                    prop_assert!(ta & tb == ta && ta != tb);
                    prop_assert!(la & lb == la && la != lb);
                }
            }
            // Any S-mincut dividing the tight cut of a side divides the side.
            let t = tight_of(a);
            let side_mask: u32 = a.vertices(s).iter().fold(0, |m, &v| m | 1 << v);
            for &mc in &r.mincuts {
                let divides = |x: u32| x & mc != 0 && x & !mc != 0;
                if divides(t) {
                    prop_assert!(divides(side_mask));
                }
            }
        }
        // The tight valid cut from u to v is laminar.
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i == j {
                    continue;
                }
                let separating: Vec<SteinerSet> = sides.iter().copied().filter(|x| x.contains(i) && !x.contains(j)).collect();
                if separating.is_empty() {
                    continue;
                }
                let tight = separating.iter().fold(full, |acc, &x| acc.intersect(x));
                let idx = c.valid.cuts.iter().position(|&x| x == tight.anchored(full));
                prop_assert!(idx.is_some());
                prop_assert!(c.valid.laminar[idx.unwrap()]);
            }
        }
    }

    #[test]
    fn skeleton_paths_and_cuts(ctx in arb_instance(7)) {
        let c = Carcass::build(ctx, BuildOptions::default()).unwrap();
        let sk = &c.skeleton;
        check_segment_complements(sk)?;
        let n = sk.node_count();
        for a in 0..n {
            for b in 0..n {
                let proper = all_proper_paths(sk, a, b);
                prop_assert!(proper.len() <= 1);
                match sk.proper_path(a, b) {
                    Some(p) => prop_assert_eq!(proper, vec![p]),
                    None => prop_assert!(proper.is_empty()),
                }
                for cut in sk.minimal_cuts() {
                    let separates = sk.node_on_cut_side(cut, a) != sk.node_on_cut_side(cut, b);
                    let through = sk.cut_edges(cut).iter().any(|&e| sk.path_contains_edge(a, b, e));
                    if let MinimalCut::Tree(_) = cut {
                        prop_assert_eq!(separates, through);
                    } else if separates {
                        prop_assert!(through);
                    }
                }
            }
        }
    }
}

fn check_segment_complements(sk: &Skeleton) -> Result<(), TestCaseError> {
    let full = sk.full();
    for (ci, cyc) in sk.cycles.iter().enumerate() {
        let k = cyc.len();
        for p in 0..k {
            for q in 0..k {
                if (q + 1) % k == p {
                    continue;
                }
                let seg = sk.side_of_cycle_segment(ci, cyc.nodes[p], cyc.nodes[q]).unwrap();
                let rest = sk.side_of_cycle_segment(ci, cyc.nodes[(q + 1) % k], cyc.nodes[(p + k - 1) % k]).unwrap();
                prop_assert_eq!(seg, rest.complement(full));
            }
        }
    }
    Ok(())
}

/// Every simple path from `a` to `b` that uses at most one edge of each cycle.
fn all_proper_paths(sk: &Skeleton, a: usize, b: usize) -> Vec<Vec<usize>> {
    fn walk(sk: &Skeleton, x: usize, b: usize, seen: &mut Vec<bool>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == b {
            let mut per_cycle = BTreeSet::new();
            let proper = path.iter().all(|&e| match sk.edges[e].kind {
                carcass::skeleton::EdgeKind::Cycle(c) => per_cycle.insert(c),
                carcass::skeleton::EdgeKind::Tree => true,
            });
            if proper {
                out.push(path.clone());
            }
            return;
        }
        for &(y, e) in sk.incident(x) {
            if !seen[y] {
                seen[y] = true;
                path.push(e);
                walk(sk, y, b, seen, path, out);
                path.pop();
                seen[y] = false;
            }
        }
    }
    let mut seen = vec![false; sk.node_count()];
    seen[a] = true;
    let mut out = Vec::new();
    walk(sk, a, b, &mut seen, &mut Vec::new(), &mut out);
    out
}

#[test]
fn random_suite_strategy_respects_its_bounds() {
    for seed in 0..common::random_count() {
        let ctx = common::random_instance(seed);
        let n = ctx.graph.vertex_count();
        assert!((3..=8).contains(&n));
        assert!(ctx.graph.edges().len() <= 14);
        assert!(ctx.graph.edges().iter().all(|e| (1..=3).contains(&e.mult)));
        assert!((2..=n).contains(&ctx.steiner().len()));
    }
}
