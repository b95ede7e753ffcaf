//! Deliberate corruption of a built carcass must be caught by the checker.

mod common;

use std::collections::BTreeSet;

use carcass::carcass::{Carcass, Projection, UnitKind};
use carcass::fixtures;
use carcass::oracle::{check_carcass, enumerate_all, run_check};

fn prepared(text: &str) -> (Carcass, carcass::oracle::OracleReport) {
    let c = common::build(text);
    let r = enumerate_all(&c.ctx).unwrap();
    assert!(check_carcass(&c, &r).iter().all(|v| v.ok), "fixture must start clean");
    (c, r)
}

fn verdict(c: &Carcass, r: &carcass::oracle::OracleReport, anchor: &str) -> bool {
    run_check(c, r, anchor).expect("known anchor").ok
}

#[test]
fn moved_projection_endpoint_is_caught() {
    for text in [fixtures::CHAIN, fixtures::C10_FIVE] {
        let (c, r) = prepared(text);
        let sk = &c.skeleton;
        let u = (0..c.flesh.unit_count()).find(|&u| c.flesh.kind[u] == UnitKind::Stretched).expect("a stretched unit");
        let Projection::Path(a, b) = c.projection.units[u] else { panic!("stretched unit projects to a path") };
        let edges = |x: usize, y: usize| sk.proper_path(x, y).map(|p| p.into_iter().collect::<BTreeSet<_>>());
        let original = edges(a, b);
        let z = (0..sk.node_count()).find(|&z| z != a && edges(a, z) != original).expect("another endpoint");
        let mut bad = c.clone();
        bad.projection.units[u] = Projection::Path(a, z);
        assert!(!verdict(&bad, &r, "stretched-unit-projection"));
    }
}

#[test]
fn collapsed_projection_is_caught() {
    let (c, r) = prepared(fixtures::CHAIN);
    let u = (0..c.flesh.unit_count()).find(|&u| c.flesh.kind[u] == UnitKind::Stretched).unwrap();
    let Projection::Path(a, _) = c.projection.units[u] else { unreachable!() };
    let mut bad = c.clone();
    bad.projection.units[u] = Projection::Node(a);
    assert!(!verdict(&bad, &r, "stretched-unit-projection"));
}

#[test]
fn dropped_cycle_edge_is_caught() {
    for text in [fixtures::C4, fixtures::EVEN_CYCLE, fixtures::C10_FIVE] {
        let (c, r) = prepared(text);
        let e = c.skeleton.edges.iter().position(|e| !e.is_tree()).expect("a cycle edge");
        let mut bad = c.clone();
        bad.skeleton = c.skeleton.without_edge(e);
        assert!(!verdict(&bad, &r, "cycle-shape"));
    }
}

#[test]
fn merged_units_are_caught() {
    let (c, r) = prepared(fixtures::P3);
    let mut bad = c.clone();
    let second = bad.flesh.units.remove(1);
    bad.flesh.units[0].extend(second);
    bad.flesh.units[0].sort_unstable();
    assert!(!verdict(&bad, &r, "flesh-units"));
}

#[test]
fn inflated_flow_count_is_caught() {
    let (c, r) = prepared(fixtures::K4);
    let mut bad = c.clone();
    bad.flow_calls += 1 << 20;
    assert!(!verdict(&bad, &r, "flow-budget"));
}

#[test]
fn every_failure_is_reported_as_not_ok() {
    let (c, r) = prepared(fixtures::C4);
    let mut bad = c.clone();
    let e = c.skeleton.edges.iter().position(|e| !e.is_tree()).unwrap();
    bad.skeleton = c.skeleton.without_edge(e);
    let tap = carcass::oracle::render_tap(&check_carcass(&bad, &r));
    assert!(tap.lines().any(|l| l.starts_with("not ok") && l.contains("cycle-shape")));
}
