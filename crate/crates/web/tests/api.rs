use carcass::fixtures;
use carcass_web::{analyze, analyze_graph, separate, separating_mincut, st_strip};

#[test]
fn analysis_of_p3() {
    let a = analyze(fixtures::P3).unwrap();
    assert_eq!((a.lambda, a.units.len(), a.skeleton_nodes, a.skeleton_edges), (1, 3, 2, 1));
    assert_eq!(a.steiner, vec![1, 3]);
    assert_eq!(a.units[1].kind, "stretched");
    assert_eq!(a.units[1].projection, vec![0, 1]);
    assert_eq!(a.minimal_cuts.len(), 1);
    assert!(a.graph_svg.starts_with("<svg") && a.graph_svg.ends_with("</svg>"));
    assert_eq!(a.skeleton_svg.matches("<rect").count(), 2);
}

#[test]
fn analysis_json_shape() {
    let json: serde_json::Value = serde_json::from_str(&analyze_graph(fixtures::C4).unwrap()).unwrap();
    assert_eq!(json["lambda"], 2);
    assert_eq!(json["minimal_cuts"].as_array().unwrap().len(), 6);
    assert_eq!(json["units"][0]["vertices"], serde_json::json!([1]));
}

#[test]
fn separation_highlights_the_cut() {
    let s = separate(fixtures::P3, 1, 2).unwrap();
    assert_eq!(s.text, "cut inside: 1 capacity: 1");
    assert_eq!((s.inside.clone(), s.capacity), (vec![1], 1));
    assert_eq!(s.graph_svg.matches("#c0392b").count(), 1);
    assert!(separating_mincut(fixtures::P3, 1, 2).unwrap().contains("\"capacity\":1"));
}

#[test]
fn strip_view() {
    let v = st_strip(fixtures::C4, 1, 3).unwrap();
    assert!(v.text.starts_with("class 0 source: 1\nclass 1 sink: 3\n"));
    assert_eq!(v.svg.matches("<line").count(), 4);
    assert_eq!(v.svg.matches("<rect").count(), 4);
    assert!(v.dot.starts_with("digraph strip"));
}

#[test]
fn errors_are_messages() {
    assert!(analyze("3 1 2\n1 2 1\n1 3\n").unwrap_err().contains("disconnected"));
    assert!(separate(fixtures::P3, 1, 7).unwrap_err().contains("out of range"));
    assert!(st_strip(fixtures::P3, 1, 2).unwrap_err().contains("not a Steiner vertex"));
    assert!(st_strip(fixtures::C4, 2, 2).is_err());
}
