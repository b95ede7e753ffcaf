use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_str().unwrap().to_owned()
}

fn carcass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carcass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_summary() {
    let o = carcass(&["build", &data("p3.graph"), "--summary"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lambda=1 units=3 skeleton_nodes=2 skeleton_edges=1\n");
}

#[test]
fn verify_prints_passing_tap() {
    for name in ["c4.graph", "p3.graph", "k4.graph", "even-cycle.graph"] {
        let o = carcass(&["verify", &data(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let out = stdout(&o);
        let mut lines = out.lines();
        let plan = lines.next().unwrap();
        let count: usize = plan.strip_prefix("1..").unwrap().parse().unwrap();
        let rest: Vec<&str> = lines.collect();
        assert_eq!(rest.len(), count);
        assert!(rest.iter().all(|l| l.starts_with("ok ")), "{name}: {out}");
    }
}

#[test]
fn sep_reports_a_mincut() {
    let o = carcass(&["sep", &data("p3.graph"), "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "cut inside: 1 capacity: 1\n");
}

#[test]
fn strip_and_dst_text() {
    let o = carcass(&["dst", &data("c4.graph"), "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("class 0 source: 1\nclass 1 sink: 3\n"));
    assert_eq!(out.matches("arc ").count(), 4);

    let o = carcass(&["strip", &data("p3.graph"), "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("class ").count(), 3);
}

#[test]
fn exports() {
    let cases = [("flesh", "graph flesh"), ("skeleton", "graph skeleton"), ("strip:0", "digraph strip"), ("dst:1,3", "digraph strip")];
    for (what, head) in cases {
        let o = carcass(&["export", &data("c4.graph"), "--what", what]);
        assert_eq!(o.status.code(), Some(0), "{what}");
        assert!(stdout(&o).starts_with(head), "{what}");
    }
    let o = carcass(&["export", &data("p3.graph"), "--what", "projection"]);
    assert_eq!(stdout(&o), "0 → 0\n1 → (0,1)\n2 → 1\n");
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("carcass-cli-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    let o = carcass(&["export", &data("c4.graph"), "--what", "skeleton", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("graph skeleton {"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["build", "c10-five.graph"],
        vec!["verify", "twin-stars.graph"],
        vec!["export", "double-diamond.graph", "--what", "flesh"],
        vec!["dst", "even-cycle.graph", "1", "5"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full[1] = data(args[1]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let first = carcass(&refs);
        for _ in 0..3 {
            assert_eq!(carcass(&refs).stdout, first.stdout, "{args:?}");
        }
    }
}

#[test]
fn exit_codes() {
    // Same Steiner vertex twice: a well-formed question without an answer.
    let o = carcass(&["dst", &data("c4.graph"), "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not separated"));

    // Vertex 2 of P3 is not Steiner.
    assert_eq!(carcass(&["dst", &data("p3.graph"), "1", "2"]).status.code(), Some(1));
    assert_eq!(carcass(&["strip", &data("p3.graph"), "7"]).status.code(), Some(1));
    assert_eq!(carcass(&["export", &data("p3.graph"), "--what", "nonsense"]).status.code(), Some(1));
    assert_eq!(carcass(&["verify", &data("c4.graph"), "--max-enum", "3"]).status.code(), Some(1));

    assert_eq!(carcass(&["sep", &data("p3.graph"), "1", "9"]).status.code(), Some(2));
    assert_eq!(carcass(&["build", &data("missing.graph")]).status.code(), Some(2));
    assert_eq!(carcass(&["build"]).status.code(), Some(2));

    let bad = std::env::temp_dir().join(format!("carcass-cli-bad-{}.graph", std::process::id()));
    std::fs::write(&bad, "3 1 2\n1 2 1\n1 3\n").unwrap();
    let o = carcass(&["build", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));
}
