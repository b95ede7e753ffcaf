//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the lines reach stdout uncaptured.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use carcass::carcass::{BuildOptions, Carcass};
use carcass::fixtures;
use carcass::graph::SteinerContext;
use carcass::maxflow::flow_calls;
use carcass::oracle::{check_carcass, enumerate_all, OracleReport, Verdict};

/// Oracle values frozen per fixture: `λ`, S-mincut count, bunch count, unit count.
const FROZEN: &[(&str, &str, u64, usize, usize, usize)] = &[
    ("p3", fixtures::P3, 1, 2, 1, 3),
    ("star", fixtures::STAR, 1, 3, 3, 4),
    ("c4", fixtures::C4, 2, 6, 6, 4),
    ("k4", fixtures::K4, 3, 4, 4, 4),
    ("two-vertex", fixtures::TWO_VERTEX, 3, 1, 1, 2),
    ("even-cycle", fixtures::EVEN_CYCLE, 2, 24, 6, 8),
];

const CRITERIA: [&[&str]; 7] = [
    &[],
    &["lambda", "flesh-units", "valid-cuts", "bunch-count", "strip-transversal-bijection", "mincut-cover", "minimal-cut-multiset"],
    &["stretched-unit-projection", "one-edge-per-cycle", "edge-projection", "edge-projection-prefix-suffix"],
    &["strip-orientation-roundtrip", "strip-flow-balance", "inherent-partition", "strip-from-carcass"],
    &["separating-mincut-query", "dst-query", "h-st-query"],
    &[
        "leaf-sets-indivisible",
        "cycle-shape",
        "empty-tree-nodes",
        "ring-constraints",
        "forbidden-combinations",
        "crossing-family",
        "four-point",
        "disjoint-triple-intersection",
    ],
    &["flow-budget", "queries-use-no-flow"],
];

struct Instance {
    name: String,
    carcass: Carcass,
    report: OracleReport,
    verdicts: Vec<Verdict>,
    counted_flows: u64,
}

fn run(name: String, ctx: SteinerContext) -> Result<Instance, String> {
    let report = enumerate_all(&ctx).map_err(|e| format!("{name}: oracle: {e}"))?;
    let before = flow_calls();
    let carcass = Carcass::build(ctx, BuildOptions::default()).map_err(|e| format!("{name}: build: {e}"))?;
    let counted_flows = flow_calls() - before;
    let verdicts = check_carcass(&carcass, &report);
    Ok(Instance { name, carcass, report, verdicts, counted_flows })
}

struct Line {
    pass: bool,
    text: String,
}

fn failures(instances: &[Instance], anchors: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for inst in instances {
        for v in &inst.verdicts {
            if anchors.contains(&v.anchor) && !v.ok {
                out.push(format!("{}: {} {}", inst.name, v.anchor, v.detail));
            }
        }
    }
    out
}

fn line(pass: bool, text: String, problems: &[String]) -> Line {
    let mut text = text;
    for p in problems.iter().take(5) {
        text.push_str(&format!("\n    {p}"));
    }
    Line { pass, text }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn main() -> ExitCode {
    let mut problems_1 = Vec::new();
    let t1 = Instant::now();
    let mut fixture_runs = Vec::new();
    for &(name, text, lambda, mincuts, bunches, units) in FROZEN {
        let inst = match run(name.into(), common::load(text)) {
            Ok(i) => i,
            Err(e) => {
                problems_1.push(e);
                continue;
            }
        };
        let r = &inst.report;
        let oracle = (r.lambda, r.mincuts.len(), r.bunches.len(), r.units.len());
        if oracle != (lambda, mincuts, bunches, units) {
            problems_1.push(format!("{name}: oracle gives {oracle:?}"));
        }
        let c = &inst.carcass;
        let library = (c.lambda(), c.valid.cuts.len(), c.flesh.unit_count());
        if library != (r.lambda, r.valid_cuts.len(), r.units.len()) || c.flesh.units != r.units || c.valid.cuts != r.valid_cuts {
            problems_1.push(format!("{name}: library gives {library:?}"));
        }
        problems_1.extend(inst.verdicts.iter().filter(|v| !v.ok).map(|v| format!("{name}: {v}")));
        fixture_runs.push(inst);
    }
    let d1 = t1.elapsed();

    let seeds = common::random_count().max(300);
    let t2 = Instant::now();
    let mut random_runs = Vec::new();
    let mut build_errors = Vec::new();
    for seed in 0..seeds {
        match run(format!("seed {seed}"), common::random_instance(seed)) {
            Ok(i) => random_runs.push(i),
            Err(e) => build_errors.push(e),
        }
    }
    let d2 = t2.elapsed();

    let mut lines = Vec::new();
    let ok1 = problems_1.is_empty() && d1 < Duration::from_secs(1);
    lines.push(line(ok1, format!("fixture suite: {} fixtures matched frozen oracle values in {}", FROZEN.len(), secs(d1)), &problems_1));

    let mut p2 = build_errors.clone();
    p2.extend(failures(&random_runs, CRITERIA[1]));
    let ok2 = p2.is_empty() && d2 < Duration::from_secs(60);
    lines.push(line(ok2, format!("randomized oracle equivalence: {} instances in {}", random_runs.len(), secs(d2)), &p2));

    let all: Vec<Instance> = fixture_runs.into_iter().chain(random_runs).collect();
    let stretched: usize = all.iter().map(|i| i.carcass.flesh.kind.iter().filter(|k| k.name() == "stretched").count()).sum();
    let flesh_edges: usize = all.iter().map(|i| i.carcass.graph().edges().len()).sum();
    let p3 = failures(&all, CRITERIA[2]);
    lines.push(line(p3.is_empty(), format!("projection exactness: {stretched} stretched units, {flesh_edges} graph edges"), &p3));

    let strips: usize = all.iter().map(|i| i.carcass.skeleton.minimal_cuts().len()).sum();
    let p4 = failures(&all, CRITERIA[3]);
    lines.push(line(p4.is_empty(), format!("strip laws: {strips} minimal-cut strips"), &p4));

    let pairs: usize = all.iter().map(|i| i.report.steiner.len() * (i.report.steiner.len() - 1) / 2).sum();
    let p5 = failures(&all, CRITERIA[4]);
    lines.push(line(p5.is_empty(), format!("query correctness: {pairs} Steiner pairs"), &p5));

    let mut per_anchor: BTreeMap<&str, usize> = BTreeMap::new();
    for inst in &all {
        for v in inst.verdicts.iter().filter(|v| CRITERIA[5].contains(&v.anchor)) {
            *per_anchor.entry(v.anchor).or_default() += usize::from(v.ok);
        }
    }
    let p6 = failures(&all, CRITERIA[5]);
    let tally: Vec<String> = per_anchor.iter().map(|(a, n)| format!("{a}={n}")).collect();
    lines.push(line(p6.is_empty(), format!("structural invariants: {}", tally.join(" ")), &p6));

    let mut p7 = failures(&all, CRITERIA[6]);
    let mut worst = (0u64, 1u64);
    for inst in &all {
        let k = inst.report.steiner.len() as u64;
        let t = inst.carcass.skeleton.tree_edges().count() as u64;
        let bound = (1u64 << (k - 1)) + 3 * t + k;
        if inst.counted_flows != inst.carcass.flow_calls {
            p7.push(format!("{}: counter saw {} calls, carcass reports {}", inst.name, inst.counted_flows, inst.carcass.flow_calls));
        }
        if inst.counted_flows * worst.1 > worst.0 * bound {
            worst = (inst.counted_flows, bound);
        }
    }
    lines.push(line(
        p7.is_empty(),
        format!("complexity sanity: worst build used {} of {} allowed max-flow calls, queries used 0", worst.0, worst.1),
        &p7,
    ));

    let mut all_pass = true;
    for (i, l) in lines.iter().enumerate() {
        all_pass &= l.pass;
        println!("criterion {} {} {}", i + 1, if l.pass { "PASS" } else { "FAIL" }, l.text);
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
