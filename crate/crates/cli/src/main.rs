use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use carcass::carcass::{BuildOptions, Carcass, Projection};
use carcass::dot;
use carcass::error::{Error, ErrorClass};
use carcass::graph::{format_vertex_list, load_graph, SteinerContext};
use carcass::oracle::{self, check_carcass, enumerate_all};
use carcass::queries;
use carcass::skeleton::{MinimalCut, NodeKind};
use carcass::validcuts::DEFAULT_ENUM_BOUND;
use clap::{Parser, Subcommand};

/// Build and query the connectivity carcass of a graph's Steiner mincuts.
///
/// Vertex ids on the command line are 1-based, as in graph files.
#[derive(Parser, Debug)]
#[command(name = "carcass", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Enumeration bound: largest |S| for the build, largest n for the oracle.
    #[arg(long, global = true, value_name = "N")]
    max_enum: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Build the carcass and describe it.
    Build {
        graph: PathBuf,
        /// Print a single key=value line instead of the full description.
        #[arg(long)]
        summary: bool,
    },
    /// Check the carcass against the brute-force oracle and print TAP.
    Verify { graph: PathBuf },
    /// Report an S-mincut separating two vertices.
    Sep { graph: PathBuf, u: usize, v: usize },
    /// Print the strip of the minimal skeleton cut with the given id.
    Strip { graph: PathBuf, cut_id: usize },
    /// Print the strip of all s-t mincuts for two Steiner vertices.
    Dst { graph: PathBuf, s: usize, t: usize },
    /// Export DOT or the projection mapping.
    Export {
        graph: PathBuf,
        /// flesh | skeleton | projection | strip:<cut-id> | dst:<s>,<t>
        #[arg(long)]
        what: String,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    /// Verification ran but at least one check failed; the report is still
    /// printed.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &PathBuf) -> Result<SteinerContext, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_graph(&text)
}

fn build(path: &PathBuf, max_enum: Option<usize>) -> Result<Carcass, Error> {
    let opts = BuildOptions { max_enum: max_enum.unwrap_or(DEFAULT_ENUM_BOUND) };
    Carcass::build(read(path)?, opts)
}

/// 1-based vertex argument to a 0-based id.
fn vertex(c: &Carcass, v: usize) -> Result<usize, Error> {
    let n = c.graph().vertex_count();
    if v == 0 || v > n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(v - 1)
}

fn minimal_cut(c: &Carcass, id: usize) -> Result<MinimalCut, Error> {
    let cuts = c.skeleton.minimal_cuts();
    cuts.get(id).copied().ok_or_else(|| Error::InvalidArgument(format!("no minimal cut {id}; there are {}", cuts.len())))
}

fn summary(c: &Carcass) -> String {
    format!(
        "lambda={} units={} skeleton_nodes={} skeleton_edges={}\n",
        c.lambda(),
        c.flesh.unit_count(),
        c.skeleton.node_count(),
        c.skeleton.edges.len()
    )
}

fn describe(c: &Carcass) -> String {
    let steiner = c.ctx.steiner();
    let sk = &c.skeleton;
    let mut out = summary(c);
    writeln!(out, "steiner={}", format_vertex_list(steiner)).unwrap();
    writeln!(out, "valid_cuts={} flow_calls={}", c.valid.cuts.len(), c.flow_calls).unwrap();
    for (u, members) in c.flesh.units.iter().enumerate() {
        let proj = match c.projection.units[u] {
            Projection::Node(x) => format!("node {x}"),
            Projection::Path(a, b) => format!("path {a}..{b}"),
        };
        writeln!(out, "unit {u} {} vertices={} -> {proj}", c.flesh.kind[u].name(), format_vertex_list(members)).unwrap();
    }
    for (x, node) in sk.nodes.iter().enumerate() {
        let kind = if node.kind == NodeKind::Cycle { "cycle" } else { "tree" };
        writeln!(out, "node {x} {kind} steiner={}", format_vertex_list(&node.steiner.vertices(steiner))).unwrap();
    }
    for (e, ed) in sk.edges.iter().enumerate() {
        let kind = if ed.is_tree() { "tree" } else { "cycle" };
        writeln!(out, "edge {e} {kind} {}-{}", ed.a, ed.b).unwrap();
    }
    for (id, cut) in sk.minimal_cuts().into_iter().enumerate() {
        let edges: Vec<String> = sk.cut_edges(cut).iter().map(|e| e.to_string()).collect();
        let side = format_vertex_list(&sk.cut_side(cut).vertices(steiner));
        writeln!(out, "cut {id} edges={} side={side}", edges.join(",")).unwrap();
    }
    out
}

fn verify(path: &PathBuf, max_enum: Option<usize>) -> Outcome {
    let ctx = read(path)?;
    let bound = max_enum.unwrap_or(oracle::ORACLE_BOUND).min(oracle::ORACLE_BOUND);
    let n = ctx.graph.vertex_count();
    if n > bound {
        return Err(Error::InstanceTooLarge { n, bound }.into());
    }
    let report = enumerate_all(&ctx)?;
    let c = Carcass::build(ctx, BuildOptions { max_enum: max_enum.unwrap_or(DEFAULT_ENUM_BOUND) })?;
    let verdicts = check_carcass(&c, &report);
    let tap = oracle::render_tap(&verdicts);
    if verdicts.iter().all(|v| v.ok) {
        Ok(tap)
    } else {
        Err(Failure::Checks(tap))
    }
}

fn export(c: &Carcass, what: &str) -> Outcome {
    let text = match what {
        "flesh" => dot::flesh_dot(c),
        "skeleton" => dot::skeleton_dot(&c.skeleton, c.ctx.steiner()),
        "projection" => dot::projection_text(c),
        _ => {
            if let Some(id) = what.strip_prefix("strip:") {
                let id = id.parse().map_err(|_| Error::InvalidArgument(format!("bad cut id {id:?}")))?;
                dot::strip_dot(&queries::strip_for_minimal_cut(c, minimal_cut(c, id)?)?)
            } else if let Some(pair) = what.strip_prefix("dst:") {
                let (s, t) = pair
                    .split_once(',')
                    .and_then(|(s, t)| Some((s.trim().parse().ok()?, t.trim().parse().ok()?)))
                    .ok_or_else(|| Error::InvalidArgument(format!("expected dst:<s>,<t>, got {what:?}")))?;
                dot::strip_dot(&queries::build_dst(c, vertex(c, s)?, vertex(c, t)?)?.1)
            } else {
                return Err(Error::InvalidArgument(format!("unknown export {what:?}")).into());
            }
        }
    };
    Ok(text)
}

fn run(cli: &Cli) -> Outcome {
    let max_enum = cli.max_enum;
    match &cli.verb {
        Verb::Build { graph, summary: short } => {
            let c = build(graph, max_enum)?;
            Ok(if *short { summary(&c) } else { describe(&c) })
        }
        Verb::Verify { graph } => verify(graph, max_enum),
        Verb::Sep { graph, u, v } => {
            let c = build(graph, max_enum)?;
            let (x, y) = (vertex(&c, *u)?, vertex(&c, *v)?);
            match queries::report_vertex_separating_mincut(&c, x, y)? {
                Some(cut) => Ok(format!("{}\n", cut.render())),
                None => Err(Error::InvalidArgument(format!("no S-mincut separates {u} and {v}")).into()),
            }
        }
        Verb::Strip { graph, cut_id } => {
            let c = build(graph, max_enum)?;
            Ok(dot::strip_text(&queries::strip_for_minimal_cut(&c, minimal_cut(&c, *cut_id)?)?))
        }
        Verb::Dst { graph, s, t } => {
            let c = build(graph, max_enum)?;
            Ok(dot::strip_text(&queries::build_dst(&c, vertex(&c, *s)?, vertex(&c, *t)?)?.1))
        }
        Verb::Export { graph, what } => export(&build(graph, max_enum)?, what),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code(class: ErrorClass) -> ExitCode {
    ExitCode::from(match class {
        ErrorClass::Domain => 1,
        ErrorClass::Input => 2,
        ErrorClass::Invariant => 3,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (text, code) = match result {
        Ok(text) => (text, ExitCode::SUCCESS),
        Err(Failure::Checks(tap)) => (tap, ExitCode::from(3)),
        Err(Failure::Lib(e)) => {
            eprintln!("carcass: {e}");
            return exit_code(e.class());
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("carcass: {e}");
        return exit_code(e.class());
    }
    code
}
