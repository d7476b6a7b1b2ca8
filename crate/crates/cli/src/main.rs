//! `artin`: analyses of Artin defining graphs and the verification suite.

use artin_core::deligne::{standard_trees, DEFAULT_BALL_BUDGET, DEFAULT_DEPTH, DEFAULT_RESIDUE_RADIUS};
use artin_core::dihedral::{center_generator, parse_word};
use artin_core::graph::{classify, is_star_rigid, label_automorphisms, StarMode};
use artin_core::hierarchy::{check_hierarchy, find_with_cap, HIERARCHY_CAP};
use artin_core::igraph::{six_cycle_audit, EMBED_BUDGET};
use artin_core::oracle::DEFAULT_BUDGET;
use artin_core::verify::{DEFAULT_FAREY_QMAX, Status};
use artin_core::{
    build_td_ball, develop_ball, farey, graph::girth, run_suite, BallConfig, Check, DefiningGraph, DihedralElement,
    Error, TypedPattern, VerifyConfig,
};
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "artin", version, about = "Artin groups, Deligne complexes and intersection graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, twistlessness, star rigidity and automorphisms.
    Analyze { graph: PathBuf },
    /// A twistless hierarchy, or `none`.
    Hierarchy {
        graph: PathBuf,
        #[arg(long, default_value_t = HIERARCHY_CAP)]
        cap: usize,
    },
    /// Queries in the dihedral Artin group with label `m`.
    Dihedral {
        #[command(subcommand)]
        query: DihedralQuery,
    },
    /// Develops a ball of the modified Deligne complex and dumps it.
    Deligne {
        graph: PathBuf,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The T/D span of a ball, with girth and the 6-cycle audit.
    Igraph {
        graph: PathBuf,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, default_value_t = EMBED_BUDGET)]
        embed_budget: usize,
        /// Also list vertices and edges.
        #[arg(long)]
        edges: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge list of a Farey ball.
    Farey {
        #[arg(long, default_value_t = 8)]
        qmax: i64,
        #[arg(long, default_value_t = farey::DEFAULT_WINDOW)]
        window: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the verification suite; exit 0 iff no check fails.
    Verify {
        graph: PathBuf,
        #[command(flatten)]
        ball: BallArgs,
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        oracle_budget: usize,
        #[arg(long, default_value_t = EMBED_BUDGET)]
        embed_budget: usize,
        #[arg(long, default_value_t = DEFAULT_FAREY_QMAX)]
        farey_qmax: i64,
        /// Replacement G2 pattern (`node <name> T|D`, `link <x> <y>`).
        #[arg(long)]
        g2_template: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DihedralQuery {
    /// Normal form `D^k * tail` of a word over a, b, A, B.
    Nf { m: u32, word: String },
    /// Whether two words are equal.
    Eq { m: u32, first: String, second: String },
    /// The generator of the centre.
    Center { m: u32 },
}

#[derive(Args, Clone, Copy)]
struct BallArgs {
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    #[arg(long, default_value_t = DEFAULT_RESIDUE_RADIUS)]
    residue_radius: usize,
    /// Oracle budget per identification.
    #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
    budget: usize,
}

impl From<BallArgs> for BallConfig {
    fn from(a: BallArgs) -> Self {
        BallConfig { depth: a.depth, residue_radius: a.residue_radius, budget: a.budget }
    }
}

enum Failure {
    Check,
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_graph(path: &Path) -> Result<DefiningGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(DefiningGraph::parse(&text)?)
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names(g: &DefiningGraph, vs: &[usize]) -> String {
    vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")
}

fn analyze(path: &Path) -> Outcome {
    let g = read_graph(path)?;
    let c = classify(&g);
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", g.n());
    let _ = writeln!(s, "edges: {}", g.edges().len());
    let _ = writeln!(s, "connected: {}", c.connected);
    let _ = writeln!(s, "large_type: {}", c.large_type);
    let _ = writeln!(s, "xxxl: {}", c.xxxl);
    let _ = writeln!(s, "two_dimensional: {}", c.two_dimensional);
    let _ = writeln!(s, "triangle_free: {}", c.triangle_free);
    let _ = writeln!(s, "hyperbolic_type: {}", c.hyperbolic_type);
    let twistless = if c.twistless {
        "true".to_string()
    } else if let Some(&v) = c.separating_vertices.first() {
        format!("false (separating vertex {})", g.name(v))
    } else if let Some(&e) = c.separating_edges.first() {
        let e = g.edge(e);
        format!("false (separating edge {}-{})", g.name(e.u), g.name(e.v))
    } else {
        "false (disconnected)".to_string()
    };
    let _ = writeln!(s, "twistless: {twistless}");
    let star = is_star_rigid(&g, StarMode::Closed);
    match &star.witness {
        None => {
            let _ = writeln!(s, "star_rigid: true");
        }
        Some((v, p)) => {
            let moved: Vec<String> =
                (0..g.n()).filter(|&x| p[x] != x).map(|x| format!("{}->{}", g.name(x), g.name(p[x]))).collect();
            let _ = writeln!(s, "star_rigid: false (star of {} fixed by {})", g.name(*v), moved.join(" "));
        }
    }
    let _ = writeln!(s, "automorphisms: {}", label_automorphisms(&g).len());
    let _ = writeln!(s, "large_generators: {}", names(&g, &c.large_generators));
    emit(&s, None)
}

fn hierarchy(path: &Path, cap: usize) -> Outcome {
    let g = read_graph(path)?;
    match find_with_cap(&g, cap)? {
        None => emit("none\n", None),
        Some(tree) => {
            check_hierarchy(&g, &tree).map_err(|e| Failure::Core(Error::Certification(e)))?;
            emit(&tree.to_text(&g), None)
        }
    }
}

fn dihedral(q: DihedralQuery) -> Outcome {
    let check_m = |m: u32| if m >= 2 { Ok(()) } else { Err(Error::Input(format!("label {m} must be at least 2"))) };
    let text = match q {
        DihedralQuery::Nf { m, word } => {
            check_m(m)?;
            format!("{}\n", DihedralElement::nf(&parse_word(&word)?, m)?)
        }
        DihedralQuery::Eq { m, first, second } => {
            check_m(m)?;
            let x = DihedralElement::nf(&parse_word(&first)?, m)?;
            let y = DihedralElement::nf(&parse_word(&second)?, m)?;
            format!("{}\n", x == y)
        }
        DihedralQuery::Center { m } => {
            check_m(m)?;
            format!("{}\n", center_generator(m))
        }
    };
    emit(&text, None)
}

fn deligne(path: &Path, ball: BallArgs, out: Option<&Path>) -> Outcome {
    let g = read_graph(path)?;
    let b = develop_ball(&g, ball.into())?;
    emit(&b.dump(), out)
}

fn igraph(path: &Path, ball: BallArgs, embed_budget: usize, edges: bool, out: Option<&Path>) -> Outcome {
    let g = read_graph(path)?;
    let b = develop_ball(&g, ball.into())?;
    let ib = build_td_ball(&b)?;
    let trees = standard_trees(&b)?.len();
    let mut s = String::new();
    let _ = writeln!(s, "chambers {}", b.chambers.len());
    let _ = writeln!(s, "d_vertices {}", b.type2.len());
    let _ = writeln!(s, "t_vertices {trees}");
    let _ = writeln!(s, "edges {}", ib.graph.edge_count());
    let _ = writeln!(s, "bipartite {}", ib.graph.is_bipartite());
    let _ = writeln!(s, "girth {}", girth(&ib.graph).map_or("none".into(), |x| x.to_string()));
    let a = six_cycle_audit(&ib, &b, embed_budget)?;
    let _ = writeln!(
        s,
        "six_cycles {} interior {} unique {} multiple {} inconclusive {}",
        a.cycles, a.interior, a.unique, a.multiple, a.none
    );
    if edges {
        for (i, v) in ib.vertices.iter().enumerate() {
            let _ = writeln!(s, "vertex {i} {}", v.describe(&g));
        }
        for (x, y) in ib.graph.edges() {
            let _ = writeln!(s, "edge {x} {y}");
        }
    }
    emit(&s, out)
}

fn farey_cmd(qmax: i64, window: i64, out: Option<&Path>) -> Outcome {
    let ball = farey::farey_ball(qmax, window)?;
    emit(&ball.edge_list(), out)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    path: &Path,
    ball: BallArgs,
    checks: &[String],
    oracle_budget: usize,
    embed_budget: usize,
    farey_qmax: i64,
    g2_template: Option<&Path>,
    out: Option<&Path>,
) -> Outcome {
    let g = read_graph(path)?;
    let checks = if checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        checks.iter().map(|c| c.parse::<Check>()).collect::<Result<Vec<_>, _>>()?
    };
    let g2_template = match g2_template {
        None => None,
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Some(TypedPattern::parse(&text)?)
        }
    };
    let config = VerifyConfig { ball: ball.into(), oracle_budget, embed_budget, checks, g2_template, farey_qmax };
    let report = run_suite(&g, &config);
    emit(&report.to_text(), out)?;
    if report.count(Status::Fail) > 0 {
        Err(Failure::Check)
    } else if report.exhausted {
        Err(Failure::Core(Error::Budget("a check ran out of budget".into())))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { graph } => analyze(&graph),
        Command::Hierarchy { graph, cap } => hierarchy(&graph, cap),
        Command::Dihedral { query } => dihedral(query),
        Command::Deligne { graph, ball, out } => deligne(&graph, ball, out.as_deref()),
        Command::Igraph { graph, ball, embed_budget, edges, out } => {
            igraph(&graph, ball, embed_budget, edges, out.as_deref())
        }
        Command::Farey { qmax, window, out } => farey_cmd(qmax, window, out.as_deref()),
        Command::Verify { graph, ball, checks, oracle_budget, embed_budget, farey_qmax, g2_template, out } => verify(
            &graph,
            ball,
            &checks,
            oracle_budget,
            embed_budget,
            farey_qmax,
            g2_template.as_deref(),
            out.as_deref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Size { .. } | Error::Budget(_) | Error::Unresolved(_) => 3,
                Error::Certification(_) => 1,
                _ => 2,
            })
        }
    }
}
