use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quasimatroid::bitset::EdgeSet;
use quasimatroid::bracelets::{bracelet_graph, BraceletFunction};
use quasimatroid::constructions::{link_sum, loop_sum, minor, MinorOp, MinorStep};
use quasimatroid::error::Error;
use quasimatroid::examples::{generate, ExampleSpec};
use quasimatroid::graph::DEFAULT_CYCLE_LIMIT;
use quasimatroid::io::{edge_sets_to_json, load_bundle, Bundle, Instance, Rule};
use quasimatroid::matroid::{bases, circuits, circuits_chi, cocircuits, RankOracle};
use quasimatroid::tripartition::{chi_from_tripartition, Side};
use quasimatroid::verify::{
    classify_frame_lift, cocircuits_bruteforce, ingleton_search, run_suite, Suite, DEFAULT_TABLE_CAP,
};

const CAP_VAR: &str = "QUASIMATROID_CAP";

#[derive(Parser)]
#[command(
    name = "quasimatroid",
    version,
    about = "Quasi-graphic matroids from graphs with cycle tripartitions"
)]
struct Cli {
    /// Indented JSON instead of one object per line.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// JSON documents, merged; none or `-` reads standard input.
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated instance.
    Gen {
        #[command(subcommand)]
        example: Example,
    },
    /// Check that the inputs describe a proper instance.
    Validate(Inputs),
    /// Rank of an edge set, by default the whole ground set.
    Rank {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// All circuits, as sorted edge lists
    Circuits(Inputs),
    Cocircuits(Inputs),
    /// All bases; refused above the QUASIMATROID_CAP ground-set size
    Bases(Inputs),
    /// Delete and contract edges, given by their original indices.
    Minor {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<usize>,
    },
    /// Glue two instances along a basepoint edge of each.
    Sum {
        #[command(subcommand)]
        kind: SumKind,
    },
    /// Search pairs of disjoint L-cycles and F-cycles for an Ingleton violation.
    Ingleton(Inputs),
    /// Run a verification suite; exit 1 if a check fails.
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "full")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest ground set for exhaustive checks.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    L,
    F,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::L,
            SideArg::F => Side::F,
        }
    }
}

#[derive(Subcommand)]
enum Example {
    /// K_n with no balanced cycles, every cycle on one side.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "f")]
        side: SideArg,
    },
    /// K_n classified by how cycles meet the 4-cycle 0 1 2 3.
    FourCycleParity {
        #[arg(long)]
        n: usize,
    },
    /// K_{a,b} plus a cycle on each part; the two added cycles on `side`.
    Kab {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value = "l")]
        side: SideArg,
    },
    /// A 4-cycle with every edge doubled; two opposite digons in L, all other cycles in F
    DoubledSquare,
    /// A seeded random multigraph with a random proper tripartition
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Balanced cycles from random edge signs instead of none.
        #[arg(long)]
        signed: bool,
    },
    /// The 2m x 2m torus grid with contractible cycles balanced.
    Torus {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum SumKind {
    /// Identify link `e1` of the first instance with link `e2` of the second
    /// graph (all of whose cycles are balanced) and delete both.
    Link {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        e2: usize,
    },
    /// Identify the vertices of unbalanced loops `e1` and `e2` and delete both.
    Loop {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        e2: usize,
    },
}

/// Errors stop the command with exit code 2.
struct Failure(Error);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e)
    }
}

struct Out {
    pretty: bool,
    lines: Vec<String>,
}

impl Out {
    fn emit(&mut self, v: &impl Serialize) {
        let s = if self.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        };
        self.lines.push(s.expect("serializable output"));
    }
}

fn read_texts(files: &[PathBuf]) -> Result<Vec<String>, Failure> {
    let read_stdin = || {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map(|_| s)
            .map_err(|e| Failure(Error::Format(format!("standard input: {e}"))))
    };
    if files.is_empty() {
        return Ok(vec![read_stdin()?]);
    }
    files
        .iter()
        .map(|p| {
            if p.as_os_str() == "-" {
                read_stdin()
            } else {
                std::fs::read_to_string(p).map_err(|e| Failure(Error::Format(format!("{}: {e}", p.display()))))
            }
        })
        .collect()
}

fn load(files: &[PathBuf]) -> Result<Instance, Failure> {
    let texts = read_texts(files)?;
    Ok(load_bundle(texts.iter().map(String::as_str))?.resolve(DEFAULT_CYCLE_LIMIT)?)
}

fn cap_from_env() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure(Error::Format(format!(
                "{CAP_VAR} must be a non-negative integer, got {v:?}"
            )))
        }),
        Err(_) => Ok(DEFAULT_TABLE_CAP),
    }
}

fn edge_set(g: &quasimatroid::graph::Multigraph, edges: &[usize]) -> Result<EdgeSet, Failure> {
    let x: EdgeSet = edges.iter().copied().collect();
    g.check_edge_set(&x)?;
    Ok(x)
}

fn gen(example: &Example, out: &mut Out) -> Result<(), Failure> {
    let spec = match *example {
        Example::Complete { n, side } => ExampleSpec::Complete { n, side: side.into() },
        Example::FourCycleParity { n } => ExampleSpec::FourCycleParity { n },
        Example::Kab { a, b, side } => ExampleSpec::Kab {
            a,
            b,
            side: side.into(),
        },
        Example::DoubledSquare => ExampleSpec::DoubledSquare,
        Example::Random { n, m, seed, signed } => ExampleSpec::Random { n, m, seed, signed },
        Example::Torus { m } => {
            let bundle = Bundle {
                graph: Some(quasimatroid::examples::torus_graph(m)?),
                bias: Some(quasimatroid::io::BiasJson::Rule(Rule::new(
                    "contractible",
                    json!({ "m": m }),
                ))),
                ..Bundle::default()
            };
            out.emit(&bundle);
            return Ok(());
        }
    };
    out.emit(&Bundle::from_tripartition(&generate(&spec)?));
    Ok(())
}

fn validate(inst: &Instance, out: &mut Out) -> Result<(), Failure> {
    let bg = &inst.bias;
    let bgraph = bracelet_graph(bg);
    let mut report = json!({
        "valid": true,
        "vertices": bg.graph().vertex_count(),
        "edges": bg.graph().edge_count(),
        "cycles": bg.space().len(),
        "balanced_cycles": bg.balanced_flags().iter().filter(|&&b| b).count(),
        "bracelets": bgraph.nodes().len(),
        "bracelet_components": bgraph.component_count(),
    });
    if inst.chi.is_some() && inst.tripartition.is_none() {
        let chi = inst.chi.as_ref().expect("checked");
        quasimatroid::bracelets::check_proper(bg, chi)?;
    }
    if inst.tripartition.is_some() || inst.chi.is_some() {
        let t = inst.require_tripartition()?;
        report["degenerate"] = json!({ "L": t.is_degenerate(Side::L), "F": t.is_degenerate(Side::F) });
        report["classification"] = serde_json::to_value(classify_frame_lift(&t)?).expect("serializable");
    }
    out.emit(&report);
    Ok(())
}

/// Runs the command; `Ok(false)` means a verification check failed.
fn run(cli: &Cli, out: &mut Out) -> Result<bool, Failure> {
    match &cli.command {
        Command::Gen { example } => gen(example, out)?,
        Command::Validate(inputs) => validate(&load(&inputs.files)?, out)?,
        Command::Rank { inputs, set } => {
            let inst = load(&inputs.files)?;
            let t = inst.require_tripartition()?;
            let x = match set {
                Some(s) => edge_set(inst.graph(), s)?,
                None => inst.graph().edge_set(),
            };
            out.emit(&json!({ "set": x, "rank": RankOracle::new(&t).rank(&x) }));
        }
        Command::Circuits(inputs) => {
            let inst = load(&inputs.files)?;
            let cf = match (&inst.tripartition, &inst.chi) {
                (None, Some(chi)) => circuits_chi(&inst.bias, chi)?,
                _ => circuits(&inst.require_tripartition()?)?,
            };
            out.emit(&edge_sets_to_json(cf.circuits()));
        }
        Command::Cocircuits(inputs) => {
            let t = load(&inputs.files)?.require_tripartition()?;
            // The structural description needs both sides non-degenerate.
            let sets = match cocircuits(&t) {
                Err(Error::DegenerateTripartition(_)) => cocircuits_bruteforce(&circuits(&t)?, cap_from_env()?)?,
                other => other?,
            };
            out.emit(&edge_sets_to_json(&sets));
        }
        Command::Bases(inputs) => {
            let t = load(&inputs.files)?.require_tripartition()?;
            out.emit(&edge_sets_to_json(&bases(&t, cap_from_env()?)?));
        }
        Command::Minor {
            inputs,
            delete,
            contract,
        } => {
            let t = load(&inputs.files)?.require_tripartition()?;
            let steps: Vec<MinorStep> = delete
                .iter()
                .map(|&edge| MinorStep {
                    operation: MinorOp::Delete,
                    edge,
                })
                .chain(contract.iter().map(|&edge| MinorStep {
                    operation: MinorOp::Contract,
                    edge,
                }))
                .collect();
            let m = minor(&t, &steps)?;
            let mut doc = serde_json::to_value(Bundle::from_tripartition(&m.tripartition)).expect("serializable");
            doc["edge_map"] = json!(m.edge_map);
            out.emit(&doc);
        }
        Command::Sum { kind } => sum(kind, out)?,
        Command::Ingleton(inputs) => {
            let t = load(&inputs.files)?.require_tripartition()?;
            out.emit(&json!({ "violation": ingleton_search(&t)? }));
        }
        Command::Verify {
            inputs,
            suite,
            seed,
            cap,
        } => {
            let inst = load(&inputs.files)?;
            let cap = match cap {
                Some(c) => *c,
                None => cap_from_env()?,
            };
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let name = instance_name(&inputs.files);
            let reports = run_suite(&inst, suite, *seed, cap)?;
            let mut ok = true;
            for r in reports {
                ok &= !r.failed();
                out.emit(&r.on(name.clone()));
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn instance_name(files: &[PathBuf]) -> String {
    if files.is_empty() {
        return "-".into();
    }
    files
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join("+")
}

fn sum(kind: &SumKind, out: &mut Out) -> Result<(), Failure> {
    match kind {
        SumKind::Link { first, second, e1, e2 } => {
            let t1 = load(std::slice::from_ref(first))?.require_tripartition()?;
            let g2 = load(std::slice::from_ref(second))?.graph().clone();
            let s = link_sum(&t1, *e1, &g2, *e2)?;
            let mut doc = serde_json::to_value(Bundle::from_tripartition(&s.tripartition)).expect("serializable");
            doc["edge_map"] = serde_json::to_value(&s.maps).expect("serializable");
            out.emit(&doc);
        }
        SumKind::Loop { first, second, e1, e2 } => {
            let chi_of = |inst: &Instance| -> Result<BraceletFunction, Failure> {
                Ok(match (&inst.tripartition, &inst.chi) {
                    (None, Some(chi)) => chi.clone(),
                    _ => chi_from_tripartition(&inst.require_tripartition()?)?,
                })
            };
            let a = load(std::slice::from_ref(first))?;
            let b = load(std::slice::from_ref(second))?;
            let s = loop_sum(&a.bias, *e1, &chi_of(&a)?, &b.bias, *e2, &chi_of(&b)?)?;
            out.emit(&json!({
                "graph": s.graph,
                "circuits": edge_sets_to_json(s.circuits.circuits()),
                "edge_map": s.maps,
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        pretty: cli.pretty,
        lines: Vec::new(),
    };
    let result = run(&cli, &mut out);
    let mut stdout = io::stdout().lock();
    for line in &out.lines {
        let _ = writeln!(stdout, "{line}");
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(e)) => {
            let diagnostic: Value = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{diagnostic}");
            ExitCode::from(2)
        }
    }
}
