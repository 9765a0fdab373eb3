//! `cctopo`: build complexes, compute invariants, run refinement engines and
//! generate benchmark datasets.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 expectation
//! violation.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::json;

use cctopo::covering::{verify_covering, CellMap};
use cctopo::dataset::{self, TorusDatasetSpec};
use cctopo::generators;
use cctopo::graph::{EdgeListReader, SimpleGraph};
use cctopo::invariants;
use cctopo::iso::{cc_isomorphic, check_isomorphism, IsoResult};
use cctopo::lifting::{self, MogParams};
use cctopo::refinement::{self, DiagramConfig, Engine, Rounds, Stage};
use cctopo::{CombinatorialComplex, NeighborhoodSpec};

#[derive(Parser)]
#[command(name = "cctopo", version, about = "Combinatorial complexes, covers, invariants and color refinement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a complex (JSON) or a graph (edge list).
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Lift a graph (edge list) to a 2-dimensional complex.
    Lift {
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LiftKind::Cyclic)]
        kind: LiftKind,
        #[arg(long, default_value_t = 8)]
        max_cycle_len: usize,
    },
    /// Mapper pooling of a graph with the average shortest-path lens.
    Pool {
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Interval spacing, e.g. `1/3`; defaults to a cover finer than the lens values.
        #[arg(long, requires = "eps")]
        eta: Option<Rational64>,
        /// Interval length.
        #[arg(long, requires = "eta")]
        eps: Option<Rational64>,
    },
    /// Invariant report of a complex.
    Invariants {
        complex: PathBuf,
        #[arg(long, default_value = "A:0,1")]
        spec: NeighborhoodSpec,
        #[arg(long, default_value_t = 2)]
        cross_k: usize,
    },
    /// Compare two complexes with a refinement engine or the exact oracle.
    Distinguish {
        left: PathBuf,
        right: PathBuf,
        /// homp | scl:R1,R2,dist|bin | smcn[:default] | oracle
        #[arg(long, default_value = "smcn")]
        engine: Engine,
        /// Fixed round count for stages that otherwise run until stable.
        #[arg(long)]
        rounds: Option<usize>,
        /// Also print the final per-rank color histograms.
        #[arg(long)]
        emit_colors: bool,
    },
    /// Check that a cell map (JSON with source, target, assignment) is a covering map.
    VerifyCover { map: PathBuf },
    /// Check a cell map for isomorphism, or search for one between two complexes.
    CheckIso {
        /// A cell map, or two complexes.
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Equal-size pairs of torus unions with cover certificates, as JSON lines.
    GenTorusDataset {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fail with an enumeration dump unless exactly this many pairs are produced.
        #[arg(long)]
        expect_pairs: Option<usize>,
    },
    /// Lift a stream of graphs and label them with cross-diameter and b2.
    LabelLifted {
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_cycle_len: usize,
    },
    /// Run engines over a dataset and report separated-pair counts.
    RunBenchmark {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "homp,smcn,oracle")]
        engines: Vec<Engine>,
        /// Expected separated counts, e.g. `homp=0,smcn=all`.
        #[arg(long, value_delimiter = ',')]
        expect: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// MIN_NODES MAX_NODES MAX_COMPONENTS
    #[arg(num_args = 3, value_names = ["MIN", "MAX", "COMPONENTS"], conflicts_with_all = ["min_nodes", "max_nodes", "max_components"])]
    positional: Vec<usize>,
    #[arg(long)]
    min_nodes: Option<usize>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_components: Option<usize>,
}

#[derive(Subcommand)]
enum Family {
    /// Torus with the given periods.
    Torus {
        #[arg(required = true)]
        periods: Vec<usize>,
    },
    Cylinder { height: usize, perimeter: usize },
    Moebius { height: usize, perimeter: usize },
    /// Star graph; with `--lift` the triangular lift as a complex.
    Star {
        n: usize,
        k: usize,
        #[arg(long)]
        lift: bool,
    },
    Cycle { n: usize },
    /// The two Mapper example graphs, as two edge-list records.
    MogPair,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftKind {
    Triangular,
    Cyclic,
}

/// Failure with the exit code it maps to.
enum Failure {
    Validation(anyhow::Error),
    Expectation(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Validation(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Expectation(msg)) => {
            eprintln!("expectation violated: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Gen { family, output } => gen(family, output.as_deref()),
        Command::Lift { input, output, kind, max_cycle_len } => {
            let g = read_graph(&input)?;
            let cc = match kind {
                LiftKind::Triangular => lifting::triangular_lift(&g),
                LiftKind::Cyclic => lifting::cyclic_lift(&g, max_cycle_len).map_err(anyhow::Error::from)?,
            };
            write_text(output.as_deref(), &(cc.encode_json() + "\n"))
        }
        Command::Pool { input, output, eta, eps } => {
            let g = read_graph(&input)?;
            let cc = match (eta, eps) {
                (Some(eta), Some(eps)) => lifting::mog_pool(&g, &lifting::avg_spd_lens(&g), MogParams { eta, eps }),
                _ => lifting::mog_pool_fine(&g),
            }
            .map_err(anyhow::Error::from)?;
            write_text(output.as_deref(), &(cc.encode_json() + "\n"))
        }
        Command::Invariants { complex, spec, cross_k } => {
            let cc = read_complex(&complex)?;
            let report = invariants::report(&cc, spec, cross_k).map_err(anyhow::Error::from)?;
            print_json(&json!(report))
        }
        Command::Distinguish { left, right, engine, rounds, emit_colors } => {
            distinguish(&left, &right, engine, rounds, emit_colors)
        }
        Command::VerifyCover { map } => {
            let map = CellMap::decode_json(&read_text(&map)?).map_err(anyhow::Error::from)?;
            verify_covering(&map).map_err(|e| anyhow!(e))?;
            print_json(&json!({ "covering": true, "fiber_sizes": map.fiber_sizes() }))
        }
        Command::CheckIso { inputs } => check_iso(&inputs),
        Command::GenTorusDataset { spec, output, expect_pairs } => gen_torus_dataset(spec, output.as_deref(), expect_pairs),
        Command::LabelLifted { input, output, max_cycle_len } => label_lifted(&input, output.as_deref(), max_cycle_len),
        Command::RunBenchmark { dataset, engines, expect, output } => {
            run_benchmark(&dataset, &engines, &expect, output.as_deref())
        }
    }
}

fn gen(family: Family, output: Option<&Path>) -> CmdResult {
    let complex = |r: Result<CombinatorialComplex, generators::GeneratorError>| -> Result<String, Failure> {
        Ok(r.map_err(anyhow::Error::from)?.encode_json() + "\n")
    };
    let text = match family {
        Family::Torus { periods } => complex(generators::torus(&periods))?,
        Family::Cylinder { height, perimeter } => complex(generators::cylinder(height, perimeter))?,
        Family::Moebius { height, perimeter } => complex(generators::moebius(height, perimeter))?,
        Family::Star { n, k, lift } => {
            let g = generators::star_graph(n, k).map_err(anyhow::Error::from)?;
            if lift {
                lifting::triangular_lift(&g).encode_json() + "\n"
            } else {
                g.to_edge_list()
            }
        }
        Family::Cycle { n } => generators::cycle_graph(n).map_err(anyhow::Error::from)?.to_edge_list(),
        Family::MogPair => {
            let (g, h) = generators::mog_example_pair();
            format!("{}\n{}", g.to_edge_list(), h.to_edge_list())
        }
    };
    write_text(output, &text)
}

fn with_rounds(engine: &Engine, rounds: usize) -> Engine {
    let Some(mut diagram) = engine.diagram() else { return engine.clone() };
    for stage in &mut diagram.stages {
        match stage {
            Stage::Homp { rounds: r, .. } | Stage::Scl { rounds: r, .. } if *r == Rounds::UntilStable => {
                *r = Rounds::Fixed(rounds);
            }
            _ => {}
        }
    }
    Engine::Smcn(diagram)
}

fn distinguish(left: &Path, right: &Path, engine: Engine, rounds: Option<usize>, emit_colors: bool) -> CmdResult {
    let (a, b) = (read_complex(left)?, read_complex(right)?);
    let run = match rounds {
        Some(n) => with_rounds(&engine, n),
        None => engine.clone(),
    };
    let verdict = refinement::distinguish(&a, &b, &run).map_err(anyhow::Error::from)?;
    let mut out = json!({ "engine": engine.to_string(), "result": verdict });
    if emit_colors {
        let diagram = run.diagram().unwrap_or_else(DiagramConfig::homp_full);
        let fps = refinement::smcn_refine(&[&a, &b], &diagram).map_err(anyhow::Error::from)?;
        out["fingerprints"] = json!(fps);
    }
    print_json(&out)
}

fn check_iso(inputs: &[PathBuf]) -> CmdResult {
    if let [map] = inputs {
        let map = CellMap::decode_json(&read_text(map)?).map_err(anyhow::Error::from)?;
        check_isomorphism(&map).map_err(|e| anyhow!(e))?;
        return print_json(&json!({ "isomorphism": true }));
    }
    let (a, b) = (read_complex(&inputs[0])?, read_complex(&inputs[1])?);
    match cc_isomorphic(&a, &b) {
        IsoResult::Isomorphic(map) => print_json(&json!({ "result": "isomorphic", "witness": map.to_json() })),
        IsoResult::NonIsomorphic => print_json(&json!({ "result": "non-isomorphic" })),
        IsoResult::Unknown => print_json(&json!({ "result": "unknown" })),
    }
}

fn dataset_spec(args: SpecArgs) -> Result<TorusDatasetSpec, Failure> {
    let (m, big, n) = match args.positional.as_slice() {
        [m, big, n] => (*m, *big, *n),
        _ => (
            args.min_nodes.unwrap_or(18),
            args.max_nodes.unwrap_or(40),
            args.max_components.unwrap_or(3),
        ),
    };
    Ok(TorusDatasetSpec::new(m, big, n).map_err(anyhow::Error::from)?)
}

fn gen_torus_dataset(args: SpecArgs, output: Option<&Path>, expect: Option<usize>) -> CmdResult {
    let spec = dataset_spec(args)?;
    let start = Instant::now();
    let pairs = dataset::gen_torus_dataset(&spec).map_err(anyhow::Error::from)?;
    let mut buf = Vec::new();
    dataset::write_jsonl(&pairs, &mut buf).context("serialising dataset")?;
    write_bytes(output, &buf)?;
    eprintln!("{} pairs in {:.2?}", pairs.len(), start.elapsed());
    if let Some(want) = expect {
        if pairs.len() != want {
            eprint!("{}", dataset::enumeration_dump(&spec));
            return Err(Failure::Expectation(format!("expected {want} pairs, generated {}", pairs.len())));
        }
    }
    Ok(())
}

fn label_lifted(input: &Path, output: Option<&Path>, max_cycle_len: usize) -> CmdResult {
    let text = read_text(input)?;
    let mut out: Box<dyn Write> = match output {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let (mut ok, mut failed) = (0, 0);
    for record in dataset::label_lifted_graphs(EdgeListReader::new(&text), max_cycle_len) {
        match record {
            Ok(labeled) => {
                serde_json::to_writer(&mut out, &labeled.to_json()).context("writing labels")?;
                out.write_all(b"\n").context("writing labels")?;
                ok += 1;
            }
            Err(e) => {
                eprintln!("skipped {e}");
                failed += 1;
            }
        }
    }
    out.flush().context("writing labels")?;
    eprintln!("{ok} labelled, {failed} skipped");
    Ok(())
}

/// Parses `name=count` or `name=all`.
fn parse_expectation(text: &str, total: usize) -> anyhow::Result<(String, usize)> {
    let (name, count) = text.split_once('=').ok_or_else(|| anyhow!("expectation `{text}` is not NAME=COUNT"))?;
    let count = if count == "all" { total } else { count.parse().with_context(|| format!("bad count in `{text}`"))? };
    Ok((name.to_string(), count))
}

fn run_benchmark(path: &Path, engines: &[Engine], expect: &[String], output: Option<&Path>) -> CmdResult {
    let pairs = dataset::read_jsonl(&read_text(path)?).map_err(anyhow::Error::from)?;
    let expectations: Vec<(String, usize)> =
        expect.iter().map(|e| parse_expectation(e, pairs.len())).collect::<anyhow::Result<_>>()?;
    let report = dataset::run_benchmark(&pairs, engines).map_err(anyhow::Error::from)?;
    let text = serde_json::to_string_pretty(&report).context("serialising report")? + "\n";
    write_text(output, &text)?;
    let mut violations = Vec::new();
    for e in &report.engines {
        eprintln!("{}: {}/{} separated, {} unknown, {} ms", e.engine, e.separated, e.pairs, e.unknown, e.wall_time_ms);
        if e.unknown > 0 {
            violations.push(format!("{} returned {} unknown verdicts", e.engine, e.unknown));
        }
    }
    for (name, want) in expectations {
        match report.engines.iter().find(|e| e.engine == name) {
            Some(e) if e.separated != want => violations.push(format!("{name} separated {}, expected {want}", e.separated)),
            Some(_) => {}
            None => return Err(anyhow!("expectation for `{name}`, which was not run").into()),
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Expectation(violations.join("; ")))
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    let text = read_text(path)?;
    Ok(SimpleGraph::from_edge_list(&text).with_context(|| format!("parsing graph {}", path.display()))?)
}

fn read_complex(path: &Path) -> Result<CombinatorialComplex, Failure> {
    let text = read_text(path)?;
    Ok(CombinatorialComplex::decode_json(&text).with_context(|| format!("parsing complex {}", path.display()))?)
}

fn write_bytes(output: Option<&Path>, bytes: &[u8]) -> CmdResult {
    match output {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().lock().write_all(bytes).context("writing stdout")?,
    }
    Ok(())
}

fn write_text(output: Option<&Path>, text: &str) -> CmdResult {
    write_bytes(output, text.as_bytes())
}

fn print_json(value: &serde_json::Value) -> CmdResult {
    let text = serde_json::to_string_pretty(value).context("serialising output")? + "\n";
    write_text(None, &text)
}
