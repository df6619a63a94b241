//! `oneshot` command-line interface.
//!
//! Human summaries go to stdout, diagnostics to stderr. Exit codes: 0 on
//! success, 1 on engine or input errors (and failed checks), 2 on usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::capacity::{
    avg_capacity, avg_capacity_via_graph, brute_force_capacity, capacity_curve, max_capacity,
    max_capacity_via_graph, CapacityResult, Metric, BRUTE_FORCE_LIMIT,
};
use crate::channel::{
    gen_example1, gen_from_cubic_graph, gen_random, gen_random_cubic, parse_channel, parse_cubic_graph,
    write_channel, write_cubic_graph, Channel, CubicGraph, Example1Spec,
};
use crate::decoding::{codeword_errors, is_avg_admissible, is_max_admissible, simulate, Scheme};
use crate::error::Error;
use crate::graphs::{
    build_avg_graph_with, build_max_graph_with, sparse_number, AvgGraphConfig, MaxGraphConfig,
};
use crate::hardness::verify_reduction;
use crate::prob::Prob;

#[derive(Debug, Parser)]
#[command(name = "oneshot", version, about = "Exact one-shot capacity of discrete channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a channel file and report its shape.
    Validate { channel: PathBuf },
    /// Largest codebook meeting the error budget, and log2 of its size.
    Capacity(CapacityArgs),
    /// Capacity as a step function of epsilon, as CSV.
    Curve {
        channel: PathBuf,
        #[arg(long)]
        metric: Metric,
        /// CSV destination; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Epsilon-sparse number of the average-one-shot graph.
    Sparse {
        channel: PathBuf,
        #[arg(long)]
        epsilon: Prob,
        /// Add a node (x, {}) per input, for codewords that own no output.
        #[arg(long)]
        include_empty: bool,
    },
    /// Print a one-shot graph in the text dump format.
    GraphDump {
        channel: PathBuf,
        #[arg(long)]
        epsilon: Option<Prob>,
        #[arg(long)]
        variant: Metric,
        /// Maximum graph: every admissible set, not only minimal ones.
        #[arg(long)]
        all_sets: bool,
        /// Average graph: add (x, {}) nodes.
        #[arg(long)]
        include_empty: bool,
    },
    /// Channel built from a cubic graph.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the graph's independence number with the reduced channel's capacity.
    VerifyReduction {
        graph: PathBuf,
        #[arg(long)]
        epsilon: Prob,
    },
    /// Monte-Carlo error estimate for a scheme.
    Simulate {
        channel: PathBuf,
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate channels and graphs.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
struct CapacityArgs {
    channel: PathBuf,
    #[arg(long)]
    metric: Metric,
    #[arg(long)]
    epsilon: Prob,
    /// Write the achieving scheme as JSON.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Engine::Packing)]
    engine: Engine,
    /// Run every applicable engine and fail if they disagree.
    #[arg(long)]
    cross_check: bool,
    /// Print the full result as JSON instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Set packing (max) or codebook search (avg).
    #[value(alias = "search")]
    Packing,
    /// Independence or sparse number of the one-shot graph.
    Graph,
    /// Every codebook and decoder; tiny channels only.
    Brute,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Staircase channel with thresholds e_1 < ... < e_{n-1}.
    Example1 {
        #[arg(long)]
        n: usize,
        /// Comma-separated thresholds, e.g. 1/100,1/50.
        #[arg(long, value_delimiter = ',')]
        e: Vec<Prob>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random channel with rational entries.
    Random {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest row denominator.
        #[arg(long, default_value_t = 12)]
        denom: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random simple cubic graph.
    Cubic {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams. `argv[0]` is the program name.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let text = e.render().to_string();
                let _ = write!(err, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Other(format!("{}: {e}", path.display())))
}

fn load_channel(path: &Path) -> Result<Channel, Error> {
    parse_channel(&read(path)?).map_err(|e| Error::Other(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<CubicGraph, Error> {
    parse_cubic_graph(&read(path)?).map_err(|e| Error::Other(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Result<(), Error> {
    match dest {
        Some(path) => fs::write(path, text).map_err(|e| Error::Other(format!("{}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Validate { channel } => {
            let c = load_channel(&channel)?;
            writeln!(out, "inputs={} outputs={}", c.num_inputs(), c.num_outputs())?;
            for x in 0..c.num_inputs() {
                let sum = c.row(x).iter().fold(Prob::zero().into_ratio(), |a, p| a + p.ratio());
                writeln!(out, "row {x}: sum={} support={}", crate::prob::fmt_rational(&sum), c.support(x).len())?;
            }
            Ok(0)
        }
        Command::Capacity(args) => capacity_command(args, out, err),
        Command::Curve { channel, metric, out: dest } => {
            let c = load_channel(&channel)?;
            let curve = capacity_curve(&c, metric)?;
            emit(out, dest.as_deref(), &curve.to_csv())?;
            Ok(0)
        }
        Command::Sparse {
            channel,
            epsilon,
            include_empty,
        } => {
            let c = load_channel(&channel)?;
            let g = build_avg_graph_with(
                &c,
                AvgGraphConfig {
                    include_empty_sets: include_empty,
                    ..AvgGraphConfig::default()
                },
            )?;
            let (alpha, witness) = sparse_number(&g, &epsilon);
            writeln!(out, "alpha={alpha}")?;
            writeln!(out, "witness={}", serde_json::to_string(&witness)?)?;
            Ok(0)
        }
        Command::GraphDump {
            channel,
            epsilon,
            variant,
            all_sets,
            include_empty,
        } => {
            let c = load_channel(&channel)?;
            let text = match variant {
                Metric::Maximum => {
                    let eps = epsilon
                        .ok_or_else(|| Error::Other("--epsilon is required for the max variant".into()))?;
                    let config = MaxGraphConfig {
                        minimal_only: !all_sets,
                        ..MaxGraphConfig::default()
                    };
                    build_max_graph_with(&c, &eps, config)?.dump()
                }
                Metric::Average => {
                    let config = AvgGraphConfig {
                        include_empty_sets: include_empty,
                        ..AvgGraphConfig::default()
                    };
                    build_avg_graph_with(&c, config)?.dump()
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Reduce { graph, out: dest } => {
            let g = load_graph(&graph)?;
            emit(out, dest.as_deref(), &write_channel(&gen_from_cubic_graph(&g)))?;
            Ok(0)
        }
        Command::VerifyReduction { graph, epsilon } => {
            let g = load_graph(&graph)?;
            let report = verify_reduction(&g, &epsilon)?;
            writeln!(out, "{}", report.to_json())?;
            Ok(if report.agree { 0 } else { 1 })
        }
        Command::Simulate {
            channel,
            scheme,
            trials,
            seed,
        } => {
            let c = load_channel(&channel)?;
            let s = Scheme::from_json(&read(&scheme)?)?;
            let report = simulate(&c, &s, trials, seed)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(0)
        }
        Command::Gen(g) => gen_command(g, out),
    }
}

fn run_engine(c: &Channel, metric: Metric, epsilon: &Prob, engine: Engine) -> Result<CapacityResult, Error> {
    Ok(match (engine, metric) {
        (Engine::Packing, Metric::Maximum) => max_capacity(c, epsilon),
        (Engine::Packing, Metric::Average) => avg_capacity(c, epsilon),
        (Engine::Graph, Metric::Maximum) => max_capacity_via_graph(c, epsilon)?,
        (Engine::Graph, Metric::Average) => avg_capacity_via_graph(c, epsilon)?,
        (Engine::Brute, _) => brute_force_capacity(c, metric, epsilon)?,
    })
}

fn admissible(c: &Channel, metric: Metric, epsilon: &Prob, s: &Scheme) -> Result<bool, Error> {
    Ok(match metric {
        Metric::Maximum => is_max_admissible(c, s, epsilon)?,
        Metric::Average => is_avg_admissible(c, s, epsilon)?,
    })
}

fn capacity_command(args: CapacityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let c = load_channel(&args.channel)?;
    let result = run_engine(&c, args.metric, &args.epsilon, args.engine)?;
    let mut code = 0;
    if !admissible(&c, args.metric, &args.epsilon, &result.witness)? {
        writeln!(err, "witness from {:?} engine is not admissible", args.engine)?;
        code = 1;
    }
    if args.cross_check {
        for engine in [Engine::Packing, Engine::Graph, Engine::Brute] {
            if engine == args.engine {
                continue;
            }
            if engine == Engine::Brute
                && (c.num_inputs() > BRUTE_FORCE_LIMIT || c.num_outputs() > BRUTE_FORCE_LIMIT)
            {
                writeln!(err, "cross-check: brute engine skipped, channel exceeds {BRUTE_FORCE_LIMIT}x{BRUTE_FORCE_LIMIT}")?;
                continue;
            }
            let other = run_engine(&c, args.metric, &args.epsilon, engine)?;
            let ok = admissible(&c, args.metric, &args.epsilon, &other.witness)?;
            if other.codebook_size != result.codebook_size || !ok {
                writeln!(
                    err,
                    "cross-check failed: {:?} k={} vs {:?} k={} (admissible={ok})",
                    args.engine, result.codebook_size, engine, other.codebook_size
                )?;
                code = 1;
            } else {
                writeln!(err, "cross-check: {engine:?} k={} agrees", other.codebook_size)?;
            }
        }
    }
    if let Some(path) = &args.witness {
        fs::write(path, result.witness.to_json() + "\n")
            .map_err(|e| Error::Other(format!("{}: {e}", path.display())))?;
    }
    if args.json {
        writeln!(out, "{}", result.to_json())?;
    } else {
        writeln!(out, "metric={} epsilon={}", result.metric, result.epsilon)?;
        writeln!(out, "k={}", result.codebook_size)?;
        writeln!(out, "capacity={} bits", result.bits_string())?;
        let codebook: Vec<String> = result.witness.codebook().iter().map(usize::to_string).collect();
        writeln!(out, "codebook={}", codebook.join(","))?;
        let errors: Vec<String> = codeword_errors(&c, &result.witness)?.iter().map(Prob::to_string).collect();
        writeln!(out, "errors={}", errors.join(","))?;
    }
    Ok(code)
}

fn gen_command(command: GenCommand, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        GenCommand::Example1 { n, e, out: dest } => {
            let spec = Example1Spec::new(n, e)?;
            emit(out, dest.as_deref(), &write_channel(&gen_example1(&spec)))?;
        }
        GenCommand::Random {
            nx,
            ny,
            seed,
            denom,
            out: dest,
        } => {
            emit(out, dest.as_deref(), &write_channel(&gen_random(nx, ny, seed, denom)?))?;
        }
        GenCommand::Cubic {
            vertices,
            seed,
            out: dest,
        } => {
            emit(out, dest.as_deref(), &write_cubic_graph(&gen_random_cubic(vertices, seed)?))?;
        }
    }
    Ok(0)
}
