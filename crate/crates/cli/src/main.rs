use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use probe_chroma::format::{emit_result, error_json, parse_colouring, parse_instance, write_instance, OutputFormat};
use probe_chroma::generators::{gen_family_instance, Family};
use probe_chroma::graph::{ProbeInstance, SearchError};
use probe_chroma::oracle::{oracle_is_probe_hfree, OracleError};
use probe_chroma::patterns::parse_pattern_family;
use probe_chroma::reductions::{gen_precolext_reduction, gen_x3c_reduction, X3cInstance};
use probe_chroma::solver::{solve_3col, verify_colouring, SolveError, SolverOptions, Status, Verdict};
use probe_chroma::special::solve_3col_p3sp1;

const EXIT_NOT_COLOURABLE: u8 = 1;
const EXIT_NOT_PROBE_P5_FREE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CAPABILITY: u8 = 4;

/// Decide 3-colourability of partitioned probe P5-free graphs.
#[derive(Parser)]
#[command(name = "probe-chroma", version)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance read from a file or stdin.
    Solve {
        input: Option<PathBuf>,
        /// Brute-force components that fail a structural check.
        #[arg(long)]
        fallback_oracle: bool,
        /// Node cap for each induced-subgraph search.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a colouring against an instance (second argument or stdin).
    Verify { colouring: PathBuf, instance: Option<PathBuf> },
    /// Generate a random instance of a family.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, env = "PROBE_CHROMA_SEED", default_value_t = 0)]
        seed: u64,
        /// Number of isolated vertices in the forbidden pattern.
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Decide whether an instance is probe H-free for a pattern family.
    Recognize {
        input: Option<PathBuf>,
        /// Comma-separated patterns such as `p5`, `2p2`, `p3+2p1`.
        #[arg(long)]
        pattern: String,
        /// Use the partition from the input instead of trying all.
        #[arg(long)]
        fixed_partition: bool,
    },
    /// Build an NP-hardness gadget instance.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        input: PathBuf,
        /// Triangle vertices on the probe side, for `precol`.
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<usize>>,
    },
    /// Time the solver on generated probe P5-free instances.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        sizes: Vec<usize>,
        #[arg(long, env = "PROBE_CHROMA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        reps: u64,
    },
    /// Solve a partitioned probe (P3 + sP1)-free instance.
    #[command(name = "solve-p3sp1")]
    SolveP3sp1 {
        input: Option<PathBuf>,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "probe-p5")]
    ProbeP5,
    #[value(name = "probe-p3sp1")]
    ProbeP3sp1,
    #[value(name = "probe-p2sp1")]
    ProbeP2sp1,
    #[value(name = "trianglefree-probe-p5")]
    TrianglefreeProbeP5,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    X3c,
    Precol,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let format = if cli.pretty { OutputFormat::Pretty } else { OutputFormat::Json };
    match run(cli.command, format) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            println!("{}", error_json(&format!("{err:#}")));
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let capability = err.chain().any(|e| {
        e.is::<SolveError>() || e.is::<SearchError>() || matches!(e.downcast_ref(), Some(OracleError::TooLarge { .. }))
    });
    if capability {
        EXIT_CAPABILITY
    } else {
        EXIT_INPUT
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn read_instance(path: Option<&Path>) -> Result<ProbeInstance> {
    let text = read_text(path)?;
    parse_instance(&text).context("invalid instance")
}

fn print_json(value: &serde_json::Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{value}"),
        OutputFormat::Pretty => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn status_code(verdict: &Verdict) -> u8 {
    match verdict.status {
        Status::Colourable => 0,
        Status::NotColourable => EXIT_NOT_COLOURABLE,
        Status::NotProbeP5Free => EXIT_NOT_PROBE_P5_FREE,
    }
}

fn run(command: Command, format: OutputFormat) -> Result<u8> {
    match command {
        Command::Solve { input, fallback_oracle, budget } => {
            let inst = read_instance(input.as_deref())?;
            let opts = SolverOptions { oracle_fallback: fallback_oracle, search_budget: budget, seed: None };
            let verdict = solve_3col(&inst, &opts)?;
            println!("{}", emit_result(&verdict, format));
            Ok(status_code(&verdict))
        }
        Command::Verify { colouring, instance } => {
            let text = fs::read_to_string(&colouring).with_context(|| format!("cannot read {}", colouring.display()))?;
            let colours = parse_colouring(&text).context("invalid colouring")?;
            let inst = read_instance(instance.as_deref())?;
            match verify_colouring(inst.graph(), &colours, 3) {
                Ok(()) => {
                    print_json(&json!({ "valid": true }), format);
                    Ok(0)
                }
                Err(v) => {
                    print_json(&json!({ "valid": false, "violation": v.to_string() }), format);
                    Ok(1)
                }
            }
        }
        Command::Gen { family, n, density, seed, s } => {
            if !(0.0..=1.0).contains(&density) {
                bail!("density must lie in [0, 1], got {density}");
            }
            let family = match family {
                FamilyArg::ProbeP5 => Family::ProbeP5,
                FamilyArg::ProbeP3sp1 => Family::ProbeP3sP1(s),
                FamilyArg::ProbeP2sp1 => Family::ProbeP2sP1(s),
                FamilyArg::TrianglefreeProbeP5 => Family::TriangleFreeProbeP5,
            };
            let gen = gen_family_instance(family, n, density, seed);
            let mut comments = vec![
                format!("seed {seed}"),
                format!("params {}", serde_json::to_string(&gen.params).expect("serializable")),
            ];
            comments.extend(gen.certificate.fill_edges.iter().map(|(u, v)| format!("fill {u} {v}")));
            print!("{}", write_instance(&gen.instance, &comments));
            Ok(0)
        }
        Command::Recognize { input, pattern, fixed_partition } => {
            let inst = read_instance(input.as_deref())?;
            let patterns = parse_pattern_family(&pattern).context("invalid pattern")?;
            let partition = fixed_partition.then(|| inst.probe_flags());
            let cert = oracle_is_probe_hfree(inst.graph(), &patterns, partition)?;
            let out = match &cert {
                Some(c) => json!({ "probe_free": true, "nonprobes": c.nonprobes, "fill_edges": c.fill_edges }),
                None => json!({ "probe_free": false }),
            };
            print_json(&out, format);
            Ok(if cert.is_some() { 0 } else { 1 })
        }
        Command::Reduce { kind, input, triple } => {
            let text = read_text(Some(&input))?;
            match kind {
                ReduceKind::X3c => {
                    let x3c: X3cInstance = serde_json::from_str(&text).context("invalid X3C instance")?;
                    let (inst, s) = gen_x3c_reduction(&x3c)?;
                    print!("{}", write_instance(&inst, &["reduction x3c".into(), format!("target {s}")]));
                }
                ReduceKind::Precol => {
                    let Some(t) = triple.filter(|t| t.len() == 3) else { bail!("precol needs --triple a,b,c") };
                    let bip = parse_instance(&text).context("invalid instance")?;
                    let inst = gen_precolext_reduction(bip.graph(), bip.probe_flags(), [t[0], t[1], t[2]])?;
                    let note = format!("precolouring {} -> 1, {} -> 2, {} -> 3", t[0], t[1], t[2]);
                    print!("{}", write_instance(&inst, &["reduction precol".into(), note]));
                }
            }
            Ok(0)
        }
        Command::Bench { sizes, seed, density, reps } => {
            for n in sizes {
                let mut times = Vec::new();
                let mut max_calls = 0;
                let mut colourable = 0;
                for r in 0..reps.max(1) {
                    let gen = gen_family_instance(Family::ProbeP5, n, density, seed.wrapping_add(r));
                    let start = Instant::now();
                    let verdict = solve_3col(&gen.instance, &SolverOptions::default())?;
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                    max_calls = max_calls.max(verdict.stats.max_two_sat_calls_per_component);
                    colourable += u64::from(verdict.status == Status::Colourable);
                }
                times.sort_by(f64::total_cmp);
                let mid = times.len() / 2;
                let median = if times.len() % 2 == 0 { (times[mid - 1] + times[mid]) / 2.0 } else { times[mid] };
                let row = json!({
                    "n": n,
                    "reps": times.len(),
                    "median_ms": median,
                    "max_two_sat_calls_per_component": max_calls,
                    "colourable": colourable,
                    "seed": seed,
                });
                print_json(&row, format);
            }
            Ok(0)
        }
        Command::SolveP3sp1 { input, s } => {
            let inst = read_instance(input.as_deref())?;
            let verdict = solve_3col_p3sp1(&inst, s)?;
            println!("{}", emit_result(&verdict, format));
            Ok(status_code(&verdict))
        }
    }
}
