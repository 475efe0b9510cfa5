use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bonnesen_core::bonnesen::{verify_chain, Mode};
use bonnesen_core::equality::{build_equality_instance, classify, EqualityWitness};
use bonnesen_core::geometry::minkowski_combination;
use bonnesen_core::harness::io::{read_body, write_body, write_json};
use bonnesen_core::harness::{run_fuzz_with, EqualityKind, FuzzConfig, FuzzMode};
use bonnesen_core::symmetrize::{schwarz, steiner};
use bonnesen_core::{ConvexBody, Direction, Error, Tolerances};

/// Bonnesen-type inequalities for convex polytopes.
#[derive(Parser)]
#[command(name = "bonnesen", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Section,
    Projection,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Section => Mode::Section,
            ModeArg::Projection => Mode::Projection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FuzzModeArg {
    Section,
    Projection,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Steiner,
    Schwarz,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Homothety,
    SectionStretch,
    ProjectionStretch,
}

#[derive(clap::Args)]
struct Pair {
    a: PathBuf,
    b: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the volume of a body.
    Vol { body: PathBuf },
    /// Minkowski combination alpha*A + beta*B.
    Sum {
        #[command(flatten)]
        pair: Pair,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Print the Bonnesen report for a pair of bodies.
    Bound {
        #[command(flatten)]
        pair: Pair,
        /// Direction as comma-separated coordinates.
        #[arg(long = "u", allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Steiner symmetral or Schwarz rounding of a body.
    Symmetrize {
        body: PathBuf,
        #[arg(long = "u", allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, default_value_t = 40)]
        grid: usize,
        #[arg(long, default_value_t = 64)]
        slices: usize,
        #[arg(long, default_value_t = 64)]
        ring: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Classify an equality case. Exit code 0: witness found, 2: no
    /// equality witness, 3: the inequality is strict.
    Classify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long = "u", allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Generate an instance of an equality family.
    GenEquality {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        seed: u64,
        #[arg(long = "dim")]
        dim: usize,
        /// Write <prefix>_A.json, <prefix>_B.json and <prefix>_scenario.json.
        #[arg(short = 'o')]
        prefix: Option<String>,
    },
    /// Run a seeded fuzz campaign.
    Fuzz {
        #[arg(long)]
        trials: usize,
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        mode: FuzzModeArg,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write per-trial gaps as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_direction(s: &str) -> Result<Direction> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("bad direction {s:?}"))?;
    Ok(Direction::new(v)?)
}

fn load(path: &Path) -> Result<ConvexBody> {
    read_body(path).with_context(|| format!("reading {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn emit_body(body: &ConvexBody, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_body(p, body).with_context(|| format!("writing {}", p.display())),
        None => print_json(body),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = Tolerances::from_env();
    match cli.command {
        Command::Vol { body } => {
            println!("{}", load(&body)?.volume());
        }
        Command::Sum { pair, out } => {
            let (a, b) = (load(&pair.a)?, load(&pair.b)?);
            let c = minkowski_combination(&a, &b, pair.alpha, pair.beta)?;
            emit_body(&c, out.as_deref())?;
        }
        Command::Bound { pair, u, mode } => {
            let (a, b) = (load(&pair.a)?, load(&pair.b)?);
            let u = parse_direction(&u)?;
            let r = verify_chain(&a, &b, pair.alpha, pair.beta, &u, mode.into(), &tol)?;
            print_json(&r)?;
        }
        Command::Symmetrize {
            body,
            u,
            method,
            grid,
            slices,
            ring,
            out,
        } => {
            let k = load(&body)?;
            let u = parse_direction(&u)?;
            let s = match method {
                Method::Steiner => steiner(&k, &u, grid)?,
                Method::Schwarz => schwarz(&k, &u, slices, ring)?,
            };
            emit_body(&s, out.as_deref())?;
        }
        Command::Classify { pair, u, mode } => {
            let (a, b) = (load(&pair.a)?, load(&pair.b)?);
            let u = parse_direction(&u)?;
            match classify(&a, &b, pair.alpha, pair.beta, &u, mode.into(), &tol) {
                Ok(w) => {
                    print_json(&w)?;
                    if matches!(w, EqualityWitness::NoEquality { .. }) {
                        return Ok(ExitCode::from(2));
                    }
                }
                Err(Error::PreconditionViolated(msg)) => {
                    eprintln!("precondition violated: {msg}");
                    return Ok(ExitCode::from(3));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::GenEquality {
            kind,
            seed,
            dim,
            prefix,
        } => {
            let kind = match kind {
                KindArg::Homothety => EqualityKind::Homothety,
                KindArg::SectionStretch => EqualityKind::SectionStretch,
                KindArg::ProjectionStretch => EqualityKind::ProjectionStretch,
            };
            let s = build_equality_instance(kind, seed, dim)?;
            match prefix {
                Some(p) => {
                    write_body(format!("{p}_A.json"), &s.a)?;
                    write_body(format!("{p}_B.json"), &s.b)?;
                    write_json(format!("{p}_scenario.json"), &s)?;
                }
                None => print_json(&s)?,
            }
        }
        Command::Fuzz {
            trials,
            dim,
            seed,
            mode,
            report,
            csv,
        } => {
            let mode = match mode {
                FuzzModeArg::Section => FuzzMode::Section,
                FuzzModeArg::Projection => FuzzMode::Projection,
                FuzzModeArg::Both => FuzzMode::Both,
            };
            let mut cfg = FuzzConfig::new(trials, dim, seed, mode);
            cfg.tolerances = tol;
            let r = run_fuzz_with(&cfg)?;
            println!(
                "trials={} violations={} equality_hits={} seconds={:.2}",
                r.trials,
                r.violations.len(),
                r.equality_hits.len(),
                r.timing.total
            );
            for v in &r.violations {
                eprintln!("seed {}: {} (margin {:?})", v.seed, v.invariant, v.margin);
            }
            if let Some(p) = report {
                write_json(&p, &r)?;
            }
            if let Some(p) = csv {
                std::fs::write(&p, r.gaps_csv())
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            if !r.violations.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
