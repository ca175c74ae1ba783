use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use flag_einstein::einstein;
use flag_einstein::flag::{FlagError, FlagManifold};
use flag_einstein::solve::SolverConfig;
use flag_einstein::{flag_from_spec, Error};
use flag_einstein_cli::{render, RunReport};

const NUMBERING_HELP: &str = "\
Simple roots follow Bourbaki numbering for types A-F:
  B_l, C_l: alpha_l is the end node next to the double bond
  D_l: alpha_{l-1}, alpha_l are the fork nodes
  E_l: alpha_2 is the node attached to alpha_4
  F4: alpha_1, alpha_2 long, alpha_3, alpha_4 short
  G2: alpha_1 long, alpha_2 short, highest root 2alpha_1+3alpha_2
Groups may be given as labels (B3, g2) or as SU(n), SO(n), Sp(n).
Painted sets: --paint 1,3 | --paint mark=5 | --full-flag.";

#[derive(Parser, Debug)]
#[command(name = "flag-einstein", version, about = "Invariant Einstein metrics on flag manifolds G/K", after_help = NUMBERING_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, t-roots, summand dimensions and b2.
    Describe(Target),
    /// Symmetric t-triples (de Siebenthal invariant).
    Triples(Target),
    /// Koszul form, Kähler–Einstein metrics and structure constants.
    Constants(Target),
    /// Positive solutions of the Einstein equations.
    Einstein(SolveArgs),
    /// Einstein solutions with Kähler flags, H invariants and isometry witnesses.
    Classify(SolveArgs),
}

#[derive(Args, Debug)]
struct Target {
    /// Group label, e.g. B3, G2, SO(7).
    group: String,
    /// Painted simple roots (1-based), e.g. 1,3 or mark=5.
    #[arg(
        long,
        conflicts_with = "full_flag",
        required_unless_present = "full_flag"
    )]
    paint: Option<String>,
    /// Paint every node (G/T).
    #[arg(long)]
    full_flag: bool,
    /// Print the JSON report instead of tables.
    #[arg(long)]
    json: bool,
    /// Directory receiving one report file per run.
    #[arg(long, env = "FLAG_EINSTEIN_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, env = "FLAG_EINSTEIN_SEED", default_value_t = 0)]
    seed: u64,
    /// Grid points per free coordinate.
    #[arg(long)]
    grid: Option<usize>,
    /// Random restarts on top of the grid.
    #[arg(long)]
    restarts: Option<usize>,
    /// Newton residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

impl SolveArgs {
    fn config(&self) -> SolverConfig {
        let mut c = SolverConfig {
            seed: self.seed,
            ..SolverConfig::default()
        };
        if let Some(g) = self.grid {
            c.grid_points_per_axis = g;
        }
        if let Some(r) = self.restarts {
            c.random_restarts = r;
        }
        if let Some(t) = self.tol {
            c.newton_tol = t;
        }
        c
    }
}

enum Failure {
    Usage(String),
    Computation(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Computation(e)
    }
}

fn classify_error(e: Error) -> Failure {
    match e {
        Error::RootSystem(_)
        | Error::Flag(FlagError::Parse(_))
        | Error::Flag(FlagError::EmptyPainting)
        | Error::Flag(FlagError::NoSuchMark(_))
        | Error::Flag(FlagError::RootSystem(_))
        | Error::Solve(_) => Failure::Usage(e.to_string()),
        other => Failure::Computation(other.into()),
    }
}

fn load(t: &Target) -> Result<FlagManifold, Failure> {
    let painted = if t.full_flag {
        "all"
    } else {
        t.paint.as_deref().unwrap_or("")
    };
    flag_from_spec(&t.group, painted).map_err(classify_error)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, target) = match &cli.command {
        Command::Describe(t) => ("describe", t),
        Command::Triples(t) => ("triples", t),
        Command::Constants(t) => ("constants", t),
        Command::Einstein(a) => ("einstein", &a.target),
        Command::Classify(a) => ("classify", &a.target),
    };
    let flag = load(target)?;
    let mut report = RunReport::describe(name, &target.group, &flag);
    match &cli.command {
        Command::Describe(_) => {}
        Command::Triples(_) => report.add_triples(&flag),
        Command::Constants(_) => {
            report.add_triples(&flag);
            report.add_kahler_einstein(&flag).map_err(classify_error)?;
            let (table, diag) = einstein::structure_constants_with_diagnostics(&flag)
                .map_err(|e| classify_error(e.into()))?;
            let system = einstein::EinsteinSystem::from_parts(flag.dims().to_vec(), table);
            report.add_constants(&system, &diag);
        }
        Command::Einstein(a) | Command::Classify(a) => {
            let config = a.config();
            config
                .validate()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            report.add_triples(&flag);
            if name == "classify" {
                report.add_kahler_einstein(&flag).map_err(classify_error)?;
            }
            let analysis = flag_einstein::analyze(&flag, &config).map_err(classify_error)?;
            report.add_constants(&analysis.system, &analysis.constants);
            report.add_einstein(&analysis, &config);
        }
    }
    if target.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).context("serializing report")?
        );
    } else {
        print!("{}", render(&report));
    }
    if let Some(dir) = &target.out {
        let path = report
            .write_to_dir(dir)
            .with_context(|| format!("writing report to {}", dir.display()))?;
        eprintln!("report written to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Computation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
