//! `mckay`: command-line front end for the McKay correspondence library.

mod commands;
mod report;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mckay::toric::Strategy;

use commands::RouteChoice;
use report::{input, Failure, Format, Outcome};

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "Exact McKay correspondence computations for finite subgroups of SL(n, C)")]
struct Cli {
    /// Output format; `dot` only for `mckay`, `svg` only for `toric`.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, classes, subgroups and age census.
    GroupInfo { spec: PathBuf },
    /// Age of every conjugacy class.
    Ages { spec: PathBuf },
    /// McKay quiver of the defining representation, with its Dynkin label.
    Mckay { spec: PathBuf },
    /// Crepant resolution fan of an abelian quotient.
    Toric {
        spec: PathBuf,
        #[arg(long, default_value_t = Strategy::Deterministic)]
        strategy: Strategy,
        /// Cut the corners off the junior simplex instead of triangulating it.
        #[arg(long)]
        chop: bool,
    },
    /// Stringy motive and Euler number, cross-checked between routes.
    Stringy {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteChoice::Both)]
        route: RouteChoice,
        #[arg(long, default_value_t = Strategy::Deterministic)]
        strategy: Strategy,
    },
    /// Motivic integral over the arc space of a monomial chart.
    Arcs {
        /// Multiplicities of the coordinate hyperplanes, e.g. `1,1,0`.
        #[arg(long)]
        multiplicities: String,
        /// Discrepancies of the components, e.g. `1,2,0`; all 1 by default.
        #[arg(long)]
        discrepancies: Option<String>,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Largest contact level summed; at least the depth by default.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Torus-fixed G-clusters of an abelian group.
    Ghilb {
        spec: PathBuf,
        #[arg(long, default_value_t = mckay::cluster::DEFAULT_CLUSTER_BOUND)]
        bound: usize,
    },
    /// Invariance of polynomials, and polynomial relations.
    Invariants {
        spec: PathBuf,
        /// Polynomials to test, e.g. `u^4 + v^4`.
        #[arg(long = "poly")]
        polys: Vec<String>,
        /// A relation to test after substitution, e.g. `z^2 - y*x^2 + 4*y^3`.
        #[arg(long)]
        relation: Option<String>,
        /// Substitutions `name=polynomial` for the relation.
        #[arg(long = "bind")]
        bindings: Vec<String>,
    },
    /// Run the cross-checks and golden values of a corpus of group specs.
    Verify { paths: Vec<PathBuf> },
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::GroupInfo { spec } => commands::group_info(&commands::load(spec)?),
        Command::Ages { spec } => commands::ages(&commands::load(spec)?),
        Command::Mckay { spec } => commands::mckay(&commands::load(spec)?),
        Command::Toric { spec, strategy, chop } => commands::toric(&commands::load(spec)?, *strategy, *chop),
        Command::Stringy { spec, route, strategy } => commands::stringy(&commands::load(spec)?, *route, *strategy),
        Command::Arcs { multiplicities, discrepancies, depth, truncation } => {
            commands::arcs(multiplicities, discrepancies.as_deref(), *depth, *truncation)
        }
        Command::Ghilb { spec, bound } => commands::ghilb(&commands::load(spec)?, *bound),
        Command::Invariants { spec, polys, relation, bindings } => {
            commands::invariants(&commands::load(spec)?, polys, relation.as_deref(), bindings)
        }
        Command::Verify { paths } => verify::verify(paths),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(input),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(input)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        let text = report.render(cli.format)?;
        emit(&cli, &text)?;
        match report.failed {
            Some(why) => Err(Failure::Mismatch(anyhow::anyhow!(why))),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mckay: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
