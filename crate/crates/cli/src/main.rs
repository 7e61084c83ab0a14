use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thetastab::{parse_instance, run, Command, ModeChoice, Options};
use thetastab_core::Error;

#[derive(Parser)]
#[command(name = "thetastab", version, about = "Exact semistability checks for tree-shaped quiver data")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check that the quiver is an oriented tree.
    TreeCheck(Opts),
    /// King semistability of the representation.
    KingCheck(Opts),
    /// Hilbert-Mumford test on flag subgroups.
    GitCheck(Opts),
    /// Graded object of a Jordan-Hölder filtration (finite fields).
    Gr(Opts),
    /// Decompose a weight pair along one homomorphism.
    Decompose(Opts),
    /// Decompose a weight tuple over the whole tree.
    Couple(Opts),
    /// Hilbert-Mumford weights of a pair or tuple.
    Mu(Opts),
    /// Closed-form and exact weight of a flag.
    FlagWeight(Opts),
    /// Polynomial θ on supplied subsheaf profiles.
    SheafTheta(Opts),
    /// θ of a sub-triple of a holomorphic triple.
    Triple(Opts),
    /// Sectional δ.
    Sectional(Opts),
    /// Gieseker linearization weights.
    Gieseker(Opts),
    /// Boundedness constant and Le Potier-Simpson bound.
    Bounds(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExhaustiveFf,
    Lattice,
    Randomized,
}

#[derive(Args)]
struct Opts {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Candidate source for stability checks.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Upper bound on the number of candidates enumerated.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u128,
    /// Exit with status 1 when a violation is found.
    #[arg(long)]
    expect_semistable: bool,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Seed for --mode randomized.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random seeds for --mode randomized.
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

fn split(sub: Sub) -> (Command, Opts) {
    match sub {
        Sub::TreeCheck(o) => (Command::TreeCheck, o),
        Sub::KingCheck(o) => (Command::KingCheck, o),
        Sub::GitCheck(o) => (Command::GitCheck, o),
        Sub::Gr(o) => (Command::Gr, o),
        Sub::Decompose(o) => (Command::Decompose, o),
        Sub::Couple(o) => (Command::Couple, o),
        Sub::Mu(o) => (Command::Mu, o),
        Sub::FlagWeight(o) => (Command::FlagWeight, o),
        Sub::SheafTheta(o) => (Command::SheafTheta, o),
        Sub::Triple(o) => (Command::Triple, o),
        Sub::Sectional(o) => (Command::Sectional, o),
        Sub::Gieseker(o) => (Command::Gieseker, o),
        Sub::Bounds(o) => (Command::Bounds, o),
    }
}

fn main() -> ExitCode {
    let (cmd, opts) = split(Cli::parse().command);
    let options = Options {
        mode: opts.mode.map(|m| match m {
            ModeArg::ExhaustiveFf => ModeChoice::ExhaustiveFf,
            ModeArg::Lattice => ModeChoice::Lattice,
            ModeArg::Randomized => ModeChoice::Randomized,
        }),
        budget: opts.budget,
        seed: opts.seed,
        samples: opts.samples,
    };
    let result = parse_instance(&opts.instance).and_then(|inst| run(cmd, &inst, &options));
    match result {
        Ok(report) => {
            if opts.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if opts.expect_semistable && report.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(Error::Budget { needed, budget }) => {
                    eprintln!("budget exhausted: {needed} candidates needed, budget is {budget}; raise --budget")
                }
                _ => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
