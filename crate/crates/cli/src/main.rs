use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eala_cli::commands::{self, CheckKind, Ctx};
use eala_cli::report::write_report;

#[derive(Debug, Parser)]
#[command(
    name = "eala",
    about = "Build and verify multiloop Lie tori and extended affine Lie algebras, exactly",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the JSON manifest.
    #[arg(long, global = true, default_value = "manifest.json")]
    manifest: PathBuf,

    /// Degree window bound (overrides the manifest).
    #[arg(long, global = true)]
    window: Option<i64>,

    /// Sample count for randomized checks (overrides the manifest).
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Seed for randomized checks (overrides the manifest).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the algebra and summarize dimensions, gradings, and groups.
    Build,
    /// Run an axiom or consistency checker: lietorus, eala, ideals, descent.
    Check { which: String },
    /// Emit the root system and Chevalley bracket table of the base algebra.
    Roots,
    /// Construct and verify a lift (elementary, kernel, gamma_equivariance).
    Lift,
    /// Run the Cartan conjugacy algorithm against a candidate.
    Conjugate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (manifest, digest) = match eala_cli::load_manifest(&cli.manifest) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx {
        manifest,
        digest,
        window_flag: cli.window,
        samples_flag: cli.samples,
        seed_flag: cli.seed,
    };
    if ctx.window() < 1 {
        eprintln!("error: window must be at least 1");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Build => commands::cmd_build(&ctx),
        Command::Check { which } => match CheckKind::parse(which) {
            Some(kind) => commands::cmd_check(&ctx, kind),
            None => {
                eprintln!("error: unknown checker {:?} (use lietorus, eala, ideals, descent)", which);
                return ExitCode::from(2);
            }
        },
        Command::Roots => commands::cmd_roots(&ctx),
        Command::Lift => commands::cmd_lift(&ctx),
        Command::Conjugate => commands::cmd_conjugate(&ctx),
    };
    match outcome {
        Ok((report, code)) => {
            if let Err(e) = write_report(&report, cli.out.as_deref()) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
