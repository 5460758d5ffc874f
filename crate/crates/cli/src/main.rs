mod cache;
mod commands;
mod input;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Parser)]
#[command(name = "staircase", version, about = "Staircases of lattice point sets, limit-body brackets and the large-irreducible atlas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Monomial order, e.g. `deglex:x1<x2` or `lex:x2<x1`.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Comma-separated dilation factors, e.g. `1,2,4,8` or `1/2,1`.
    #[arg(long = "d-schedule", global = true)]
    pub d_schedule: Option<String>,
    /// Bound on twice the polygon area for `atlas`.
    #[arg(long = "max-2vol", global = true)]
    pub max_2vol: Option<u64>,
    /// Also write an SVG figure to this path.
    #[arg(long, global = true, value_name = "OUT")]
    pub svg: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Exit with status 3 on inconclusive verdicts.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Bypass the result cache.
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
    /// Seed for `check`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rho {
    Forward,
    Reverse,
}

#[derive(Subcommand)]
enum Command {
    /// Standard monomials of a point set (`{"n":2,"points":[[x,y],...]}`).
    Staircase {
        /// Input file, or `-` for stdin.
        input: PathBuf,
    },
    /// Dilate reports and exact brackets for the limit body of a polygon.
    Spoly {
        /// Polygon file: `{"vertices":[[x,y],...]}` with integer or "num/den" entries.
        input: PathBuf,
        /// Function on the triangle certifying the exact limit body.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Seshadri-constant interval for the weighted projective plane P(a,b,c).
    Seshadri {
        a: u64,
        b: u64,
        c: u64,
        #[arg(long, value_enum, default_value = "forward")]
        rho: Rho,
    },
    /// Polygons carrying large irreducible functions, up to `--max-2vol`.
    Atlas,
    /// Verify the triangle family P_r for r = 1..=R.
    VerifyPr { r: u64 },
    /// Run the seeded property suites.
    Check {
        #[arg(long, default_value_t = 24)]
        cases: usize,
        #[arg(long, hide = true)]
        tamper: bool,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let opts = &cli.opts;
    match cli.command {
        Command::Staircase { input } => commands::staircase(&input, opts),
        Command::Spoly { input, witness } => commands::spoly(&input, witness.as_deref(), opts),
        Command::Seshadri { a, b, c, rho } => commands::seshadri([a, b, c], rho, opts),
        Command::Atlas => commands::atlas(opts),
        Command::VerifyPr { r } => commands::verify_pr(r, opts),
        Command::Check { cases, tamper } => commands::check(cases, tamper, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let svg_path = cli.opts.svg.clone();
    match run(cli) {
        Ok(out) => {
            if let (Some(path), Some(svg)) = (&svg_path, &out.svg) {
                if let Err(e) = std::fs::write(path, svg) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(&out.stdout);
            let _ = stdout.flush();
            for w in &out.warnings {
                eprintln!("{w}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
