use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cache;
mod commands;
mod encode;

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "kres",
    version,
    about = "Restriction maps from complex to split real groups, computed exactly"
)]
struct Cli {
    /// Directory of pair documents to use instead of the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Symmetric pair name (see `kres catalog`).
    #[arg(long)]
    pair: String,

    /// Also write the JSON document to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    HalfSum,
    Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    SplitProp,
    KoszulKtypes,
    Translation,
    Infchar,
    Homology,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of the complex principal series I(lambda, nu) under restriction.
    Rmap {
        #[command(flatten)]
        common: Common,
        /// Comma-separated integers, fundamental-weight coordinates.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Comma-separated rationals such as 1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, value_enum, default_value = "half-sum")]
        convention: ConventionArg,
    },
    /// K-type multiplicities of a principal series.
    Ktypes {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "real")]
        side: SideArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Largest K-type norm listed.
        #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
        bound: i64,
    },
    /// Run a verification suite; exits 0 iff nothing mismatched.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        suite_name: Option<Suite>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Truncation degree of graded series.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<i64>,
        #[arg(long, value_enum, default_value = "half-sum")]
        convention: ConventionArg,
    },
    /// Koszul homology of F(a) x F(b) for an sl2-based pair.
    Koszul {
        #[command(flatten)]
        common: Common,
        a: i64,
        b: i64,
    },
    /// List the catalog.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let ctx = commands::Context::new(cli.catalog.as_deref())?;
    match cli.command {
        Command::Rmap {
            common,
            lambda,
            nu,
            convention,
        } => ctx
            .rmap(&common.pair, lambda.as_deref(), nu.as_deref(), convention)
            .map(|o| o.with_out(common.out)),
        Command::Ktypes {
            common,
            side,
            lambda,
            nu,
            bound,
        } => ctx
            .ktypes(&common.pair, side, lambda.as_deref(), nu.as_deref(), bound)
            .map(|o| o.with_out(common.out)),
        Command::Verify {
            common,
            suite_name,
            suite,
            degree,
            bound,
            convention,
        } => {
            let suite = match (suite_name, suite) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Failure::Usage("conflicting suites given".into()))
                }
                (Some(s), _) | (None, Some(s)) => s,
                (None, None) => return Err(Failure::Usage("a suite is required".into())),
            };
            ctx.verify(&common.pair, suite, degree, bound, convention)
                .map(|o| o.with_out(common.out))
        }
        Command::Koszul { common, a, b } => ctx
            .koszul(&common.pair, a, b)
            .map(|o| o.with_out(common.out)),
        Command::Catalog { out } => ctx.catalog().map(|o| o.with_out(out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|o| o.emit()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("kres: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
