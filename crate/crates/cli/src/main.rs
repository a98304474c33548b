use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sqdisc_cli::{cmd_classify, cmd_family, cmd_search, cmd_verify, Data};
use sqdisc_core::factor::FactorConfig;
use sqdisc_core::sample::DEFAULT_SEED;
use sqdisc_core::suites::{SuiteOptions, DEFAULT_HEIGHT};

#[derive(Parser)]
#[command(name = "sqdisc", version, about = "Elliptic curves over Q with square discriminant")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Directory holding families.txt and modular_polynomials.txt.
    #[arg(long, global = true, env = "SQDISC_DATA_DIR")]
    data_dir: Option<PathBuf>,

    /// Render the report as text instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "C")]
    C,
    #[value(name = "X")]
    X,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant, j-invariant and square-disc verdicts for one curve.
    Classify {
        /// `[A,B]` or `[a1,a2,a3,a4,a6]` with rational entries.
        curve: String,
    },
    /// A curve with square discriminant and a rational N-isogeny.
    Family {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "t", allow_hyphen_values = true)]
        t: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        /// Overrides each suite's default sample count.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Trial-division bound before switching to Pollard rho.
        #[arg(long)]
        factor_bound: Option<u64>,
    },
    /// Rational points of bounded height on C_N or X_N.
    Search {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value = "C")]
        which: Which,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = Data::load(cli.data_dir.as_deref()).and_then(|data| match &cli.command {
        Command::Classify { curve } => cmd_classify(curve),
        Command::Family { n, t } => cmd_family(&data, *n, t),
        Command::Verify {
            suite,
            height,
            samples,
            seed,
            factor_bound,
        } => {
            let opts = SuiteOptions {
                height: *height,
                samples: *samples,
                seed: *seed,
                factor: factor_bound.map(FactorConfig::with_trial_bound).unwrap_or_default(),
            };
            cmd_verify(&data, suite, &opts)
        }
        Command::Search { n, which, height } => {
            let w = match which {
                Which::C => "C",
                Which::X => "X",
            };
            cmd_search(&data, *n, w, *height)
        }
    });
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.set_timing(start.elapsed());
            }
            if cli.human {
                print!("{}", report.to_human());
            } else {
                println!("{}", report.to_json());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
