//! `fatpoint`: batch verification of fat-point series dimensions.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fatpoint_core::oracle::{OracleConfig, DEFAULT_MAX_COLUMNS, DEFAULT_PRIME};

use report::{RunReport, USAGE_EXIT};

#[derive(Debug, Parser)]
#[command(name = "fatpoint", version, about = "Dimensions of fat-point linear series on surfaces in P^3")]
struct Cli {
    /// Print the full JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "FATPOINT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Section counts, virtual dimensions and the g(a) scans.
    #[command(subcommand)]
    Dims(DimsCommand),
    /// Classify one series: planar models for d <= 3, the case analysis for d >= 4.
    Classify(ClassifyArgs),
    /// Special series on a general quadric or cubic.
    EnumerateSpecial(EnumerateArgs),
    /// Dimension of one series on random surfaces over a prime field.
    Oracle(OracleCmdArgs),
    /// Degeneration ledger and case analysis.
    #[command(subcommand)]
    Degen(DegenCommand),
    /// Cross-checks between formulas, classifiers and the oracle.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
enum DimsCommand {
    /// h^0(O_S(e)) on a surface of degree d.
    H0Surface {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
    },
    /// h^0(O_C(k)) on a complete intersection curve of type (s, t).
    H0Curve {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Virtual and expected dimension of L_e^d(mults).
    Vdim(SeriesArgs),
    /// g(a) values, differences and the superadditivity scan.
    GScan {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 60)]
        amax: u32,
    },
    /// Discrete convexity of g.
    ConvexityScan {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 50)]
        kmax: u32,
    },
    /// The small (a, a') pairs on r points.
    SmallPairs {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 9)]
        r: usize,
    },
}

#[derive(Debug, Clone, Args)]
struct SeriesArgs {
    /// Surface degree.
    #[arg(long)]
    d: u32,
    /// Twist.
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    /// Multiplicities in exponential notation, e.g. 4^2,3,2^3.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    mults: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expectation {
    Special,
    Nonspecial,
}

#[derive(Debug, Clone, Args)]
struct OracleArgs {
    #[arg(long, env = "FATPOINT_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Second prime whose instances must agree with the first.
    #[arg(long)]
    prime2: Option<u64>,
    /// Random surfaces per prime.
    #[arg(long, default_value_t = 3)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest matrix width the oracle may build.
    #[arg(long, default_value_t = DEFAULT_MAX_COLUMNS)]
    max_columns: usize,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            p: self.prime,
            p2: self.prime2,
            seed: self.seed,
            trials: self.trials,
            max_columns: self.max_columns,
            ..OracleConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Exit 1 unless the verdict matches.
    #[arg(long, value_enum)]
    expect: Option<Expectation>,
    #[command(flatten)]
    oracle: OracleArgs,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    d: u32,
    #[arg(long, default_value_t = 8)]
    emax: i64,
    /// Total degree allowed above h^0.
    #[arg(long, default_value_t = 20)]
    slack: i64,
    /// Print the table as CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
struct OracleCmdArgs {
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    oracle: OracleArgs,
}

#[derive(Debug, Subcommand)]
enum DegenCommand {
    /// Run the splitting ledger over a queue of points.
    Ledger {
        /// Comma-separated thresholds.
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<u32>,
        /// Queue multiplicities in exponential notation.
        #[arg(long)]
        queue: String,
        /// Degree of the surface carrying the residual series.
        #[arg(long, default_value_t = 2)]
        t: u32,
    },
    /// Case analysis for multiplicities at most four.
    VerifyTheoremB {
        #[command(flatten)]
        series: SeriesArgs,
        /// Add simple points until the virtual dimension is at most 0.
        #[arg(long)]
        pad: bool,
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Case analysis over all small multisets, checked against the oracle.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "4,5,6")]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        emax: i64,
        #[arg(long, default_value_t = 12)]
        max_points: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Virtual dimension identity over all small degeneration plans.
    IdentityScan {
        #[arg(long, default_value_t = 8)]
        max_d: u32,
        #[arg(long, default_value_t = 10)]
        emax: i64,
        #[arg(long, default_value_t = 3)]
        max_mu: u32,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// The g(a) inequalities on a surface of degree d.
    Inequalities {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 60)]
        amax: u32,
        #[arg(long, default_value_t = 50)]
        kmax: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Conditions imposed by a general delta_{m,n}.
    Delta {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Classifier against oracle on every small series.
    Agreement {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 8)]
        emax: i64,
        #[arg(long, default_value_t = 10)]
        slack: i64,
        #[arg(long, default_value_t = 4)]
        max_simple: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Oracle dimensions before and after random Cremona steps.
    Cremona {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        emax: i64,
        #[arg(long, default_value_t = 2024)]
        instances_seed: u64,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_EXIT) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    }
    let start = Instant::now();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let report = RunReport::new(argv[1..].to_vec(), &outcome, start.elapsed().as_millis() as u64);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(USAGE_EXIT);
        }
    }
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", outcome.text);
        if !outcome.text.ends_with('\n') {
            println!();
        }
    }
    ExitCode::from(report.exit_code)
}
