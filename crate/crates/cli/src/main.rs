//! `fdim`: faithful dimensions of p-groups attached to nilpotent Lie rings.
//!
//! Every command prints one JSON document on stdout. Diagnostics go to stderr.
//! Exit codes: 0 ok, 1 usage or unreadable input, 2 mathematical precondition, 3 budget,
//! 4 cross-check disagreement or invariant violation.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "fdim", version, about = "Minimal faithful dimensions of p-groups from nilpotent Lie rings")]
struct Cli {
    /// Also write a run manifest (command line, input digests, budgets, timing, results).
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    /// Engine enumeration budget in evaluation points; overrides FDIM_BUDGET.
    #[arg(long, global = true, value_name = "POINTS")]
    budget: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural report: class, commutator data and the symbolic commutator matrix.
    Info {
        algebra: PathBuf,
    },
    /// Faithful dimension over a finite field or chain ring.
    Fdim {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        ring: RingArgs,
        /// Also run the brute-force orbit computation.
        #[arg(long)]
        oracle: bool,
        /// Run every applicable method and fail if they disagree.
        #[arg(long)]
        all_methods: bool,
    },
    /// Sweep a grid of fields (and optionally rings) and fit the value polynomials.
    Explore {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        fs: Vec<u32>,
        /// Ramification indices for the ring grid.
        #[arg(long, value_delimiter = ',')]
        es: Vec<u32>,
        /// Lengths for the ring grid.
        #[arg(long, value_delimiter = ',')]
        ds: Vec<u32>,
    },
    /// Factorization pattern of a monic integer polynomial modulo primes.
    Splitting {
        /// Coefficients from the constant term up, e.g. "1,0,1" for x^2 + 1.
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        primes: SplittingPrimes,
    },
    /// Check an algebra file (or a poset file with --poset).
    Validate {
        file: PathBuf,
        #[arg(long)]
        poset: bool,
    },
    /// Write the free metabelian nilpotent Lie ring on n generators of class c.
    MetabelianGen {
        n: usize,
        c: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write the pattern Lie ring of a poset.
    PatternGen {
        #[arg(required_unless_present = "chain", conflicts_with = "chain")]
        poset: Option<PathBuf>,
        /// Use the chain 1 < 2 < ... < n instead of a poset file.
        #[arg(long, value_name = "N")]
        chain: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Coadjoint orbit table of the finite group over an unramified ring.
    Orbits {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        ring: RingArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Algebra file.
    algebra: Option<PathBuf>,
    /// Pattern Lie ring of the poset in this file.
    #[arg(long, value_name = "POSET")]
    pattern: Option<PathBuf>,
    /// Free metabelian Lie ring on N generators of class C.
    #[arg(long, num_args = 2, value_names = ["N", "C"])]
    metabelian: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone, Copy)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 1)]
    d: u32,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct SplittingPrimes {
    #[arg(long)]
    p: Option<u64>,
    /// Tabulate all primes up to this bound.
    #[arg(long)]
    pmax: Option<u64>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<fdim_core::Error> for Failure {
    fn from(e: fdim_core::Error) -> Self {
        use fdim_core::ErrorKind;
        let code = match e.kind() {
            ErrorKind::Input => 1,
            ErrorKind::Precondition => 2,
            ErrorKind::Budget => 3,
            ErrorKind::Invariant => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct Budgets {
    pub engine: u128,
    pub oracle: u64,
}

/// Shared state for one invocation: budgets and the inputs read so far.
pub struct Context {
    pub budgets: Budgets,
    pub inputs: Vec<InputDigest>,
}

impl Context {
    pub fn read(&mut self, path: &std::path::Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        });
        String::from_utf8(bytes).map_err(|_| Failure::usage(format!("{}: not UTF-8", path.display())))
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: Vec<String>,
    version: &'static str,
    inputs: &'a [InputDigest],
    budgets: Budgets,
    elapsed_seconds: f64,
    exit_code: u8,
    results: Option<&'a Output>,
}

fn env_budget<T: std::str::FromStr>(var: &str, default: T) -> Result<T, Failure> {
    match std::env::var(var) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("{var}={s} is not a valid budget"))),
        Err(_) => Ok(default),
    }
}

fn dispatch(cmd: Command, ctx: &mut Context) -> Result<(Output, u8), Failure> {
    match cmd {
        Command::Info { algebra } => commands::info(ctx, &algebra),
        Command::Fdim { source, ring, oracle, all_methods } => {
            commands::fdim(ctx, &source, ring, oracle, all_methods)
        }
        Command::Explore { source, primes, fs, es, ds } => commands::explore(ctx, &source, &primes, &fs, &es, &ds),
        Command::Splitting { poly, primes } => commands::splitting(&poly, primes.p, primes.pmax),
        Command::Validate { file, poset } => commands::validate(ctx, &file, poset),
        Command::MetabelianGen { n, c, output } => commands::metabelian_gen(n, c, output.as_deref()),
        Command::PatternGen { poset, chain, output } => {
            commands::pattern_gen(ctx, poset.as_deref(), chain, output.as_deref())
        }
        Command::Orbits { source, ring } => commands::orbits(ctx, &source, ring),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let budgets = env_budget("FDIM_BUDGET", fdim_core::fdim::DEFAULT_BUDGET).and_then(|engine| {
        let oracle = env_budget("FDIM_ORACLE_BUDGET", fdim_core::oracle::DEFAULT_ORACLE_BUDGET)?;
        Ok(Budgets { engine: cli.budget.unwrap_or(engine), oracle })
    });
    let mut ctx = Context {
        budgets: Budgets { engine: fdim_core::fdim::DEFAULT_BUDGET, oracle: fdim_core::oracle::DEFAULT_ORACLE_BUDGET },
        inputs: Vec::new(),
    };
    let outcome = budgets.and_then(|b| {
        ctx.budgets = b;
        dispatch(cli.command, &mut ctx)
    });
    let (output, code) = match outcome {
        Ok((output, code)) => {
            let text = serde_json::to_string_pretty(&output).expect("reports always serialize");
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            (Some(output), code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            (None, f.code)
        }
    };
    if let Some(path) = cli.manifest {
        let manifest = RunManifest {
            command: argv,
            version: env!("CARGO_PKG_VERSION"),
            inputs: &ctx.inputs,
            budgets: ctx.budgets,
            elapsed_seconds: start.elapsed().as_secs_f64(),
            exit_code: code,
            results: output.as_ref(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifests always serialize");
        if let Err(e) = std::fs::write(&path, text + "\n") {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return ExitCode::from(if code == 0 { 1 } else { code });
        }
    }
    ExitCode::from(code)
}
