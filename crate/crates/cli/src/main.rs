//! `gf2sigma`: command-line front end.
//!
//! Exit codes: 0 success, 1 computational failure (including theorem
//! violations and failed lemma checks), 2 usage error.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gf2sigma::factorize::DEFAULT_SEED;
use gf2sigma::sigma_chain::FactorCache;
use gf2sigma::Gf2Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Markdown,
}

#[derive(Parser, Debug)]
#[command(name = "gf2sigma", version, about = "GF(2)[x] factorization and sigma-chain analysis of Mersenne prime polynomials")]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for the randomized factor splitting (results do not depend on it).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,

    /// JSON-lines factorization cache, created if missing.
    #[arg(long = "cache", global = true)]
    pub cache_path: Option<PathBuf>,

    /// Worker threads (defaults to the number of available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallelism: Option<u16>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

fn parse_poly(s: &str) -> Result<Gf2Poly, String> {
    s.parse().map_err(|e: gf2sigma::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single-polynomial operations.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Mersenne prime enumeration.
    Mersenne {
        #[command(subcommand)]
        op: MersenneOp,
    },
    /// Full sigma-chain record for one (M, p).
    Analyze {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        p: u32,
    },
    /// Exception-set membership for every Mersenne prime up to a degree.
    Classify {
        #[arg(long)]
        p: u32,
        #[arg(long = "max-degree")]
        max_degree: u32,
    },
    /// Count table: one row per p.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[arg(long = "max-degree")]
        max_degree: u32,
    },
    /// Theorem and lemma campaigns.
    Verify {
        #[command(subcommand)]
        what: VerifyOp,
    },
}

#[derive(Subcommand, Debug)]
enum PolyOp {
    /// Complete factorization.
    Factor {
        #[arg(value_parser = parse_poly)]
        poly: Gf2Poly,
    },
    /// Sum of divisors.
    Sigma {
        #[arg(value_parser = parse_poly)]
        poly: Gf2Poly,
    },
}

#[derive(Subcommand, Debug)]
enum MersenneOp {
    List {
        #[arg(long, default_value_t = 2)]
        min: u32,
        #[arg(long)]
        max: u32,
    },
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    p: Vec<u32>,
    #[arg(long = "max-degree")]
    max_degree: u32,
}

#[derive(Subcommand, Debug)]
enum VerifyOp {
    /// Verdict per (M, p) with a re-verified non-Mersenne witness.
    Theorem(CampaignArgs),
    /// Structural and case lemma report.
    Lemmas(CampaignArgs),
}

/// What a command produced: text for standard output and whether the run
/// counts as a failure.
pub struct Output {
    pub text: String,
    pub failed: bool,
}

fn run(cli: Cli) -> gf2sigma::Result<Output> {
    let cfg = &cli.config;
    let cache = cfg.cache_path.as_ref().map(FactorCache::open).transpose()?;
    let cache = cache.as_ref();
    match cli.command {
        Command::Poly { op: PolyOp::Factor { poly } } => render::factor(cfg, &poly),
        Command::Poly { op: PolyOp::Sigma { poly } } => render::sigma(cfg, &poly),
        Command::Mersenne { op: MersenneOp::List { min, max } } => render::mersenne_list(cfg, min, max),
        Command::Analyze { a, b, p } => render::analyze(cfg, a, b, p, cache),
        Command::Classify { p, max_degree } => render::classify(cfg, p, max_degree, cache),
        Command::Table { p, max_degree } => render::table(cfg, &p, max_degree, cache),
        Command::Verify { what: VerifyOp::Theorem(args) } => {
            render::verify_theorem(cfg, &args.p, args.max_degree, cache)
        }
        Command::Verify { what: VerifyOp::Lemmas(args) } => {
            render::verify_lemmas(cfg, &args.p, args.max_degree, cache)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.config.parallelism {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(gf2sigma::Error::InvalidPrime(p)) => {
            eprintln!("error: {p} is not a valid prime for this command");
            ExitCode::from(2)
        }
        Err(e @ (gf2sigma::Error::InvalidRange { .. }
            | gf2sigma::Error::InvalidExponents { .. }
            | gf2sigma::Error::NotIrreducible { .. }
            | gf2sigma::Error::ZeroPolynomial)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
