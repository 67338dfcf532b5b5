//! `jacquet`: m*, μ*, Aubert duals, degenerate principal series and the
//! verification harness from the command line.
//!
//! Exit status: 0 on success, 1 on a usage or input error, 2 when a
//! verification fails.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jacquet_core::aubert::{aubert_standard, bruteforce_against_factorwise, DEFAULT_BRUTEFORCE_BOUND};
use jacquet_core::classify::{classify, normalize_params, DPSParams};
use jacquet_core::expr::{parse_g, parse_gl};
use jacquet_core::harness::{sweep_with, verify_claims, Grid, Status};
use jacquet_core::hopf::m_star_word;
use jacquet_core::mu::mu_star_word;
use jacquet_core::{Config, Error, GroupFamily, HalfInt};

use report::{Emit, Failure};

#[derive(Parser)]
#[command(name = "jacquet", version, about = "Jacquet modules, Aubert duals and degenerate principal series")]
struct Cli {
    /// Symbol table to read; overrides --profile.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Built-in symbol table: `default` (classical) or `gspin`.
    #[arg(long, global = true, default_value = "default")]
    profile: String,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// m* of a GL word.
    MStar { expr: String },
    /// μ* of a group word `... |x| sigma`.
    MuStar { expr: String },
    /// Aubert dual of a group word, hat-normalized.
    Aubert {
        expr: String,
        /// Evaluate the alternating sum over standard Levis (cuspidal words only)
        /// and compare it with the factorwise dual.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Composition factors of ζ([ν^{-b}ρ₀,ν^{-a}ρ₀]) ⋊ ζ(ρ,x;σ).
    Dps(DpsArgs),
    /// Run the claim registry and, optionally, a grid sweep.
    Verify {
        /// `default`, `small`, or overrides such as `family=gspin,alpha=1..2,a=-2..2`.
        #[arg(long)]
        grid: Option<String>,
        /// Comma-separated claim ids; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        /// Negative control: corrupt each verdict before checking it. The
        /// sweep is then expected to fail (exit 2).
        #[arg(long, requires = "grid")]
        mutate: bool,
    },
}

#[derive(Args)]
struct DpsArgs {
    #[arg(long, default_value = "so-odd")]
    family: GroupFamily,
    #[arg(long, allow_hyphen_values = true)]
    alpha: HalfInt,
    /// Reducibility exponent of ρ₀; ignored with --same.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<HalfInt>,
    #[arg(long, allow_hyphen_values = true)]
    a: HalfInt,
    #[arg(long, allow_hyphen_values = true)]
    b: HalfInt,
    #[arg(long, allow_hyphen_values = true)]
    x: HalfInt,
    /// ρ₀ ≅ ρ (so β = α).
    #[arg(long, conflicts_with = "distinct")]
    same: bool,
    /// ρ₀ ≇ ρ (the default).
    #[arg(long)]
    distinct: bool,
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            Config::parse(&text).map_err(|e| Failure::usage(format!("{}:{e}", path.display())))
        }
        None => Config::profile(&cli.profile).map_err(Failure::from),
    }
}

fn run(cli: &Cli) -> Result<Emit, Failure> {
    match &cli.cmd {
        Cmd::MStar { expr } => {
            let cfg = load_config(cli)?;
            let w = parse_gl(expr, &cfg)?;
            Ok(report::m_star(expr, &m_star_word(&w)))
        }
        Cmd::MuStar { expr } => {
            let cfg = load_config(cli)?;
            let w = parse_g(expr, &cfg)?;
            Ok(report::mu_star(expr, &mu_star_word(&w, &cfg.ambient)?))
        }
        Cmd::Aubert { expr, bruteforce } => {
            let cfg = load_config(cli)?;
            let amb = &cfg.ambient;
            let w = parse_g(expr, &cfg)?;
            if *bruteforce {
                let d = bruteforce_against_factorwise(&w, amb, DEFAULT_BRUTEFORCE_BOUND)?;
                Ok(report::aubert_bruteforce(expr, &d))
            } else {
                let d = aubert_standard(&w, amb)?;
                Ok(report::aubert(expr, d.sign, &d.value))
            }
        }
        Cmd::Dps(a) => {
            let mut warnings = Vec::new();
            let beta = if a.same {
                if let Some(b) = a.beta.filter(|b| *b != a.alpha) {
                    warnings.push(format!("--same sets beta = alpha = {}; the given beta {b} is ignored", a.alpha));
                }
                a.alpha
            } else {
                a.beta.ok_or_else(|| Failure::usage("--beta is required unless --same is given"))?
            };
            let p = DPSParams::standard(a.family, a.same, a.alpha, beta, a.a, a.b, a.x);
            let n = normalize_params(&p)?;
            let v = classify(&p)?;
            Ok(report::dps(&p, n.swapped, &v, warnings))
        }
        Cmd::Verify { grid, claims, mutate } => {
            let results = verify_claims(claims.as_deref())?;
            let swept = match grid {
                Some(spec) => {
                    let g: Grid = spec.parse()?;
                    Some((spec.clone(), sweep_with(&g, *mutate)))
                }
                None => None,
            };
            let failed = results.iter().any(|r| matches!(r.status, Status::Fail { .. }))
                || swept.as_ref().is_some_and(|(_, s)| !s.ok());
            let mut e = report::verify(&results, swept.as_ref());
            e.failed = failed;
            Ok(e)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) | Error::Coverage(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}
