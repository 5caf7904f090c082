use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::CliError;

/// Norms of differentiation on model spaces of H2, and the bounds on them
#[derive(Parser, Debug)]
#[command(name = "kbnorm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ‖D‖ on K_B for an explicit list of poles
    Norm(NormArgs),
    /// Bound coefficients and the confluent norm for one (n, r)
    Bounds(BoundsArgs),
    /// Confluent norms and bounds over a grid of (n, r)
    Sweep(SweepArgs),
    /// Certified lower bound for the alternating test function
    Extremal(ExtremalArgs),
    /// Besov or Wiener embedding ratios of random model-space functions
    Embeddings(EmbeddingArgs),
    /// Run the invariant suite; exit code 1 if any check fails
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct NormArgs {
    /// Poles as `a+bi` or bare reals, comma separated (e.g. 0.5,0.3-0.1i)
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub poles: Vec<String>,

    /// Number of circle samples (power of two, at least 64); default follows n and r
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub r: f64,

    /// Also estimate C_{n,r} from this many random configurations
    #[arg(long)]
    pub trials: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Degrees: comma separated integers, `a..b` or `a..bxk` (a, ak, ak^2, ... up to b)
    #[arg(long)]
    pub n: String,

    /// Radii, comma separated
    #[arg(long)]
    pub r: String,
}

#[derive(Args, Debug)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub r: f64,

    /// Even; defaults to the largest even integer <= sqrt(n) with n >= s + 3
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EmbeddingArgs {
    /// `wiener` or `besov:S`
    #[arg(long)]
    pub space: String,

    #[arg(long)]
    pub n: String,

    #[arg(long)]
    pub r: String,

    #[arg(long, default_value_t = 20)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only the named checks (comma separated)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `0.5`, `-0.2i`, `0.3+0.1i` and similar into a point of the open disc.
pub fn parse_pole(text: &str) -> Result<Complex64, CliError> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let z: Complex64 = cleaned
        .parse()
        .map_err(|_| usage(format!("cannot parse pole `{text}`")))?;
    if !(z.norm() < 1.0) {
        return Err(usage(format!("pole `{text}` is not inside the open unit disc")));
    }
    Ok(z)
}

fn parse_usize(text: &str) -> Result<usize, CliError> {
    text.trim()
        .parse()
        .map_err(|_| usage(format!("`{text}` is not a non-negative integer")))
}

/// Expands `4,6,10..12,16..64x2` into `[4, 6, 10, 11, 12, 16, 32, 64]`.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            None => out.push(parse_usize(item)?),
            Some((lo, rest)) => {
                let lo = parse_usize(lo)?;
                let (hi, factor) = match rest.split_once('x') {
                    Some((hi, k)) => (parse_usize(hi)?, Some(parse_usize(k)?)),
                    None => (parse_usize(rest)?, None),
                };
                if lo > hi {
                    return Err(usage(format!("empty range `{item}`")));
                }
                match factor {
                    None => out.extend(lo..=hi),
                    Some(k) => {
                        if k < 2 || lo == 0 {
                            return Err(usage(format!("geometric range `{item}` needs start >= 1 and factor >= 2")));
                        }
                        let mut v = lo;
                        while v <= hi {
                            out.push(v);
                            v *= k;
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(usage("empty n list"));
    }
    Ok(out)
}

pub fn parse_r_list(text: &str) -> Result<Vec<f64>, CliError> {
    let out = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| usage(format!("`{s}` is not a number"))))
        .collect::<Result<Vec<f64>, CliError>>()?;
    if out.is_empty() {
        return Err(usage("empty r list"));
    }
    for &r in &out {
        check_radius(r)?;
    }
    Ok(out)
}

pub fn check_radius(r: f64) -> Result<(), CliError> {
    if !(0.0..1.0).contains(&r) {
        return Err(usage(format!("r must lie in [0, 1), got {r}")));
    }
    Ok(())
}

/// `wiener`, `besov:S` or `besov=S`.
pub fn parse_space(text: &str) -> Result<kbnorm::EmbeddingSpace, CliError> {
    let lower = text.trim().to_ascii_lowercase();
    if lower == "wiener" {
        return Ok(kbnorm::EmbeddingSpace::Wiener);
    }
    let s = lower
        .strip_prefix("besov")
        .and_then(|rest| rest.strip_prefix(':').or_else(|| rest.strip_prefix('=')))
        .ok_or_else(|| usage(format!("unknown space `{text}`; use `wiener` or `besov:S`")))?;
    let s: f64 = s.parse().map_err(|_| usage(format!("bad Besov smoothness in `{text}`")))?;
    if !(s >= 0.0) {
        return Err(usage(format!("Besov smoothness must be >= 0, got {s}")));
    }
    Ok(kbnorm::EmbeddingSpace::Besov(s))
}
