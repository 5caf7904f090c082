//! Front end for `kbnorm`: argument parsing, command dispatch and output.

pub mod args;
pub mod output;

use kbnorm::bounds::{bound_report, default_s, extremal_certificate, RandomizedMax};
use kbnorm::verify::{check_names, run_check, run_suite, CheckOutcome};
use kbnorm::{
    convergence_sweep, embedding_ratio_sweep, operator_norm, operator_norm_with, randomized_configuration_max,
    BoundReport, EmbeddingRecord, ExtremalCertificate, KbError, PoleConfiguration, QuadratureSpec,
};
use num_complex::Complex64;

use args::{check_radius, parse_n_list, parse_pole, parse_r_list, parse_space, Cli, Command, Format};
use output::{emit, Field, Record};

/// Environment variable that fixes the worker thread count.
pub const THREADS_ENV: &str = "KBNORM_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(KbError),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Verification { .. } => 1,
        }
    }
}

impl From<KbError> for CliError {
    fn from(e: KbError) -> Self {
        match e {
            KbError::OutsideDisc { .. }
            | KbError::EmptyConfiguration
            | KbError::InvalidSampleCount(_)
            | KbError::InvalidArguments(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

/// Result of a command: the text to print and, for `verify`, a failure to report after printing.
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

pub struct NormRecord {
    pub poles: String,
    pub n: usize,
    pub norm: f64,
    pub lambda_max: f64,
    pub iterations: usize,
    pub residual: f64,
    pub sample_count: usize,
}

impl Record for NormRecord {
    fn header() -> &'static [&'static str] {
        &["poles", "n", "norm", "lambda_max", "gram_size", "iterations", "residual", "sample_count"]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Text(self.poles.clone()),
            Field::Int(self.n as u64),
            Field::Real(self.norm),
            Field::Real(self.lambda_max),
            Field::Int(self.n as u64),
            Field::Int(self.iterations as u64),
            Field::Real(self.residual),
            Field::Int(self.sample_count as u64),
        ]
    }
}

impl Record for BoundReport {
    fn header() -> &'static [&'static str] {
        &["n", "r", "norm", "ratio", "a_lower", "A_upper", "legacy_52", "limit"]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Int(self.n as u64),
            Field::Param(self.r),
            Field::Real(self.norm),
            Field::Real(self.ratio),
            Field::Real(self.a_lower),
            Field::Real(self.a_upper),
            Field::Real(self.legacy_52),
            Field::Real(self.limit),
        ]
    }
}

impl Record for RandomizedMax {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "r",
            "max_norm",
            "confluent_norm",
            "zero_norm",
            "upper_bound",
            "legacy_52",
            "violations",
            "configurations",
        ]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Int(self.n as u64),
            Field::Param(self.r),
            Field::Real(self.max_norm),
            Field::Real(self.confluent_norm),
            Field::Real(self.zero_norm),
            Field::Real(self.upper_bound),
            Field::Real(self.legacy_bound),
            Field::Int(self.violations as u64),
            Field::Int(self.configurations_tried as u64),
        ]
    }
}

impl Record for ExtremalCertificate {
    fn header() -> &'static [&'static str] {
        &["n", "s", "r", "Q", "certified_lower", "measured", "norm_sq", "normalized_lower", "holds"]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Int(self.n as u64),
            Field::Int(self.s as u64),
            Field::Param(self.r),
            Field::Real(self.q),
            Field::Real(self.certified_lower),
            Field::Real(self.measured),
            Field::Real(self.norm_sq),
            Field::Real(self.normalized_lower),
            Field::Bool(self.holds),
        ]
    }
}

impl Record for EmbeddingRecord {
    fn header() -> &'static [&'static str] {
        &["space", "n", "r", "max_ratio", "normalized", "trials"]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Text(self.space.clone()),
            Field::Int(self.n as u64),
            Field::Param(self.r),
            Field::Real(self.max_ratio),
            Field::Real(self.normalized),
            Field::Int(self.trials as u64),
        ]
    }
}

impl Record for CheckOutcome {
    fn header() -> &'static [&'static str] {
        &["check", "passed", "detail"]
    }

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Text(self.name.clone()),
            Field::Bool(self.passed),
            Field::Text(self.detail.clone()),
        ]
    }
}

fn pole_label(z: Complex64) -> String {
    if z.im == 0.0 {
        z.re.to_string()
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn run_norm(poles: &[String], grid: Option<usize>, format: Format) -> Result<String, CliError> {
    let values = poles.iter().map(|p| parse_pole(p)).collect::<Result<Vec<_>, _>>()?;
    let config = PoleConfiguration::from_complex(&values)?;
    let result = match grid {
        Some(m) => operator_norm_with(&config, &QuadratureSpec::with_samples(m)?)?,
        None => operator_norm(&config)?,
    };
    let record = NormRecord {
        poles: values.iter().map(|&z| pole_label(z)).collect::<Vec<_>>().join(";"),
        n: config.n(),
        norm: result.norm,
        lambda_max: result.lambda_max,
        iterations: result.iterations,
        residual: result.residual,
        sample_count: result.sample_count,
    };
    emit(&[record], format)
}

fn check_degree(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Parses and runs one command line (without the program name).
pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    let text = match cli.command {
        Command::Norm(a) => run_norm(&a.poles, a.grid, format)?,
        Command::Bounds(a) => {
            check_degree(a.n)?;
            check_radius(a.r)?;
            match a.trials {
                Some(0) => return Err(CliError::Usage("trials must be at least 1".into())),
                Some(t) => emit(&[randomized_configuration_max(a.n, a.r, t, a.seed)?], format)?,
                None => emit(&[bound_report(a.n, a.r)?], format)?,
            }
        }
        Command::Sweep(a) => {
            let ns = parse_n_list(&a.n)?;
            let rs = parse_r_list(&a.r)?;
            ns.iter().try_for_each(|&n| check_degree(n))?;
            if let Some(r) = rs.iter().find(|&&r| r > kbnorm::bounds::SWEEP_MAX_R) {
                return Err(CliError::Usage(format!(
                    "sweep radii must not exceed {}, got {r}",
                    kbnorm::bounds::SWEEP_MAX_R
                )));
            }
            emit(&convergence_sweep(&ns, &rs)?, format)?
        }
        Command::Extremal(a) => {
            check_radius(a.r)?;
            let s = match a.s {
                Some(s) if s % 2 != 0 => return Err(CliError::Usage(format!("s must be even, got {s}"))),
                Some(s) => s,
                None => default_s(a.n)?,
            };
            if a.n < s + 3 {
                return Err(CliError::Usage(format!("need n >= s + 3, got n={}, s={s}", a.n)));
            }
            emit(&[extremal_certificate(a.n, a.r, s)?], format)?
        }
        Command::Embeddings(a) => {
            let space = parse_space(&a.space)?;
            let ns = parse_n_list(&a.n)?;
            let rs = parse_r_list(&a.r)?;
            if a.trials == 0 {
                return Err(CliError::Usage("trials must be at least 1".into()));
            }
            emit(&embedding_ratio_sweep(space, &ns, &rs, a.trials, a.seed)?, format)?
        }
        Command::Verify(a) => {
            let outcomes = if a.only.is_empty() {
                run_suite()
            } else {
                a.only
                    .iter()
                    .map(|name| {
                        run_check(name).ok_or_else(|| {
                            CliError::Usage(format!("unknown check `{name}`; known: {}", check_names().join(", ")))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let text = emit(&outcomes, format)?;
            let failure = (failed > 0).then_some(CliError::Verification {
                failed,
                total: outcomes.len(),
            });
            return Ok(Outcome { text, failure });
        }
    };
    Ok(Outcome { text, failure: None })
}

/// Sets the global worker count from [`THREADS_ENV`] when it holds a positive integer.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}
