//! Command-line driver for `fuchsian-core`.
//!
//! Exit codes: 0 success, 1 malformed input or flags, 2 inconsistent
//! instance, 3 verification failure. Diagnostics go to stderr only.

pub mod json;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use fuchsian_core::builder::{confluent_product, construct, h_matrix};
use fuchsian_core::frobenius::verify;
use fuchsian_core::linsys::det;
use fuchsian_core::model::Case;
use fuchsian_core::overdet::{check_momenta, classify, float_momentum_roots, over_system, solve_under, MomentumCheck};
use fuchsian_core::sample::random_instance;
use fuchsian_core::{Error, FuchsianEquation, FuchsianInstance, GaussianRational};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build the equation for an instance
    Construct,
    /// Check an equation against an instance by local series analysis
    Verify,
    /// Classify an instance and count free parameters and constraints
    Analyze,
    /// Quadratic momentum constraints of an overdetermined instance
    Constraints,
    /// Compare the H-matrix determinant with its product formula
    DetCheck,
    /// Print a random admissible instance
    Gen,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Parser, Debug, Clone)]
#[command(
    name = "fuchsian",
    version,
    about = "Exact construction and verification of Fuchsian equations with apparent singularities"
)]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Instance JSON
    #[arg(short, long)]
    pub input: Option<PathBuf>,

    /// Equation JSON to verify instead of constructing one
    #[arg(short, long)]
    pub equation: Option<PathBuf>,

    /// Write the result here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Number of finite singular points
    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,

    /// Tolerance for the floating-point checks
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("{0}")]
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => 1,
            Failure::Inconsistent(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InconsistentAtInfinity { .. } => Failure::Inconsistent(e.to_string()),
            Error::NotUnique | Error::VerificationFailed | Error::UnexpectedDependentRow { .. } => {
                Failure::Verification(e.to_string())
            }
            Error::InvalidInstance(ref v) => Failure::Malformed(format!(
                "invalid instance: {}",
                v.iter().map(json::violation).collect::<Vec<_>>().join("; ")
            )),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

/// A result to print and the exit code to finish with.
struct Outcome {
    value: Value,
    code: i32,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Self { value, code: 0 }
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cfg).and_then(|out| emit(&cfg, &out.value, stdout).map(|()| out.code)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.code()
        }
    }
}

fn execute(cfg: &CliConfig) -> Result<Outcome, Failure> {
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err(Failure::Malformed("--tolerance must be positive".into()));
    }
    match cfg.command {
        Command::Construct => {
            let inst = load_instance(cfg)?;
            Ok(Outcome::ok(json::equation(&build_equation(&inst)?)))
        }
        Command::Verify => {
            let inst = load_instance(cfg)?;
            let eq = match &cfg.equation {
                Some(path) => {
                    json::parse_equation(&read_json(path)?, &inst).map_err(|e| Failure::Malformed(e.to_string()))?
                }
                None => build_equation(&inst)?,
            };
            let report = verify(&eq);
            let code = if report.overall { 0 } else { 3 };
            Ok(Outcome { value: json::report(&report), code })
        }
        Command::Analyze => {
            let inst = load_instance(cfg)?;
            Ok(Outcome::ok(json::case_report(&classify(&inst))))
        }
        Command::Constraints => constraints(cfg),
        Command::DetCheck => det_check(cfg),
        Command::Gen => {
            let n = require_n(cfg)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
            Ok(Outcome::ok(json::instance(&random_instance(&mut rng, n, n - 2))))
        }
    }
}

fn emit(cfg: &CliConfig, value: &Value, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = match cfg.format {
        Format::Json => format!("{value}\n"),
        Format::Text => json::to_text(value),
    };
    match &cfg.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Malformed(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Malformed(format!("cannot write output: {e}"))),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_instance(cfg: &CliConfig) -> Result<FuchsianInstance, Failure> {
    let path = cfg.input.as_ref().ok_or_else(|| Failure::Malformed("this command needs --input".into()))?;
    let inst = json::parse_instance(&read_json(path)?).map_err(|e| Failure::Malformed(e.to_string()))?;
    inst.validate().map_err(|v| Failure::from(Error::InvalidInstance(v)))?;
    Ok(inst)
}

fn require_n(cfg: &CliConfig) -> Result<usize, Failure> {
    match cfg.n {
        Some(n) if n >= 2 => Ok(n),
        Some(n) => Err(Failure::Malformed(format!("--n must be at least 2, got {n}"))),
        None => Err(Failure::Malformed("this command needs --n".into())),
    }
}

fn require_admissible(inst: &FuchsianInstance) -> Result<(), Failure> {
    let defect = inst.fuchs_defect();
    if defect.is_zero() {
        return Ok(());
    }
    let target = inst.n() as i64 - inst.apparent_count() as i64 - 1;
    Err(Failure::Inconsistent(format!(
        "exponents sum to {} but must sum to n - N - 1 = {target} (Fuchs defect {defect})",
        &defect + &GaussianRational::from(target),
    )))
}

/// The equation for any case: the unique one when `N = n − 2`, the one with
/// free coefficients set to zero when `N < n − 2`, and the one for the given
/// momenta when `N > n − 2` and they satisfy the constraints.
fn build_equation(inst: &FuchsianInstance) -> Result<FuchsianEquation, Failure> {
    require_admissible(inst)?;
    match inst.case() {
        Case::Square => Ok(construct(inst)?),
        Case::Under => {
            let free = classify(inst).h_free_dim;
            Ok(solve_under(inst, &vec![GaussianRational::zero(); free])?.equation)
        }
        Case::Over => match check_momenta(inst)? {
            MomentumCheck::Consistent(eq) => Ok(*eq),
            MomentumCheck::Inconsistent { witness } => {
                let parts: Vec<String> = witness.iter().map(|(j, v)| format!("constraint {} = {v}", j + 1)).collect();
                Err(Failure::Inconsistent(format!("momenta violate {}", parts.join(", "))))
            }
        },
    }
}

fn constraints(cfg: &CliConfig) -> Result<Outcome, Failure> {
    let inst = load_instance(cfg)?;
    require_admissible(&inst)?;
    if inst.case() != Case::Over {
        return Err(Failure::Malformed(format!(
            "constraints need more than n - 2 apparent points; this instance is in the {} case",
            inst.case().as_str()
        )));
    }
    let sys = over_system(&inst)?;
    let p = inst.momenta();
    let exact: Vec<Value> = sys.constraints().iter().map(json::constraint).collect();
    let consistent = sys.constraints().iter().all(|c| c.eval(&p).is_zero());
    let mut floats = Vec::new();
    for c in sys.constraints() {
        let (r1, r2) = float_momentum_roots(c, &p)?;
        let checks: Vec<Value> = [r1, r2]
            .iter()
            .map(|r| {
                let mut pf: Vec<_> = p.iter().map(GaussianRational::to_complex64).collect();
                pf[c.j] = *r;
                json!({"p": json::complex_float(r), "verification": json::float_report(&sys.float_verify(&pf, cfg.tolerance))})
            })
            .collect();
        floats.push(json!({"j": c.j + 1, "roots": checks}));
    }
    Ok(Outcome::ok(json!({
        "constraints": exact,
        "momenta_consistent": consistent,
        "float_roots": floats,
    })))
}

fn det_check(cfg: &CliConfig) -> Result<Outcome, Failure> {
    let n = require_n(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    let mut ratios = Vec::new();
    let mut trials = Vec::new();
    for _ in 0..cfg.trials {
        let inst = random_instance(&mut rng, n, n - 2);
        let d = det(&h_matrix(&inst))?;
        let product = confluent_product(&inst);
        let ratio = d.checked_div(&product)?;
        trials.push(json!({"det": json::scalar(&d), "product": json::scalar(&product), "ratio": json::scalar(&ratio)}));
        ratios.push(ratio);
    }
    let constant = ratios.windows(2).all(|w| w[0] == w[1]) && !ratios[0].is_zero();
    let value = json!({
        "n": n,
        "trials": trials,
        "constant": if constant { json::scalar(&ratios[0]) } else { Value::Null },
    });
    Ok(Outcome { value, code: if constant { 0 } else { 3 } })
}
