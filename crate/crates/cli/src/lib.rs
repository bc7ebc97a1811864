//! Argument handling for the `simulate` binary.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use entangle_core::dynamics::parse_hamiltonian;
use entangle_core::scenario::{run, Model, ScenarioConfig};
use entangle_core::sector::BellKind;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Psi,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Jc,
    Custom,
}

/// Sweep a Bell seed through local qubit-conserving dynamics and tabulate
/// squared concurrences.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
pub struct Args {
    #[arg(long, value_enum, default_value = "psi")]
    pub state: StateArg,
    /// Seed angle in radians, within [0, pi/2].
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Relative phase of the seed in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Qubits on site A (defaults to 2, or the size of --ha).
    #[arg(long)]
    pub na: Option<usize>,
    #[arg(long)]
    pub nb: Option<usize>,
    #[arg(long, value_enum, default_value = "jc")]
    pub model: ModelArg,
    #[arg(long, default_value_t = 1.0)]
    pub ga: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gb: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub da: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub db: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Decay rate of the global concurrence (defaults to --gamma).
    #[arg(long)]
    pub kappa: Option<f64>,
    /// End time in units of 1/g, g = (ga + gb) / 2.
    #[arg(long, default_value_t = 12.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    #[arg(long, default_value_t = entangle_core::DEFAULT_TOL)]
    pub tol: f64,
    /// CSV destination (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Recompute every concurrence on the full register.
    #[arg(long)]
    pub oracle: bool,
    /// Write the sector state at the last grid point.
    #[arg(long)]
    pub dump_state: Option<PathBuf>,
    #[arg(long)]
    pub ha: Option<PathBuf>,
    #[arg(long)]
    pub hb: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: ScenarioConfig,
    pub out: Option<PathBuf>,
    pub dump_state: Option<PathBuf>,
}

#[derive(Debug)]
pub enum ParseOutcome {
    Run(Box<Invocation>),
    /// `--help` or `--version`; print and exit 0.
    Info(String),
}

pub fn parse_args<I, T>(argv: I) -> Result<ParseOutcome, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(ParseOutcome::Info(e.to_string())),
                _ => Err(e.to_string()),
            };
        }
    };
    to_invocation(args).map(|inv| ParseOutcome::Run(Box::new(inv)))
}

fn to_invocation(args: Args) -> Result<Invocation, String> {
    let tol = args.tol;
    let (model, na_default, nb_default) = match args.model {
        ModelArg::Jc => {
            if args.ha.is_some() || args.hb.is_some() {
                return Err("--ha/--hb require --model custom".into());
            }
            (Model::Jc, 2, 2)
        }
        ModelArg::Custom => {
            let load = |flag: &str, path: &Option<PathBuf>| {
                let path = path.as_ref().ok_or_else(|| format!("--model custom requires {flag}"))?;
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_hamiltonian(&text, tol).map_err(|e| format!("{}: {e}", path.display()))
            };
            let h_a = load("--ha", &args.ha)?;
            let h_b = load("--hb", &args.hb)?;
            let (na, nb) = (h_a.rows(), h_b.rows());
            (Model::Custom { h_a, h_b }, na, nb)
        }
    };
    let config = ScenarioConfig {
        kind: match args.state {
            StateArg::Psi => BellKind::Psi,
            StateArg::Phi => BellKind::Phi,
        },
        alpha: args.alpha,
        beta: args.beta,
        n_a: args.na.unwrap_or(na_default),
        n_b: args.nb.unwrap_or(nb_default),
        model,
        g_a: args.ga,
        g_b: args.gb,
        delta_a: args.da,
        delta_b: args.db,
        gamma: args.gamma,
        kappa: args.kappa,
        t_max: args.tmax,
        steps: args.steps,
        tol,
        oracle: args.oracle,
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(Invocation { config, out: args.out, dump_state: args.dump_state })
}

/// Runs the tool and returns its exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let inv = match parse_args(argv) {
        Ok(ParseOutcome::Run(inv)) => inv,
        Ok(ParseOutcome::Info(text)) => {
            let _ = write!(stdout, "{text}");
            return EXIT_PASS;
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {}", msg.trim_start_matches("error: ").trim_end());
            return EXIT_USAGE;
        }
    };
    let output = match run(&inv.config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let csv = output.csv();
    let written = match &inv.out {
        Some(path) => fs::write(path, &csv).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(csv.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    if let Some(path) = &inv.dump_state {
        if let Err(e) = fs::write(path, output.final_state.to_text()) {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let _ = write!(stderr, "{}", output.summary());
    if output.passed() {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}
