//! Command-line front end: one subcommand per probe, JSON or CSV reports.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use uq2::ncindex::RampShape;
use uq2::states::Which;
use uq2::{QParam, TruncGrid};

pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] uq2::Error),
    #[error("non-finite value in result {0:?}")]
    NonFinite(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

pub const DEFAULT_THETA: f64 = 0.414_213_562_373_095_1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// |q|, in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub q_modulus: f64,
    /// arg(q)/π.
    #[arg(long, global = true, default_value_t = DEFAULT_THETA)]
    pub q_theta: f64,
    /// First-leg cutoff; each subcommand has its own default.
    #[arg(long, global = true)]
    pub n_cut: Option<usize>,
    /// Cutoff of the two ℤ legs; each subcommand has its own default.
    #[arg(long, global = true)]
    pub z_cut: Option<usize>,
    #[arg(long = "margin", global = true, default_value_t = 2)]
    pub interior_margin: usize,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 20_240_601)]
    pub seed: u64,
    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Json)]
    pub output_format: Format,
    #[arg(long = "output", global = true)]
    pub output_path: Option<PathBuf>,
    /// Record wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

impl RunConfig {
    pub fn q(&self) -> Result<QParam, CliError> {
        Ok(QParam::new(self.q_modulus, self.q_theta)?)
    }

    fn grid(&self, default: (usize, usize), min_margin: usize) -> Result<TruncGrid, CliError> {
        let n = self.n_cut.unwrap_or(default.0);
        let z = self.z_cut.unwrap_or(default.1);
        Ok(TruncGrid::new(n, z, self.interior_margin.max(min_margin))?)
    }

    fn to_map(&self, grid: Option<TruncGrid>) -> Result<Map<String, Value>, CliError> {
        let mut m = Map::new();
        m.insert(
            "q_modulus".into(),
            report::finite("q_modulus", self.q_modulus)?,
        );
        m.insert("q_theta".into(), report::finite("q_theta", self.q_theta)?);
        if let Some(g) = grid {
            m.insert("n_cut".into(), g.n_cut().into());
            m.insert("z_cut".into(), g.z_cut().into());
            m.insert("interior_margin".into(), g.interior_margin().into());
        }
        m.insert("tol".into(), report::finite("tol", self.tol)?);
        m.insert("seed".into(), self.seed.into());
        Ok(m)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "uq2",
    version,
    about = "Numerical probes of the quantum group U_q(2)"
)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Phi,
    Psi,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Phi => Which::Phi,
            WhichArg::Psi => Which::Psi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RampArg {
    Linear,
    Smooth,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residuals of the defining relations in the truncated representation (grid 40,40).
    Relations,
    /// Hopf axioms on seeded random elements.
    HopfCheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Haar state: closed form against the truncated series, invariance and positivity.
    Haar {
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        #[arg(long, default_value_t = 80)]
        i_max: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Conditional expectations onto the fixed points of a circle character.
    Expect {
        #[arg(long, value_enum, default_value_t = WhichArg::Phi)]
        which: WhichArg,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Pimsner–Popa probe on the n-th test element.
    Watatani {
        #[arg(long, value_enum, default_value_t = WhichArg::Phi)]
        which: WhichArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Eigenvalue counting and summability diagnostics of the Dirac operator.
    Spectrum {
        #[arg(long, default_value_t = 60.0)]
        lambda_max: f64,
        #[arg(long, default_value_t = 3.0)]
        exponent: f64,
        #[arg(long, default_value_t = 20.0)]
        fit_lo: f64,
        #[arg(long, default_value_t = 60.0)]
        fit_hi: f64,
        #[arg(long, default_value_t = 0.05)]
        stabilization_tol: f64,
    },
    /// Closed-form commutators with the Dirac operator (grid 40,40).
    Commutators,
    /// Monomials commuting with the Dirac operator (grid 20,20, margin ≥ 2·degree).
    KernelScan {
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 0.05)]
        separation: f64,
    },
    /// Chern number and Fredholm index of the Powers–Rieffel projection (z_cut 48).
    Index {
        #[arg(long, default_value_t = 256)]
        cutoff: usize,
        #[arg(long, default_value_t = 4096)]
        quadrature: usize,
        #[arg(long, value_enum, default_value_t = RampArg::Smooth)]
        ramp: RampArg,
        #[arg(long, default_value_t = 1e-3)]
        index_tol: f64,
        /// Slices of the grid for the full pairing operator; 0 skips it.
        #[arg(long, default_value_t = 3)]
        pairing_n_cut: usize,
        #[arg(long, default_value_t = 32)]
        pairing_z_cut: usize,
    },
    /// Dimension of the center within the span of represented monomials (grid 10,10).
    CenterProbe {
        #[arg(long = "M", default_value_t = 2)]
        m_cut: u32,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("UQ2_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn execute(cfg: &RunConfig, cmd: &Command) -> Result<Report, CliError> {
    use commands as c;
    let name = match cmd {
        Command::Relations => "relations",
        Command::HopfCheck { .. } => "hopf-check",
        Command::Haar { .. } => "haar",
        Command::Expect { .. } => "expect",
        Command::Watatani { .. } => "watatani",
        Command::Spectrum { .. } => "spectrum",
        Command::Commutators => "commutators",
        Command::KernelScan { .. } => "kernel-scan",
        Command::Index { .. } => "index",
        Command::CenterProbe { .. } => "center-probe",
    };
    let mut r = Report::new(name);
    let q = cfg.q()?;
    if let Some(w) = q.warning() {
        r.warn(w.code());
    }
    let start = Instant::now();
    let mut grid = None;
    match cmd {
        Command::Relations => {
            let g = cfg.grid((40, 40), 0)?;
            grid = Some(g);
            c::relations(cfg, g, &mut r)?;
        }
        Command::HopfCheck {
            samples,
            max_degree,
        } => c::hopf_check(cfg, *samples, *max_degree, &mut r)?,
        Command::Haar {
            max_exp,
            i_max,
            samples,
        } => c::haar_cmd(cfg, *max_exp, *i_max, *samples, &mut r)?,
        Command::Expect {
            which,
            samples,
            max_degree,
        } => c::expect(cfg, (*which).into(), *samples, *max_degree, &mut r)?,
        Command::Watatani { which, n } => c::watatani(cfg, (*which).into(), *n, &mut r)?,
        Command::Spectrum {
            lambda_max,
            exponent,
            fit_lo,
            fit_hi,
            stabilization_tol,
        } => {
            let a = c::SpectrumArgs {
                lambda_max: *lambda_max,
                exponent: *exponent,
                fit: (*fit_lo, *fit_hi),
                stabilization_tol: *stabilization_tol,
            };
            c::spectrum(&a, &mut r)?
        }
        Command::Commutators => {
            let g = cfg.grid((40, 40), 0)?;
            grid = Some(g);
            c::commutators(cfg, g, &mut r)?;
        }
        Command::KernelScan {
            max_degree,
            separation,
        } => {
            let g = cfg.grid((20, 20), 2 * *max_degree as usize)?;
            grid = Some(g);
            c::kernel_scan(cfg, g, *max_degree, *separation, &mut r)?;
        }
        Command::Index {
            cutoff,
            quadrature,
            ramp,
            index_tol,
            pairing_n_cut,
            pairing_z_cut,
        } => {
            let a = c::IndexArgs {
                z_cut: cfg.z_cut.unwrap_or(48),
                cutoff: *cutoff,
                quadrature: *quadrature,
                ramp: match ramp {
                    RampArg::Linear => RampShape::Linear,
                    RampArg::Smooth => RampShape::Smooth,
                },
                index_tol: *index_tol,
                pairing: (*pairing_n_cut > 0).then_some((*pairing_n_cut, *pairing_z_cut)),
            };
            grid = Some(TruncGrid::new(1, a.z_cut, 1)?);
            c::index(cfg, &a, &mut r)?;
        }
        Command::CenterProbe { m_cut } => {
            let g = cfg.grid((10, 10), 0)?;
            grid = Some(g);
            c::center(cfg, g, *m_cut, &mut r)?;
        }
    }
    r.config = cfg.to_map(grid)?;
    if cfg.timings {
        r.timings.insert(
            "total_seconds".into(),
            report::finite("timing", start.elapsed().as_secs_f64())?,
        );
    }
    Ok(r)
}

/// Serialized report for the given configuration.
pub fn emit_report(r: &Report, cfg: &RunConfig) -> Vec<u8> {
    match cfg.output_format {
        Format::Json => r.to_json(),
        Format::Csv => r.to_csv(),
    }
}

/// Runs a subcommand and returns the exit code: 0 pass, 2 failed check, 1 usage or runtime error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let report = match execute(&cli.cfg, &cli.cmd) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let bytes = emit_report(&report, &cli.cfg);
    let written = match &cli.cfg.output_path {
        Some(p) => std::fs::write(p, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return 1;
    }
    if report.passed() {
        0
    } else {
        for (name, ok) in &report.checks {
            if !ok {
                eprintln!("check failed: {name}");
            }
        }
        2
    }
}

/// Report for an argument list, without writing it anywhere.
pub fn report_for<I, T>(argv: I) -> Result<(Report, RunConfig), String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    let r = execute(&cli.cfg, &cli.cmd).map_err(|e| e.to_string())?;
    Ok((r, cli.cfg))
}
