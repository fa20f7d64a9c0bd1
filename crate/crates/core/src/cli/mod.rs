//! The `photoinfo` command line.
//!
//! ```text
//! photoinfo capacity    --nbar 1
//! photoinfo direct-mi   --nbar 1 --eta2 0.5 --base nats
//! photoinfo homodyne-mi --nbar 1 --quadrature
//! photoinfo equiv-eff   --nbar 1
//! photoinfo sweep       --preset fig4 --format csv --output fig4.csv
//! photoinfo simulate    --quantity homodyne-mi --nbar 1 --samples 1000000 --seed 42
//! ```
//!
//! Exit status: 0 on success, 2 for usage errors (bad flags, out-of-domain
//! parameters), 3 for numerical failures (non-convergence, internal
//! consistency), 1 for I/O errors.

mod output;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::info::{
    ideal_capacity, mutual_info_direct, mutual_info_homodyne_closed, mutual_info_homodyne_quadrature, Base,
    DetectorEfficiency, InfoValue, NumericsConfig, ThermalAlphabet,
};
use crate::mc::{mc_mutual_info_direct, mc_mutual_info_homodyne, McConfig};

pub use output::{format_real, render, Field, Format, OutputRecord};
pub use sweep::{evaluate_point, run_sweep, GridKind, Preset, Quantity, SweepSpec, Variable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "photoinfo",
    version,
    about = "Mutual information of lossy photon counting vs. dual-homodyne detection on a thermal channel"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity of the lossless photon-counting channel.
    Capacity {
        #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Mutual information of photon counting at quantum efficiency eta2.
    DirectMi {
        #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
        nbar: f64,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_eta2)]
        eta2: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Mutual information of ideal dual-homodyne detection.
    HomodyneMi {
        #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
        nbar: f64,
        /// Also evaluate by direct quadrature as a cross-check.
        #[arg(long)]
        quadrature: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Photon-counting efficiency that matches dual-homodyne detection.
    EquivEff {
        #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
        nbar: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a quantity on a grid (presets reproduce the standard curves).
    Sweep(SweepArgs),
    /// Monte Carlo estimate compared against the analytic value.
    Simulate {
        #[arg(long, value_enum)]
        quantity: SimQuantity,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
        nbar: f64,
        /// Required for direct-mi.
        #[arg(long, allow_negative_numbers = true, value_parser = parse_eta2)]
        eta2: Option<f64>,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// RNG seed; a fresh one is drawn and reported when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = BaseArg::Bits)]
    base: BaseArg,
    /// Overrides the tolerance that governs the command (series tail for
    /// information values, eta2 accuracy for equiv-eff).
    #[arg(long, value_parser = parse_tol)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, conflicts_with_all = ["variable", "grid", "start", "stop", "points", "quantity"])]
    preset: Option<Preset>,
    #[arg(long, value_enum, required_unless_present = "preset")]
    variable: Option<Variable>,
    #[arg(long, value_enum, default_value_t = GridKind::Linear)]
    grid: GridKind,
    #[arg(long, required_unless_present = "preset", allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, required_unless_present = "preset", allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long, required_unless_present = "preset")]
    points: Option<usize>,
    #[arg(long, value_enum, required_unless_present = "preset")]
    quantity: Option<Quantity>,
    /// Fixed mean photon number when sweeping eta2.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_nbar)]
    nbar: Option<f64>,
    /// Fixed efficiency when sweeping nbar.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_eta2)]
    eta2: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    Bits,
    Nats,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Bits => Base::Bits,
            BaseArg::Nats => Base::Nats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimQuantity {
    DirectMi,
    HomodyneMi,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(x)
}

fn parse_nbar(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    ThermalAlphabet::new(x).map(|a| a.nbar()).map_err(|e| e.to_string())
}

fn parse_eta2(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    DetectorEfficiency::new(x).map(|e| e.eta_sq()).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("tolerance must be positive, got {x}"))
    }
}

enum Failure {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(stderr, "numerical failure: {e}");
            EXIT_NUMERIC
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "I/O error: {e}");
            EXIT_IO
        }
    }
}

fn config_with(tol: Option<f64>, apply: impl FnOnce(&mut NumericsConfig, f64)) -> NumericsConfig {
    let mut cfg = NumericsConfig::default();
    if let Some(t) = tol {
        apply(&mut cfg, t);
    }
    cfg
}

fn series_config(tol: Option<f64>) -> NumericsConfig {
    config_with(tol, |c, t| c.series_tail_tol = t)
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (records, common) = match command {
        Command::Capacity { nbar, common } => {
            let alphabet = ThermalAlphabet::new(nbar)?;
            let rec = OutputRecord::new("capacity")
                .real("nbar", nbar)
                .info("value", ideal_capacity(&alphabet, Base::Nats));
            (vec![rec], common)
        }
        Command::DirectMi { nbar, eta2, common } => {
            let cfg = series_config(common.tol);
            (vec![evaluate_point(Quantity::DirectMi, nbar, eta2, &cfg)?], common)
        }
        Command::HomodyneMi {
            nbar,
            quadrature,
            common,
        } => {
            let cfg = series_config(common.tol);
            let alphabet = ThermalAlphabet::new(nbar)?;
            let mut rec = OutputRecord::new("homodyne_mi")
                .real("nbar", nbar)
                .info("value", mutual_info_homodyne_closed(&alphabet, &cfg, Base::Nats)?)
                .real("series_tail_tol", cfg.series_tail_tol);
            if quadrature {
                rec = rec
                    .info("quadrature", mutual_info_homodyne_quadrature(&alphabet, &cfg, Base::Nats)?)
                    .real("quad_rel_tol", cfg.quad_rel_tol);
            }
            (vec![rec], common)
        }
        Command::EquivEff { nbar, common } => {
            if nbar == 0.0 {
                return Err(Failure::Usage(
                    "equivalent efficiency is undefined at nbar = 0: both mutual informations vanish for every efficiency"
                        .into(),
                ));
            }
            let cfg = config_with(common.tol, |c, t| c.root_abs_tol = t);
            (vec![evaluate_point(Quantity::EquivEff, nbar, 0.0, &cfg)?], common)
        }
        Command::Sweep(args) => {
            let spec = sweep_spec(&args)?;
            let cfg = match spec.quantity {
                Quantity::EquivEff => config_with(args.common.tol, |c, t| c.root_abs_tol = t),
                _ => series_config(args.common.tol),
            };
            (run_sweep(&spec, &cfg)?, args.common)
        }
        Command::Simulate {
            quantity,
            nbar,
            eta2,
            samples,
            seed,
            common,
        } => {
            let seed = seed.unwrap_or_else(rand::random);
            let mc = McConfig::new(seed, samples)?;
            let cfg = series_config(common.tol);
            let alphabet = ThermalAlphabet::new(nbar)?;
            let (name, est, analytic, eff) = match quantity {
                SimQuantity::DirectMi => {
                    let eta2 = eta2.ok_or_else(|| Failure::Usage("simulate --quantity direct-mi requires --eta2".into()))?;
                    let eff = DetectorEfficiency::new(eta2)?;
                    let est = mc_mutual_info_direct(&alphabet, eff, &mc)?;
                    let analytic = mutual_info_direct(&alphabet, eff, &cfg, Base::Nats)?;
                    ("direct_mi", est, analytic, Some(eta2))
                }
                SimQuantity::HomodyneMi => {
                    let est = mc_mutual_info_homodyne(&alphabet, &mc)?;
                    let analytic = mutual_info_homodyne_closed(&alphabet, &cfg, Base::Nats)?;
                    ("homodyne_mi", est, analytic, None)
                }
            };
            let mut rec = OutputRecord::new(name).real("nbar", nbar);
            if let Some(e) = eff {
                rec = rec.real("eta2", e);
            }
            let rec = rec
                .int("samples", samples)
                .int("seed", seed)
                .info("mc", InfoValue::from_nats(est.mean, Base::Nats))
                .info("std_error", InfoValue::from_nats(est.std_error, Base::Nats))
                .info("analytic", analytic)
                .real("z_score", est.z_score(analytic.nats()));
            (vec![rec], common)
        }
    };

    let text = render(&records, common.format, common.base.into());
    match common.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, Failure> {
    let mut spec = match args.preset {
        Some(p) => SweepSpec::preset(p),
        None => {
            let missing = || Failure::Usage("explicit sweeps need --variable, --start, --stop, --points and --quantity".into());
            let variable = args.variable.ok_or_else(missing)?;
            SweepSpec {
                variable,
                grid: args.grid,
                start: args.start.ok_or_else(missing)?,
                stop: args.stop.ok_or_else(missing)?,
                points: args.points.ok_or_else(missing)?,
                fixed: 1.0,
                quantity: args.quantity.ok_or_else(missing)?,
            }
        }
    };
    match spec.variable {
        Variable::Eta2 => {
            if let Some(nbar) = args.nbar {
                spec.fixed = nbar;
            }
        }
        Variable::Nbar => {
            if let Some(eta2) = args.eta2 {
                spec.fixed = eta2;
            } else if spec.quantity == Quantity::DirectMi {
                return Err(Failure::Usage("sweeping nbar for direct_mi requires --eta2".into()));
            }
        }
    }
    spec.validate()?;
    Ok(spec)
}
