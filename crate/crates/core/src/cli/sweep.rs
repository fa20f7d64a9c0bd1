//! Grid sweeps over η² or n̄.

use clap::ValueEnum;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::info::{
    equivalent_efficiency_detailed, ideal_capacity, mutual_info_direct, mutual_info_homodyne_closed, Base,
    DetectorEfficiency, NumericsConfig, ThermalAlphabet,
};

use super::output::OutputRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    Eta2,
    Nbar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    DirectMi,
    HomodyneMi,
    Capacity,
    EquivEff,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::DirectMi => "direct_mi",
            Quantity::HomodyneMi => "homodyne_mi",
            Quantity::Capacity => "capacity",
            Quantity::EquivEff => "equiv_eff",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Direct-detection information against η² ∈ [0, 1] at n̄ = 1, 101 points.
    Fig2,
    /// Equivalent efficiency against n̄ ∈ [0.01, 100] on a log grid, 81 points.
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub grid: GridKind,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// The parameter that is not swept (n̄ when sweeping η², and vice versa).
    pub fixed: f64,
    pub quantity: Quantity,
}

impl SweepSpec {
    pub fn preset(preset: Preset) -> Self {
        match preset {
            Preset::Fig2 => SweepSpec {
                variable: Variable::Eta2,
                grid: GridKind::Linear,
                start: 0.0,
                stop: 1.0,
                points: 101,
                fixed: 1.0,
                quantity: Quantity::DirectMi,
            },
            Preset::Fig4 => SweepSpec {
                variable: Variable::Nbar,
                grid: GridKind::Log,
                start: 0.01,
                stop: 100.0,
                points: 81,
                fixed: 1.0,
                quantity: Quantity::EquivEff,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if !(self.start < self.stop) {
            return invalid("start", self.start, "grid start must be below stop");
        }
        if self.points < 2 {
            return invalid("points", self.points as f64, "a grid needs at least two points");
        }
        if self.grid == GridKind::Log && !(self.start > 0.0) {
            return invalid("start", self.start, "log grid requires a positive start");
        }
        match self.variable {
            Variable::Eta2 => {
                if self.start < 0.0 || self.stop > 1.0 {
                    return invalid("eta2", self.stop, "swept efficiency must lie in [0, 1]");
                }
                if self.quantity != Quantity::DirectMi {
                    return invalid(
                        "variable",
                        0.0,
                        "only direct_mi depends on eta2; sweep nbar for the other quantities",
                    );
                }
                ThermalAlphabet::new(self.fixed)?;
            }
            Variable::Nbar => {
                if self.start < 0.0 {
                    return invalid("nbar", self.start, "swept mean photon number must be non-negative");
                }
                if self.quantity == Quantity::EquivEff && self.start == 0.0 {
                    return invalid("nbar", 0.0, "equivalent efficiency is undefined at nbar = 0");
                }
                if self.quantity == Quantity::DirectMi {
                    DetectorEfficiency::new(self.fixed)?;
                }
            }
        }
        Ok(())
    }

    /// Grid coordinates in order; both endpoints are reproduced exactly.
    pub fn grid_points(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k == 0 {
                    return self.start;
                }
                if k == self.points - 1 {
                    return self.stop;
                }
                let t = k as f64 / last;
                match self.grid {
                    GridKind::Linear => self.start + (self.stop - self.start) * t,
                    GridKind::Log => {
                        let (a, b) = (self.start.log10(), self.stop.log10());
                        10f64.powf(a + (b - a) * t)
                    }
                }
            })
            .collect()
    }
}

/// Evaluates one quantity at `(nbar, eta2)` and packs it into a record.
pub fn evaluate_point(quantity: Quantity, nbar: f64, eta2: f64, cfg: &NumericsConfig) -> Result<OutputRecord> {
    let alphabet = ThermalAlphabet::new(nbar)?;
    let record = OutputRecord::new(quantity.name()).real("nbar", nbar);
    Ok(match quantity {
        Quantity::Capacity => record.info("value", ideal_capacity(&alphabet, Base::Nats)),
        Quantity::DirectMi => {
            let eff = DetectorEfficiency::new(eta2)?;
            record
                .real("eta2", eta2)
                .info("value", mutual_info_direct(&alphabet, eff, cfg, Base::Nats)?)
                .real("series_tail_tol", cfg.series_tail_tol)
        }
        Quantity::HomodyneMi => record
            .info("value", mutual_info_homodyne_closed(&alphabet, cfg, Base::Nats)?)
            .real("series_tail_tol", cfg.series_tail_tol),
        Quantity::EquivEff => {
            let r = equivalent_efficiency_detailed(&alphabet, cfg, Base::Nats)?;
            record
                .real("equiv_eta2", r.efficiency.eta_sq())
                .real("achieved_tol", r.bracket.achieved_tol)
                .int("iterations", r.bracket.iterations as u64)
                .info("homodyne", r.target)
        }
    })
}

/// Evaluates every grid point (in parallel) and returns records in grid order.
pub fn run_sweep(spec: &SweepSpec, cfg: &NumericsConfig) -> Result<Vec<OutputRecord>> {
    spec.validate()?;
    spec.grid_points()
        .into_par_iter()
        .map(|x| match spec.variable {
            Variable::Eta2 => evaluate_point(spec.quantity, spec.fixed, x, cfg),
            Variable::Nbar => evaluate_point(spec.quantity, x, spec.fixed, cfg),
        })
        .collect()
}
