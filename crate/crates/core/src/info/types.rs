use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Thermal source ensemble, P_n = q^n / (1 + n̄) with q = n̄ / (1 + n̄).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAlphabet {
    nbar: f64,
}

impl ThermalAlphabet {
    pub fn new(nbar: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::InvalidParameter {
                name: "nbar",
                value: nbar,
                reason: "mean photon number must be finite and non-negative",
            });
        }
        Ok(Self { nbar })
    }

    /// Vacuum input, n̄ = 0.
    pub fn vacuum() -> Self {
        Self { nbar: 0.0 }
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// Geometric ratio q = n̄ / (1 + n̄).
    pub fn ratio(&self) -> f64 {
        self.nbar / (1.0 + self.nbar)
    }

    /// ln q, or −∞ for the vacuum.
    pub(crate) fn ln_ratio(&self) -> f64 {
        if self.nbar == 0.0 {
            f64::NEG_INFINITY
        } else {
            // ln n̄ − ln(1 + n̄) keeps precision for small and large n̄ alike.
            self.nbar.ln() - self.nbar.ln_1p()
        }
    }

    /// The ensemble seen after binomial loss with efficiency `eff`.
    pub fn thinned(&self, eff: DetectorEfficiency) -> Self {
        Self {
            nbar: eff.eta_sq() * self.nbar,
        }
    }
}

/// Quantum efficiency η² of the beam-splitter loss model: the probability
/// that an incident photon is counted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DetectorEfficiency {
    eta_sq: f64,
}

impl DetectorEfficiency {
    pub fn new(eta_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta_sq) {
            return Err(Error::InvalidParameter {
                name: "eta2",
                value: eta_sq,
                reason: "quantum efficiency must lie in [0, 1]",
            });
        }
        Ok(Self { eta_sq })
    }

    pub fn perfect() -> Self {
        Self { eta_sq: 1.0 }
    }

    pub fn eta_sq(&self) -> f64 {
        self.eta_sq
    }

    /// Amplitude efficiency η, the beam splitter's amplitude coefficient.
    pub fn amplitude(&self) -> f64 {
        self.eta_sq.sqrt()
    }
}

/// Logarithm base of an information quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Base {
    #[default]
    Bits,
    Nats,
}

impl Base {
    pub fn as_str(&self) -> &'static str {
        match self {
            Base::Bits => "bits",
            Base::Nats => "nats",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bits" => Ok(Base::Bits),
            "nats" => Ok(Base::Nats),
            other => Err(format!("unknown base `{other}` (expected bits or nats)")),
        }
    }
}

/// A mutual-information or capacity value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoValue {
    value: f64,
    base: Base,
}

impl InfoValue {
    pub fn from_nats(nats: f64, base: Base) -> Self {
        let value = match base {
            Base::Nats => nats,
            Base::Bits => nats / std::f64::consts::LN_2,
        };
        Self { value, base }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn nats(&self) -> f64 {
        match self.base {
            Base::Nats => self.value,
            Base::Bits => self.value * std::f64::consts::LN_2,
        }
    }

    pub fn bits(&self) -> f64 {
        match self.base {
            Base::Bits => self.value,
            Base::Nats => self.value / std::f64::consts::LN_2,
        }
    }

    pub fn to_base(&self, base: Base) -> Self {
        if base == self.base {
            *self
        } else {
            Self::from_nats(self.nats(), base)
        }
    }
}

impl fmt::Display for InfoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.base)
    }
}

/// Dual-homodyne intensity I = X² + P².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct IntensitySample(f64);

impl IntensitySample {
    pub fn new(intensity: f64) -> Result<Self> {
        if !(intensity >= 0.0) || !intensity.is_finite() {
            return Err(Error::InvalidParameter {
                name: "intensity",
                value: intensity,
                reason: "intensity must be finite and non-negative",
            });
        }
        Ok(Self(intensity))
    }

    pub fn from_quadratures(x: f64, p: f64) -> Self {
        Self(x * x + p * p)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Truncation, quadrature and root-finding tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    /// Absolute bound on the neglected tail of sums over photon number.
    pub series_tail_tol: f64,
    /// Relative tolerance of intensity quadrature.
    pub quad_rel_tol: f64,
    /// Absolute tolerance on η² when inverting for the equivalent efficiency.
    pub root_abs_tol: f64,
    pub max_terms: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            series_tail_tol: 1e-12,
            quad_rel_tol: 1e-9,
            root_abs_tol: 1e-6,
            max_terms: 1_000_000,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("series_tail_tol", self.series_tail_tol),
            ("quad_rel_tol", self.quad_rel_tol),
            ("root_abs_tol", self.root_abs_tol),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "tolerances must be positive",
                });
            }
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidParameter {
                name: "max_terms",
                value: self.max_terms as f64,
                reason: "at least one series term is required",
            });
        }
        Ok(())
    }
}
