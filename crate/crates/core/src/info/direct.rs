//! Direct photon counting behind a lossy beam splitter.
//!
//! The joint law of sent (`n`) and counted (`m`) photons is
//! `P(n, m) = P_n · C(n, m) η^{2m} (1 − η²)^{n−m}`; the counted marginal is
//! again thermal with mean `η² n̄`.

use crate::error::{Error, Result};
use crate::numerics::{ln_factorial_table, log_binomial, NeumaierSum};

use super::thermal::{ideal_capacity_nats, ln_thermal_pmf, thermal_truncation};
use super::{thermal_pmf, Base, DetectorEfficiency, InfoValue, NumericsConfig, ThermalAlphabet};

/// Probability that `m` of `n` photons survive: C(n, m) (η²)^m (1 − η²)^{n−m}.
///
/// `m > n` is rejected rather than mapped to zero.
pub fn binomial_loss_kernel(n: u64, m: u64, eff: DetectorEfficiency) -> Result<f64> {
    if m > n {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            reason: "cannot detect more photons than were sent (m > n)",
        });
    }
    let log_c = log_binomial(n, m)?;
    Ok(ln_kernel(log_c, n, m, &LossLogs::new(eff)).exp())
}

/// Counted-photon distribution: thermal with mean η² n̄.
pub fn detected_pmf(alphabet: &ThermalAlphabet, eff: DetectorEfficiency, m: u64) -> f64 {
    thermal_pmf(&alphabet.thinned(eff), m)
}

/// Mutual information between sent and counted photon numbers.
///
/// Evaluated as the truncated joint double sum
/// ([`mutual_info_direct_joint`]) and cross-checked against the closed-form
/// decomposition ([`mutual_info_direct_closed_terms`]). The two must agree to
/// `10 · series_tail_tol`; the joint sum is returned.
pub fn mutual_info_direct(
    alphabet: &ThermalAlphabet,
    eff: DetectorEfficiency,
    cfg: &NumericsConfig,
    base: Base,
) -> Result<InfoValue> {
    let joint = mutual_info_direct_joint(alphabet, eff, cfg)?;
    let literal = mutual_info_direct_closed_terms(alphabet, eff, cfg)?;
    let gap = (joint - literal).abs();
    if gap > 10.0 * cfg.series_tail_tol {
        return Err(Error::Internal(format!(
            "direct-detection evaluators disagree: joint sum {joint}, closed terms {literal} (n̄ = {}, η² = {})",
            alphabet.nbar(),
            eff.eta_sq()
        )));
    }
    Ok(InfoValue::from_nats(joint, base))
}

/// Σ_{n,m} P(n, m) ln(P(m | n) / P(m)) in nats.
///
/// The sum over `n` stops once both the thermal tail mass and the bound
/// `q^N [ln(1 + η²n̄) + η²(N + n̄) ln(1 + 1/(η²n̄))]` on the neglected
/// per-row divergences are below `series_tail_tol`.
pub fn mutual_info_direct_joint(
    alphabet: &ThermalAlphabet,
    eff: DetectorEfficiency,
    cfg: &NumericsConfig,
) -> Result<f64> {
    cfg.validate()?;
    let nbar = alphabet.nbar();
    let e = eff.eta_sq();
    if nbar == 0.0 || e == 0.0 {
        return Ok(0.0);
    }
    let detected_mean = e * nbar;
    let rate = detected_mean.ln_1p();
    let per_photon = e * (1.0 / detected_mean).ln_1p();
    let n_terms = truncation(alphabet, cfg, |big_n| rate + per_photon * (big_n + nbar))?;

    let lnf = ln_factorial_table(n_terms);
    let logs = LossLogs::new(eff);
    let detected = alphabet.thinned(eff);
    let ln_q0 = ln_thermal_pmf(&detected, 0);
    let ln_qd = detected.ln_ratio();
    let ln_detected: Vec<f64> = (0..n_terms)
        .map(|m| if m == 0 { ln_q0 } else { ln_q0 + m as f64 * ln_qd })
        .collect();

    let mut acc = NeumaierSum::new();
    for n in 0..n_terms {
        let ln_pn = ln_thermal_pmf(alphabet, n as u64);
        for m in logs.support(n) {
            let ln_c = lnf[n] - lnf[m] - lnf[n - m];
            let ln_k = ln_kernel(ln_c, n as u64, m as u64, &logs);
            let w = ln_pn + ln_k;
            if w < UNDERFLOW {
                continue;
            }
            acc.add(w.exp() * (ln_k - ln_detected[m]));
        }
    }
    Ok(acc.value())
}

/// The same mutual information through its closed-form decomposition
///
/// ```text
/// ln[(1 − η²)^n̄ (1 + η²n̄)] + η²n̄ ln[(1 + η²n̄) / ((1 − η²) n̄)]
///     + Σ_n P_n Σ_m C(n,m) η^{2m} (1 − η²)^{n−m} ln C(n, m)
/// ```
///
/// with the two `ln(1 − η²)` contributions merged into `n̄ (1 − η²) ln(1 − η²)`
/// so that nothing diverges at η² = 1. Only the binomial-entropy term is a
/// series; its tail is bounded by `ln 2 · q^N (N + n̄)`.
pub fn mutual_info_direct_closed_terms(
    alphabet: &ThermalAlphabet,
    eff: DetectorEfficiency,
    cfg: &NumericsConfig,
) -> Result<f64> {
    cfg.validate()?;
    let nbar = alphabet.nbar();
    let e = eff.eta_sq();
    if nbar == 0.0 || e == 0.0 {
        return Ok(0.0);
    }
    let detected_mean = e * nbar;
    let lost_term = if e == 1.0 {
        0.0
    } else {
        nbar * (1.0 - e) * (-e).ln_1p()
    };
    let closed = (1.0 + detected_mean) * detected_mean.ln_1p() - detected_mean * nbar.ln() + lost_term;
    if e == 1.0 {
        // Every C(n, n) = 1; this branch is the ideal capacity.
        debug_assert!((closed - ideal_capacity_nats(nbar)).abs() <= 1e-12 * closed.max(1.0));
        return Ok(closed);
    }

    let n_terms = truncation(alphabet, cfg, |big_n| std::f64::consts::LN_2 * (big_n + nbar))?;
    let lnf = ln_factorial_table(n_terms);
    let logs = LossLogs::new(eff);
    let mut entropy = NeumaierSum::new();
    for n in 0..n_terms {
        let ln_pn = ln_thermal_pmf(alphabet, n as u64);
        for m in logs.support(n) {
            let ln_c = lnf[n] - lnf[m] - lnf[n - m];
            if ln_c == 0.0 {
                continue;
            }
            let w = ln_pn + ln_kernel(ln_c, n as u64, m as u64, &logs);
            if w < UNDERFLOW {
                continue;
            }
            entropy.add(w.exp() * ln_c);
        }
    }
    Ok(closed + entropy.value())
}

/// exp() of anything below this is zero in f64.
const UNDERFLOW: f64 = -745.2;

struct LossLogs {
    eta_sq: f64,
    ln_kept: f64,
    ln_lost: f64,
}

impl LossLogs {
    fn new(eff: DetectorEfficiency) -> Self {
        let e = eff.eta_sq();
        Self {
            eta_sq: e,
            ln_kept: e.ln(),
            ln_lost: (-e).ln_1p(),
        }
    }

    /// Values of `m` with non-zero kernel weight for a given `n`.
    fn support(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        if self.eta_sq == 1.0 {
            n..=n
        } else if self.eta_sq == 0.0 {
            0..=0
        } else {
            0..=n
        }
    }
}

/// ln of the loss kernel with the 0 · ln 0 = 0 convention at η² ∈ {0, 1}.
fn ln_kernel(ln_c: f64, n: u64, m: u64, logs: &LossLogs) -> f64 {
    let kept = if m == 0 { 0.0 } else { m as f64 * logs.ln_kept };
    let lost = if n == m { 0.0 } else { (n - m) as f64 * logs.ln_lost };
    ln_c + kept + lost
}

/// Number of photon-number terms: the thermal mass truncation, extended until
/// `q^N · row_bound(N)` also drops below tolerance.
fn truncation<B>(alphabet: &ThermalAlphabet, cfg: &NumericsConfig, row_bound: B) -> Result<usize>
where
    B: Fn(f64) -> f64,
{
    let mut n = thermal_truncation(alphabet, cfg.series_tail_tol, cfg.max_terms)?;
    let ln_q = alphabet.ln_ratio();
    let bound = |n: usize| (n as f64 * ln_q).exp() * row_bound(n as f64);
    while bound(n) >= cfg.series_tail_tol {
        if n >= cfg.max_terms {
            return Err(Error::SeriesNonConvergence {
                terms: n,
                tail_bound: bound(n),
                tol: cfg.series_tail_tol,
            });
        }
        n += 1;
    }
    Ok(n)
}
