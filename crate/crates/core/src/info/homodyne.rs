//! Ideal dual-homodyne detection of a photon-number alphabet.
//!
//! Given `n` photons the quadrature pair (X, P) has density
//! `Iⁿ e^{−I} / (π n!)` with `I = X² + P²`; integrating out the phase leaves an
//! Erlang law of shape `n + 1` for the intensity. Averaged over the thermal
//! ensemble, the intensity is exponential with mean `1 + n̄`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::numerics::{
    adaptive_quadrature_breaks, ln_factorial_table, log_gamma, sum_series_with_tail_bound, NeumaierSum, QuadOptions,
    EULER_GAMMA,
};

use super::thermal::{ln_thermal_pmf, thermal_truncation};
use super::{Base, InfoValue, IntensitySample, NumericsConfig, ThermalAlphabet};

/// Joint quadrature density P(X, P | n) = Iⁿ e^{−I} / (π n!).
pub fn homodyne_xp_conditional_pdf(n: u64, x: f64, p: f64) -> f64 {
    let intensity = IntensitySample::from_quadratures(x, p).value();
    ln_erlang(n, intensity, ln_factorial(n)).exp() / PI
}

/// Intensity density given `n` photons, Iⁿ e^{−I} / n!.
pub fn homodyne_conditional_intensity_pdf(n: u64, i: IntensitySample) -> f64 {
    ln_erlang(n, i.value(), ln_factorial(n)).exp()
}

/// Thermally averaged intensity density, e^{−I / (1 + n̄)} / (1 + n̄).
pub fn homodyne_marginal_intensity_pdf(alphabet: &ThermalAlphabet, i: IntensitySample) -> f64 {
    ln_marginal(alphabet.nbar(), i.value()).exp()
}

/// The marginal intensity density built as Σₙ P(I | n) Pₙ, truncated where the
/// thermal tail mass drops below `series_tail_tol` (each P(I | n) ≤ 1, so the
/// neglected part is below that tolerance too).
pub fn homodyne_marginal_from_sum(alphabet: &ThermalAlphabet, i: IntensitySample, cfg: &NumericsConfig) -> Result<f64> {
    cfg.validate()?;
    let n_terms = thermal_truncation(alphabet, cfg.series_tail_tol, cfg.max_terms)?;
    let lnf = ln_factorial_table(n_terms);
    let acc: NeumaierSum = (0..n_terms)
        .map(|n| (ln_erlang(n as u64, i.value(), lnf[n]) + ln_thermal_pmf(alphabet, n as u64)).exp())
        .collect();
    Ok(acc.value())
}

/// Mutual information between photon number and dual-homodyne intensity,
///
/// ```text
/// (1 + n̄) ln(1 + n̄) − γ n̄ − Σ_{n ≥ 1} qⁿ ln n,    q = n̄ / (1 + n̄),
/// ```
///
/// evaluated in nats (the γ term is tied to the natural logarithm) and then
/// converted. The series stops once `q^N (ln N + 1/(1 − q)) / (1 − q)` is
/// below `series_tail_tol`.
pub fn mutual_info_homodyne_closed(alphabet: &ThermalAlphabet, cfg: &NumericsConfig, base: Base) -> Result<InfoValue> {
    cfg.validate()?;
    let nbar = alphabet.nbar();
    if nbar == 0.0 {
        return Ok(InfoValue::from_nats(0.0, base));
    }
    let ln_q = alphabet.ln_ratio();
    let inv_one_minus_q = 1.0 + nbar;
    let series = sum_series_with_tail_bound(
        |n| if n < 2 { 0.0 } else { (n as f64 * ln_q).exp() * (n as f64).ln() },
        |n| {
            let n = n.max(1) as f64;
            (n * ln_q).exp() * (n.ln() + inv_one_minus_q) * inv_one_minus_q
        },
        cfg.series_tail_tol,
        cfg.max_terms,
    )?;
    let nats = (1.0 + nbar) * nbar.ln_1p() - EULER_GAMMA * nbar - series.value;
    Ok(InfoValue::from_nats(nats, base))
}

/// The same mutual information by direct integration,
/// Σₙ Pₙ ∫ P(I | n) ln(P(I | n) / P(I)) dI.
///
/// Each inner integral is a Kullback–Leibler divergence, so a relative
/// tolerance per term gives a relative tolerance on the total. The intensity
/// range for photon number `n` is `[0, max(I_max, n + 1 + 10√(n + 1) + 40)]`
/// with `I_max = (1 + n̄)(ln(1 / quad_rel_tol) + 10)`. Photon numbers are
/// truncated once `q^N [ln(1 + n̄) + (N + n̄ + 1)/(1 + n̄)]`, a bound on the
/// neglected divergences, is below `series_tail_tol`.
pub fn mutual_info_homodyne_quadrature(
    alphabet: &ThermalAlphabet,
    cfg: &NumericsConfig,
    base: Base,
) -> Result<InfoValue> {
    cfg.validate()?;
    let nbar = alphabet.nbar();
    if nbar == 0.0 {
        return Ok(InfoValue::from_nats(0.0, base));
    }
    let ln_q = alphabet.ln_ratio();
    let mut n_terms = thermal_truncation(alphabet, cfg.series_tail_tol, cfg.max_terms)?;
    let tail = |n: usize| {
        let n = n as f64;
        (n * ln_q).exp() * (nbar.ln_1p() + (n + nbar + 1.0) / (1.0 + nbar))
    };
    while tail(n_terms) >= cfg.series_tail_tol {
        n_terms += 1;
        if n_terms > cfg.max_terms {
            return Err(crate::Error::SeriesNonConvergence {
                terms: cfg.max_terms,
                tail_bound: tail(n_terms),
                tol: cfg.series_tail_tol,
            });
        }
    }

    let lnf = ln_factorial_table(n_terms);
    let i_max = (1.0 + nbar) * ((1.0 / cfg.quad_rel_tol).ln() + 10.0);
    let opts = QuadOptions {
        rel_tol: cfg.quad_rel_tol,
        abs_tol: 0.0,
        max_subdivisions: 20_000,
    };

    let mut acc = NeumaierSum::new();
    for n in 0..n_terms {
        let shape = (n + 1) as f64;
        let upper = i_max.max(shape + 10.0 * shape.sqrt() + 40.0);
        let ln_fact = lnf[n];
        let integrand = |i: f64| {
            let lc = ln_erlang(n as u64, i, ln_fact);
            if lc == f64::NEG_INFINITY {
                return 0.0;
            }
            lc.exp() * (lc - ln_marginal(nbar, i))
        };
        // Panels no wider than the conditional spread, so no peak hides between nodes.
        let panels = (upper / shape.sqrt()).ceil().clamp(16.0, 512.0) as usize;
        let breaks: Vec<f64> = (0..=panels).map(|k| upper * k as f64 / panels as f64).collect();
        let divergence = adaptive_quadrature_breaks(integrand, &breaks, opts)?;
        acc.add(ln_thermal_pmf(alphabet, n as u64).exp() * divergence.value);
    }
    Ok(InfoValue::from_nats(acc.value(), base))
}

fn ln_factorial(n: u64) -> f64 {
    log_gamma(n as f64 + 1.0).expect("n + 1 is positive")
}

/// ln(Iⁿ e^{−I} / n!) with 0⁰ = 1.
pub(crate) fn ln_erlang(n: u64, intensity: f64, ln_fact: f64) -> f64 {
    if n == 0 {
        -intensity
    } else {
        n as f64 * intensity.ln() - intensity - ln_fact
    }
}

pub(crate) fn ln_marginal(nbar: f64, intensity: f64) -> f64 {
    -nbar.ln_1p() - intensity / (1.0 + nbar)
}
