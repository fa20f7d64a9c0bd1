use crate::error::{Error, Result};

use super::{Base, InfoValue, ThermalAlphabet};

/// P_n = (1 / (1 + n̄)) (n̄ / (1 + n̄))ⁿ, evaluated in log space.
pub fn thermal_pmf(alphabet: &ThermalAlphabet, n: u64) -> f64 {
    ln_thermal_pmf(alphabet, n).exp()
}

pub(crate) fn ln_thermal_pmf(alphabet: &ThermalAlphabet, n: u64) -> f64 {
    let lead = -alphabet.nbar().ln_1p();
    if n == 0 {
        lead
    } else {
        lead + n as f64 * alphabet.ln_ratio()
    }
}

/// Smallest `N` whose thermal tail mass `Σ_{n ≥ N} P_n = q^N` is below `tol`.
///
/// Sums over photon number run over `0..N`.
pub fn thermal_truncation(alphabet: &ThermalAlphabet, tol: f64, max_terms: usize) -> Result<usize> {
    let ln_q = alphabet.ln_ratio();
    if ln_q == f64::NEG_INFINITY {
        return Ok(1);
    }
    let ln_tol = tol.ln();
    let mut n = (ln_tol / ln_q).floor().max(0.0);
    // Guard the floor against rounding in the division.
    while n * ln_q >= ln_tol {
        n += 1.0;
    }
    while n >= 1.0 && (n - 1.0) * ln_q < ln_tol {
        n -= 1.0;
    }
    if n > max_terms as f64 {
        return Err(Error::SeriesNonConvergence {
            terms: max_terms,
            tail_bound: (max_terms as f64 * ln_q).exp(),
            tol,
        });
    }
    Ok(n as usize)
}

/// Capacity of the lossless photon-counting channel,
/// (1 + n̄) ln(1 + n̄) − n̄ ln n̄, with 0 at n̄ = 0.
pub fn ideal_capacity(alphabet: &ThermalAlphabet, base: Base) -> InfoValue {
    InfoValue::from_nats(ideal_capacity_nats(alphabet.nbar()), base)
}

pub(crate) fn ideal_capacity_nats(nbar: f64) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    let l1p = nbar.ln_1p();
    l1p + nbar * (l1p - nbar.ln())
}
