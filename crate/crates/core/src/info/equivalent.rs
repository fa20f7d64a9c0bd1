use crate::error::{Error, Result};
use crate::numerics::{find_root_bracketed, BracketResult};

use super::{
    direct::mutual_info_direct_joint, ideal_capacity, mutual_info_homodyne_closed, Base, DetectorEfficiency,
    InfoValue, NumericsConfig, ThermalAlphabet,
};

/// Result of inverting the direct-detection mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentEfficiency {
    pub efficiency: DetectorEfficiency,
    /// The dual-homodyne mutual information that was matched.
    pub target: InfoValue,
    pub bracket: BracketResult,
}

/// The photon-counting efficiency η*² whose mutual information equals that
/// of ideal dual-homodyne detection at the same mean photon number.
///
/// η² ↦ I_direct(n̄, η²) rises continuously from 0 to the ideal capacity, and
/// the homodyne value lies strictly between, so the root in `[0, 1]` is
/// unique. Rejects n̄ = 0, where both sides vanish for every η².
pub fn equivalent_efficiency(alphabet: &ThermalAlphabet, cfg: &NumericsConfig) -> Result<DetectorEfficiency> {
    equivalent_efficiency_detailed(alphabet, cfg, Base::Nats).map(|r| r.efficiency)
}

/// [`equivalent_efficiency`] with the root-finder diagnostics, solving the
/// matching condition with both sides expressed in `base`.
pub fn equivalent_efficiency_detailed(
    alphabet: &ThermalAlphabet,
    cfg: &NumericsConfig,
    base: Base,
) -> Result<EquivalentEfficiency> {
    cfg.validate()?;
    if alphabet.nbar() == 0.0 {
        return Err(Error::Degenerate(
            "equivalent efficiency is undefined at nbar = 0 (both mutual informations vanish for every efficiency)",
        ));
    }
    let target = mutual_info_homodyne_closed(alphabet, cfg, base)?;
    let capacity = ideal_capacity(alphabet, base);
    if !(target.value() < capacity.value()) {
        return Err(Error::Internal(format!(
            "homodyne information {} does not lie below the capacity {}",
            target, capacity
        )));
    }

    let mut failure = None;
    let objective = |e: f64| {
        let eff = DetectorEfficiency::new(e.clamp(0.0, 1.0)).expect("clamped");
        match mutual_info_direct_joint(alphabet, eff, cfg) {
            Ok(nats) => InfoValue::from_nats(nats, base).value() - target.value(),
            Err(err) => {
                failure.get_or_insert(err);
                f64::NAN
            }
        }
    };
    let bracket = find_root_bracketed(objective, 0.0, 1.0, cfg.root_abs_tol);
    if let Some(err) = failure {
        return Err(err);
    }
    let bracket = bracket.map_err(|err| match err {
        Error::NotBracketed { f_lo, f_hi, .. } => Error::Internal(format!(
            "equivalent-efficiency objective not bracketed on [0, 1]: f(0) = {f_lo}, f(1) = {f_hi}"
        )),
        other => other,
    })?;
    Ok(EquivalentEfficiency {
        efficiency: DetectorEfficiency::new(bracket.root)?,
        target,
        bracket,
    })
}
