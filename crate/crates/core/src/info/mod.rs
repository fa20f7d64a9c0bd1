//! Probability laws and mutual-information functionals of the two receivers.
//!
//! A sender draws photon-number states from a thermal ensemble with mean
//! `n̄`. The receiver either
//!
//! - counts photons behind a beam splitter of transmission `η²`
//!   ([`mutual_info_direct`]), or
//! - measures both quadratures with an ideal dual-homodyne detector and keeps
//!   the intensity `I = X² + P²` ([`mutual_info_homodyne_closed`]).
//!
//! [`equivalent_efficiency`] finds the `η²` at which the two agree.
//!
//! All internal arithmetic is in nats; [`InfoValue`] carries the unit.

mod direct;
mod equivalent;
mod homodyne;
mod thermal;
mod types;

pub use direct::{
    binomial_loss_kernel, detected_pmf, mutual_info_direct, mutual_info_direct_closed_terms,
    mutual_info_direct_joint,
};
pub use equivalent::{equivalent_efficiency, equivalent_efficiency_detailed, EquivalentEfficiency};
pub use homodyne::{
    homodyne_conditional_intensity_pdf, homodyne_marginal_from_sum, homodyne_marginal_intensity_pdf,
    homodyne_xp_conditional_pdf, mutual_info_homodyne_closed, mutual_info_homodyne_quadrature,
};
pub use thermal::{ideal_capacity, thermal_pmf, thermal_truncation};
pub(crate) mod thermal_internals {
    pub(crate) use super::homodyne::{ln_erlang, ln_marginal};
    pub(crate) use super::thermal::ln_thermal_pmf;
}

pub use types::{Base, DetectorEfficiency, InfoValue, IntensitySample, NumericsConfig, ThermalAlphabet};
