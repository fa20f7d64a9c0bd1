//! Numeric kernels shared by the information-theoretic code.
//!
//! Everything here is a pure function. Probabilities that can underflow are
//! carried as logarithms and only exponentiated at the API surface.

mod gamma;
mod logsum;
mod quadrature;
mod root;
mod series;

pub use gamma::{ln_factorial_table, log_binomial, log_gamma};
pub use logsum::{log_sum_exp, NeumaierSum};
pub use quadrature::{adaptive_quadrature, adaptive_quadrature_breaks, adaptive_quadrature_with, QuadOptions, Quadrature};
pub use root::{find_root_bracketed, BracketResult};
pub use series::{sum_series_with_tail_bound, SeriesSum};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// ln(√(2π)).
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;
