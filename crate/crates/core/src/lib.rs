//! Classical mutual information of a single-mode thermal bosonic channel read
//! out either by a lossy photon counter or by an ideal dual-homodyne receiver,
//! and the *equivalent efficiency* that makes the two equal.
//!
//! The crate is organised in four layers:
//!
//! - [`numerics`]: log-gamma, log-sum-exp, tail-bounded series, adaptive
//!   Gauss–Kronrod quadrature and a bracketing root finder.
//! - [`info`]: the probability laws of both detection chains and their
//!   mutual-information functionals, plus [`info::equivalent_efficiency`].
//! - [`mc`]: a seeded Monte Carlo simulator of both chains, used as an
//!   independent oracle for [`info`].
//! - [`cli`]: the `photoinfo` command-line front end.
//!
//! ```
//! use photoinfo::info::{equivalent_efficiency, NumericsConfig, ThermalAlphabet};
//!
//! let alphabet = ThermalAlphabet::new(1.0).unwrap();
//! let eff = equivalent_efficiency(&alphabet, &NumericsConfig::default()).unwrap();
//! assert!((eff.eta_sq() - 0.327).abs() < 0.005);
//! ```

pub mod cli;
pub mod error;
pub mod info;
pub mod mc;
pub mod numerics;

pub use error::{Error, Result};
