//! Seeded Monte Carlo simulation of both detection chains.
//!
//! This module exists to check [`crate::info`] from an independent angle: the
//! photon number is *sampled* from the thermal law, pushed through the loss
//! or homodyne channel by sampling, and the mutual information is estimated
//! as the sample average of the analytic log-likelihood ratio
//! `ln(P(b | a) / P(b))`. That estimator is unbiased and needs no binning.
//!
//! Randomness comes from ChaCha8. A run of `samples` draws is cut into fixed
//! blocks of [`BLOCK`] samples, block `k` using ChaCha stream `k` of the run
//! seed; blocks are evaluated in parallel and merged in block order, so the
//! estimate is bit-identical for a given seed whatever the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::info::{DetectorEfficiency, IntensitySample, ThermalAlphabet};
use crate::numerics::log_binomial;

use crate::info::thermal_internals::{ln_erlang, ln_marginal, ln_thermal_pmf};

/// Samples per independently seeded block.
pub const BLOCK: u64 = 1 << 16;

/// Largest Erlang shape drawn as an explicit sum of exponentials.
const ERLANG_SUM_MAX_SHAPE: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub samples: u64,
}

impl McConfig {
    pub fn new(seed: u64, samples: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParameter {
                name: "samples",
                value: 0.0,
                reason: "at least one sample is required",
            });
        }
        Ok(Self { seed, samples })
    }

    /// Generator for block `index` of this run.
    pub fn block_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Sample mean (nats) with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl McEstimate {
    /// (estimate − reference) / std_error; infinite if the estimate has no
    /// spread but misses the reference, zero if it hits it exactly.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Welford running moments, mergeable with Chan's update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / n;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.count as f64 * w;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn estimate(&self) -> McEstimate {
        McEstimate {
            mean: self.mean,
            std_error: (self.variance() / self.count as f64).sqrt(),
            samples: self.count,
        }
    }
}

/// Draws a photon number from the thermal law by inverting its CDF,
/// `P(N ≥ k) = qᵏ`, with one uniform draw.
pub fn sample_thermal<R: Rng + ?Sized>(alphabet: &ThermalAlphabet, rng: &mut R) -> u64 {
    if alphabet.nbar() == 0.0 {
        return 0;
    }
    // 1 − U lies in (0, 1], so the logarithm is finite.
    let u = 1.0 - rng.random::<f64>();
    (u.ln() / alphabet.ln_ratio()).floor() as u64
}

/// Keeps each of `n` photons independently with probability η².
pub fn thin_binomial<R: Rng + ?Sized>(n: u64, eff: DetectorEfficiency, rng: &mut R) -> u64 {
    let e = eff.eta_sq();
    if n == 0 || e == 0.0 {
        return 0;
    }
    if e == 1.0 {
        return n;
    }
    Binomial::new(n, e).expect("efficiency validated to [0, 1]").sample(rng)
}

/// Draws the dual-homodyne intensity given `n` photons: Erlang with shape
/// `n + 1`, unit scale. Shapes up to 64 are summed from exact unit
/// exponentials; larger shapes use gamma rejection sampling.
pub fn sample_intensity_given_n<R: Rng + ?Sized>(n: u64, rng: &mut R) -> IntensitySample {
    let shape = n + 1;
    let intensity = if shape <= ERLANG_SUM_MAX_SHAPE {
        (0..shape).map(|_| -(1.0 - rng.random::<f64>()).ln()).sum::<f64>()
    } else {
        Gamma::new(shape as f64, 1.0).expect("positive shape").sample(rng)
    };
    IntensitySample::new(intensity).expect("exponential draws are non-negative")
}

/// Estimates the direct-detection mutual information by sampling
/// `(n, m)` and averaging `ln(P(m | n) / P(m))`.
pub fn mc_mutual_info_direct(
    alphabet: &ThermalAlphabet,
    eff: DetectorEfficiency,
    mc: &McConfig,
) -> Result<McEstimate> {
    let detected = alphabet.thinned(eff);
    let ln_q_detected = detected.ln_ratio();
    let ln_kept = eff.eta_sq().ln();
    let ln_lost = (-eff.eta_sq()).ln_1p();
    run_blocks(mc, |rng| {
        let n = sample_thermal(alphabet, rng);
        let m = thin_binomial(n, eff, rng);
        let kept = if m == 0 { 0.0 } else { m as f64 * ln_kept };
        let lost = if m == n { 0.0 } else { (n - m) as f64 * ln_lost };
        let ln_kernel = log_binomial(n, m).expect("m <= n") + kept + lost;
        let ln_detected = if m == 0 {
            ln_thermal_pmf(&detected, 0)
        } else {
            ln_thermal_pmf(&detected, 0) + m as f64 * ln_q_detected
        };
        ln_kernel - ln_detected
    })
}

/// Estimates the dual-homodyne mutual information by sampling `(n, I)` and
/// averaging `ln(P(I | n) / P(I))`.
pub fn mc_mutual_info_homodyne(alphabet: &ThermalAlphabet, mc: &McConfig) -> Result<McEstimate> {
    let nbar = alphabet.nbar();
    run_blocks(mc, |rng| {
        let n = sample_thermal(alphabet, rng);
        let i = sample_intensity_given_n(n, rng).value();
        let ln_fact = crate::numerics::log_gamma(n as f64 + 1.0).expect("positive");
        ln_erlang(n, i, ln_fact) - ln_marginal(nbar, i)
    })
}

fn run_blocks<F>(mc: &McConfig, draw: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if mc.samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: 0.0,
            reason: "at least one sample is required",
        });
    }
    let blocks = mc.samples.div_ceil(BLOCK);
    let partials: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = mc.block_rng(b);
            let len = BLOCK.min(mc.samples - b * BLOCK);
            let mut m = Moments::default();
            for _ in 0..len {
                m.push(draw(&mut rng));
            }
            m
        })
        .collect();
    let mut total = Moments::default();
    for p in &partials {
        total.merge(p);
    }
    let est = total.estimate();
    if !est.mean.is_finite() {
        return Err(Error::Internal(format!("Monte Carlo estimate is not finite: {}", est.mean)));
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(nbar: f64) -> ThermalAlphabet {
        ThermalAlphabet::new(nbar).unwrap()
    }

    fn eff(e: f64) -> DetectorEfficiency {
        DetectorEfficiency::new(e).unwrap()
    }

    #[test]
    fn vacuum_always_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..1000).all(|_| sample_thermal(&alphabet(0.0), &mut rng) == 0));
    }

    #[test]
    fn thermal_sample_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let mut m = Moments::default();
        for _ in 0..n {
            m.push(sample_thermal(&alphabet(1.0), &mut rng) as f64);
        }
        let sigma = (1.0 * 2.0 / n as f64).sqrt();
        assert!((m.mean() - 1.0).abs() < 5.0 * sigma, "mean {}", m.mean());
    }

    #[test]
    fn same_seed_same_sequence() {
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        let xs: Vec<u64> = (0..100).map(|_| sample_thermal(&alphabet(3.0), &mut a)).collect();
        let ys: Vec<u64> = (0..100).map(|_| sample_thermal(&alphabet(3.0), &mut b)).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn thinning_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [0, 1, 17, 400] {
            assert_eq!(thin_binomial(n, eff(1.0), &mut rng), n);
            assert_eq!(thin_binomial(n, eff(0.0), &mut rng), 0);
        }
    }

    #[test]
    fn thinning_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 1_000_000;
        let mut m = Moments::default();
        for _ in 0..draws {
            m.push(thin_binomial(4, eff(0.5), &mut rng) as f64);
        }
        let sigma = (4.0 * 0.25 / draws as f64).sqrt();
        assert!((m.mean() - 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn intensity_means() {
        let draws = 1_000_000;
        for (n, seed) in [(0u64, 5u64), (4, 6), (99, 8)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut m = Moments::default();
            for _ in 0..draws {
                let i = sample_intensity_given_n(n, &mut rng).value();
                assert!(i >= 0.0);
                m.push(i);
            }
            // Erlang(n + 1): mean and variance are both n + 1.
            let shape = (n + 1) as f64;
            let sigma = (shape / draws as f64).sqrt();
            assert!((m.mean() - shape).abs() < 5.0 * sigma, "n = {n}: mean {}", m.mean());
        }
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|k| ((k * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut left = Moments::default();
        let mut right = Moments::default();
        xs[..313].iter().for_each(|&x| left.push(x));
        xs[313..].iter().for_each(|&x| right.push(x));
        left.merge(&right);
        assert_eq!(left.count(), whole.count());
        assert!((left.mean() - whole.mean()).abs() < 1e-12);
        assert!((left.variance() - whole.variance()).abs() < 1e-10);
    }

    #[test]
    fn zero_efficiency_is_exactly_zero() {
        let est = mc_mutual_info_direct(&alphabet(1.0), eff(0.0), &McConfig::new(1, 10_000).unwrap()).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn vacuum_homodyne_is_exactly_zero() {
        let est = mc_mutual_info_homodyne(&alphabet(0.0), &McConfig::new(1, 10_000).unwrap()).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn rejects_zero_samples() {
        assert!(McConfig::new(0, 0).is_err());
    }

    #[test]
    fn z_score_edge_cases() {
        let exact = McEstimate { mean: 0.0, std_error: 0.0, samples: 5 };
        assert_eq!(exact.z_score(0.0), 0.0);
        assert_eq!(exact.z_score(1.0), f64::NEG_INFINITY);
    }
}
