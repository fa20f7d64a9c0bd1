//! Invariant checks shared by the `invariants` and `acceptance` test targets.
//! Each check returns `Err` with a description of the first violation.
#![allow(dead_code)]

use photoinfo::info::*;
use photoinfo::mc::{mc_mutual_info_direct, mc_mutual_info_homodyne, sample_thermal, thin_binomial, McConfig};
use photoinfo::numerics::{adaptive_quadrature, NeumaierSum};

pub type Check = Result<(), String>;

pub fn alphabet(nbar: f64) -> ThermalAlphabet {
    ThermalAlphabet::new(nbar).unwrap()
}

pub fn eff(e: f64) -> DetectorEfficiency {
    DetectorEfficiency::new(e).unwrap()
}

pub fn cfg() -> NumericsConfig {
    NumericsConfig::default()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Pinned seed for Monte Carlo acceptance runs.
pub const ACCEPTANCE_SEED: u64 = 20_020_101;

/// Σ P_n over the truncated range ≥ 1 − tol.
pub fn normalization() -> Check {
    let c = cfg();
    for nbar in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let a = alphabet(nbar);
        let n = thermal_truncation(&a, c.series_tail_tol, c.max_terms).map_err(|e| e.to_string())?;
        let mass: NeumaierSum = (0..n as u64).map(|k| thermal_pmf(&a, k)).collect();
        ensure!(mass.value() >= 1.0 - c.series_tail_tol, "n̄ = {nbar}: truncated mass {}", mass.value());
    }
    Ok(())
}

pub fn kernel_stochasticity() -> Check {
    for e in [0.0, 0.25, 0.5, 0.9, 1.0] {
        for n in 0..=200u64 {
            let row: NeumaierSum = (0..=n).map(|m| binomial_loss_kernel(n, m, eff(e)).unwrap()).collect();
            ensure!((row.value() - 1.0).abs() <= 1e-12, "n = {n}, η² = {e}: row sum {}", row.value());
        }
    }
    Ok(())
}

pub fn thinning_identity() -> Check {
    for nbar in [0.1, 1.0, 7.5, 40.0] {
        for e in [0.0, 0.3, 0.5, 0.99, 1.0] {
            let thinned = alphabet(e * nbar);
            for m in 0..60 {
                let lhs = detected_pmf(&alphabet(nbar), eff(e), m);
                let rhs = thermal_pmf(&thinned, m);
                ensure!((lhs - rhs).abs() <= 1e-12, "({nbar}, {e}, {m}): {lhs} vs {rhs}");
            }
        }
    }
    Ok(())
}

pub fn marginal_consistency() -> Check {
    let c = cfg();
    for nbar in [0.1, 1.0, 5.0] {
        for i in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let i = IntensitySample::new(i).unwrap();
            let summed = homodyne_marginal_from_sum(&alphabet(nbar), i, &c).map_err(|e| e.to_string())?;
            let closed = homodyne_marginal_intensity_pdf(&alphabet(nbar), i);
            ensure!(
                (summed - closed).abs() <= c.series_tail_tol,
                "n̄ = {nbar}, I = {}: {summed} vs {closed}",
                i.value()
            );
        }
    }
    Ok(())
}

pub fn conditional_normalization() -> Check {
    let tol = cfg().quad_rel_tol;
    for n in [0u64, 1, 5, 20] {
        let upper = (n + 1) as f64 + 12.0 * ((n + 1) as f64).sqrt() + 50.0;
        let pdf = |i: f64| homodyne_conditional_intensity_pdf(n, IntensitySample::new(i).unwrap());
        let norm = adaptive_quadrature(pdf, 0.0, upper, tol * 0.1).map_err(|e| e.to_string())?;
        ensure!((norm.value - 1.0).abs() <= tol, "n = {n}: normalization {}", norm.value);
        let mean = adaptive_quadrature(|i| i * pdf(i), 0.0, upper, tol * 0.1).map_err(|e| e.to_string())?;
        let want = (n + 1) as f64;
        ensure!(((mean.value - want) / want).abs() <= tol, "n = {n}: mean {}", mean.value);
    }
    // The joint quadrature density integrates to one over the plane.
    let n = 3;
    let radial = |r: f64| 2.0 * std::f64::consts::PI * r * homodyne_xp_conditional_pdf(n, r, 0.0);
    let plane = adaptive_quadrature(radial, 0.0, 20.0, tol * 0.1).map_err(|e| e.to_string())?;
    ensure!((plane.value - 1.0).abs() <= tol, "∫∫ P(X, P | 3) = {}", plane.value);
    Ok(())
}

pub fn endpoint_identities() -> Check {
    let c = cfg();
    for nbar in [0.0, 0.1, 1.0, 5.0, 20.0] {
        let a = alphabet(nbar);
        let full = mutual_info_direct(&a, eff(1.0), &c, Base::Nats).map_err(|e| e.to_string())?;
        let cap = ideal_capacity(&a, Base::Nats);
        ensure!(
            (full.value() - cap.value()).abs() <= 10.0 * c.series_tail_tol,
            "n̄ = {nbar}: I(η²=1) = {} vs capacity {}",
            full.value(),
            cap.value()
        );
        let none = mutual_info_direct(&a, eff(0.0), &c, Base::Nats).map_err(|e| e.to_string())?;
        ensure!(none.value().abs() <= 10.0 * c.series_tail_tol, "n̄ = {nbar}: I(η²=0) = {}", none.value());
    }
    Ok(())
}

pub fn monotonicity() -> Check {
    let c = cfg();
    let direct = |nbar: f64, e: f64| {
        mutual_info_direct(&alphabet(nbar), eff(e), &c, Base::Nats)
            .map(|v| v.value())
            .map_err(|e| e.to_string())
    };
    for nbar in [0.1, 1.0, 5.0] {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..50 {
            let e = k as f64 / 49.0;
            let v = direct(nbar, e)?;
            ensure!(v >= prev, "n̄ = {nbar}: I drops at η² = {e} ({prev} → {v})");
            prev = v;
        }
    }
    let nbars = [0.0, 0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0];
    for e in [0.25, 0.5, 0.9] {
        let mut prev = f64::NEG_INFINITY;
        for nbar in nbars {
            let v = direct(nbar, e)?;
            ensure!(v >= prev, "η² = {e}: I drops at n̄ = {nbar}");
            prev = v;
        }
    }
    let mut prev = f64::NEG_INFINITY;
    for nbar in nbars {
        let v = mutual_info_homodyne_closed(&alphabet(nbar), &c, Base::Nats)
            .map_err(|e| e.to_string())?
            .value();
        ensure!(v >= prev, "homodyne I drops at n̄ = {nbar}");
        prev = v;
    }
    Ok(())
}

pub fn ordering() -> Check {
    let c = cfg();
    for nbar in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0] {
        let a = alphabet(nbar);
        let hd = mutual_info_homodyne_closed(&a, &c, Base::Nats).map_err(|e| e.to_string())?.value();
        let cap = ideal_capacity(&a, Base::Nats).value();
        ensure!(hd >= 0.0 && hd <= cap, "n̄ = {nbar}: homodyne {hd}, capacity {cap}");
    }
    Ok(())
}

pub fn closed_vs_quadrature(rel_tol: f64) -> Check {
    let c = cfg();
    for nbar in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let a = alphabet(nbar);
        let closed = mutual_info_homodyne_closed(&a, &c, Base::Nats).map_err(|e| e.to_string())?.value();
        let quad = mutual_info_homodyne_quadrature(&a, &c, Base::Nats).map_err(|e| e.to_string())?.value();
        let rel = ((closed - quad) / closed).abs();
        ensure!(rel < rel_tol, "n̄ = {nbar}: closed {closed}, quadrature {quad}, rel {rel:e}");
    }
    Ok(())
}

pub fn two_path_direct() -> Check {
    let c = cfg();
    for nbar in [0.01, 0.1, 1.0, 5.0, 20.0, 100.0] {
        for e in [0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0] {
            let a = alphabet(nbar);
            let joint = mutual_info_direct_joint(&a, eff(e), &c).map_err(|e| e.to_string())?;
            let literal = mutual_info_direct_closed_terms(&a, eff(e), &c).map_err(|e| e.to_string())?;
            ensure!(
                (joint - literal).abs() <= 10.0 * c.series_tail_tol,
                "({nbar}, {e}): joint {joint} vs closed terms {literal}"
            );
        }
    }
    Ok(())
}

pub fn base_conversion() -> Check {
    let c = cfg();
    let close = |bits: f64, nats: f64| (bits * std::f64::consts::LN_2 - nats).abs() <= 4.0 * f64::EPSILON * nats.abs();
    for nbar in [0.0, 0.3, 1.0, 4.0] {
        let a = alphabet(nbar);
        let pairs = [
            (ideal_capacity(&a, Base::Bits), ideal_capacity(&a, Base::Nats)),
            (
                mutual_info_direct(&a, eff(0.6), &c, Base::Bits).unwrap(),
                mutual_info_direct(&a, eff(0.6), &c, Base::Nats).unwrap(),
            ),
            (
                mutual_info_homodyne_closed(&a, &c, Base::Bits).unwrap(),
                mutual_info_homodyne_closed(&a, &c, Base::Nats).unwrap(),
            ),
            (
                mutual_info_homodyne_quadrature(&a, &c, Base::Bits).unwrap(),
                mutual_info_homodyne_quadrature(&a, &c, Base::Nats).unwrap(),
            ),
        ];
        for (bits, nats) in pairs {
            ensure!(close(bits.value(), nats.value()), "n̄ = {nbar}: {bits} vs {nats}");
        }
    }
    Ok(())
}

/// η*² ∈ (0, 0.5) and nondecreasing along the given n̄ grid.
pub fn equivalent_efficiency_ceiling(nbars: &[f64]) -> Check {
    let c = cfg();
    let mut prev = 0.0;
    for &nbar in nbars {
        let v = equivalent_efficiency(&alphabet(nbar), &c).map_err(|e| e.to_string())?.eta_sq();
        ensure!(v > 0.0 && v < 0.5, "n̄ = {nbar}: η*² = {v}");
        ensure!(v >= prev, "η*² decreases at n̄ = {nbar}: {prev} → {v}");
        prev = v;
    }
    Ok(())
}

pub fn log_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    let (a, b) = (start.log10(), stop.log10());
    (0..points)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (points - 1) as f64))
        .collect()
}

pub fn mc_determinism() -> Check {
    let mc = McConfig::new(7, 200_000).unwrap();
    let a = mc_mutual_info_direct(&alphabet(1.0), eff(0.5), &mc).unwrap();
    let b = mc_mutual_info_direct(&alphabet(1.0), eff(0.5), &mc).unwrap();
    ensure!(a == b, "direct estimates differ: {a:?} vs {b:?}");
    let a = mc_mutual_info_homodyne(&alphabet(2.0), &mc).unwrap();
    let b = mc_mutual_info_homodyne(&alphabet(2.0), &mc).unwrap();
    ensure!(a == b, "homodyne estimates differ: {a:?} vs {b:?}");
    Ok(())
}

/// 99.9% quantile of χ² with 11 degrees of freedom.
const CHI2_999_DF11: f64 = 31.264_133_620_239_985;

/// Histogram of thinned thermal draws at (n̄ = 1, η² = 0.5) against the
/// detected law; bins m = 0..=10 and a pooled tail m ≥ 11.
pub fn thinning_chi_square(seed: u64) -> Check {
    let samples = 1_000_000u64;
    let a = alphabet(1.0);
    let e = eff(0.5);
    let mut rng = McConfig::new(seed, samples).unwrap().block_rng(0);
    let mut counts = [0u64; 12];
    for _ in 0..samples {
        let m = thin_binomial(sample_thermal(&a, &mut rng), e, &mut rng);
        counts[(m as usize).min(11)] += 1;
    }
    let mut chi2 = 0.0;
    let mut head = 0.0;
    for (m, &observed) in counts.iter().enumerate() {
        let p = if m < 11 {
            let p = detected_pmf(&a, e, m as u64);
            head += p;
            p
        } else {
            1.0 - head
        };
        let expected = p * samples as f64;
        chi2 += (observed as f64 - expected).powi(2) / expected;
    }
    ensure!(chi2 < CHI2_999_DF11, "χ² = {chi2} exceeds {CHI2_999_DF11}");
    Ok(())
}

/// One Monte Carlo oracle cell: returns the z-score of the estimate.
pub fn mc_direct_z(nbar: f64, e: f64, seed: u64, samples: u64) -> Result<f64, String> {
    let mc = McConfig::new(seed, samples).map_err(|e| e.to_string())?;
    let est = mc_mutual_info_direct(&alphabet(nbar), eff(e), &mc).map_err(|e| e.to_string())?;
    let exact = mutual_info_direct(&alphabet(nbar), eff(e), &cfg(), Base::Nats).map_err(|e| e.to_string())?;
    Ok(est.z_score(exact.nats()))
}

pub fn mc_homodyne_z(nbar: f64, seed: u64, samples: u64) -> Result<f64, String> {
    let mc = McConfig::new(seed, samples).map_err(|e| e.to_string())?;
    let est = mc_mutual_info_homodyne(&alphabet(nbar), &mc).map_err(|e| e.to_string())?;
    let exact = mutual_info_homodyne_closed(&alphabet(nbar), &cfg(), Base::Nats).map_err(|e| e.to_string())?;
    Ok(est.z_score(exact.nats()))
}

pub const MC_NBARS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
pub const MC_ETAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
