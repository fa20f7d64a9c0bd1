use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss rule at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tuning knobs for [`adaptive_quadrature_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    /// Absolute floor on the accepted error; useful when the integral is zero.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadOptions {
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            max_subdivisions: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let resabs = abs_sum * half.abs();
    let roundoff = 50.0 * f64::EPSILON * resabs;
    let error = ((kronrod - gauss) * half).abs().max(roundoff);
    Segment { a, b, value, error }
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of `f` over
/// `[lower, upper]` to relative tolerance `rel_tol`.
///
/// The interval with the largest embedded error estimate `|K15 − G7|` is
/// bisected until the summed estimate is within tolerance.
pub fn adaptive_quadrature<F>(f: F, lower: f64, upper: f64, rel_tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    adaptive_quadrature_with(f, lower, upper, QuadOptions::relative(rel_tol))
}

pub fn adaptive_quadrature_with<F>(f: F, lower: f64, upper: f64, opts: QuadOptions) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    adaptive_quadrature_breaks(f, &[lower, upper], opts)
}

/// Like [`adaptive_quadrature_with`], but starts from the panels delimited by
/// `breaks` (ascending or descending). Error control applies to the total, so
/// a panel whose own integral is close to zero does not stall refinement.
pub fn adaptive_quadrature_breaks<F>(f: F, breaks: &[f64], opts: QuadOptions) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if !(opts.rel_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rel_tol",
            value: opts.rel_tol,
            reason: "quadrature tolerance must be positive",
        });
    }
    if let Some(bad) = breaks.iter().find(|b| !b.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: *bad,
            reason: "quadrature needs finite limits",
        });
    }
    if breaks.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "breaks",
            value: breaks.len() as f64,
            reason: "at least two breakpoints are required",
        });
    }

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let seg = gauss_kronrod(&f, w[0], w[1]);
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }
    if heap.is_empty() {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            intervals: 0,
        });
    }
    let max_segments = opts.max_subdivisions.max(heap.len());
    let accepted = |value: f64, err: f64| err <= (opts.rel_tol * value.abs()).max(opts.abs_tol);

    while !accepted(total, total_err) {
        if heap.len() >= max_segments {
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_estimate: total_err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_estimate: total_err,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from scratch: the running totals accumulate cancellation error.
    let value = heap.iter().map(|s| s.value).sum();
    let error_estimate = heap.iter().map(|s| s.error).sum();
    Ok(Quadrature {
        value,
        error_estimate,
        intervals: heap.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln_fact(n: u32) -> f64 {
        (1..=n).map(|k| (k as f64).ln()).sum()
    }

    #[test]
    fn unit_exponential() {
        let upper = 60.0;
        let q = adaptive_quadrature(|x| (-x).exp(), 0.0, upper, 1e-10).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn erlang_normalization_and_mean() {
        let density = |x: f64| if x == 0.0 { 0.0 } else { (4.0 * x.ln() - x - ln_fact(4)).exp() };
        let norm = adaptive_quadrature(density, 0.0, 80.0, 1e-10).unwrap();
        assert!((norm.value - 1.0).abs() < 1e-10);
        let mean = adaptive_quadrature(|x| x * density(x), 0.0, 80.0, 1e-10).unwrap();
        assert!((mean.value - 5.0).abs() < 5e-10);
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        // Both G7 (degree 13) and K15 are exact here, so the first panel is accepted.
        let q = adaptive_quadrature(|x: f64| 13.0 * x.powi(12), 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(q.intervals, 1);
        assert!((q.value - 1.0).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let q = adaptive_quadrature(|x| x, 1.0, 0.0, 1e-12).unwrap();
        assert!((q.value + 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_integral_with_absolute_floor() {
        let opts = QuadOptions {
            abs_tol: 1e-12,
            ..QuadOptions::relative(1e-10)
        };
        let q = adaptive_quadrature_with(|x: f64| x.sin(), -1.0, 1.0, opts).unwrap();
        assert!(q.value.abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        let opts = QuadOptions {
            max_subdivisions: 4,
            ..QuadOptions::relative(1e-14)
        };
        let err = adaptive_quadrature_with(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, opts).unwrap_err();
        match err {
            Error::QuadratureNonConvergence { error_estimate, .. } => assert!(error_estimate > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
