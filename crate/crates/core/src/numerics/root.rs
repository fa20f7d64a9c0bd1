use crate::error::{Error, Result};

/// Slack of the ITP projection over plain bisection, in iterations.
const ITP_SLACK: u32 = 1;
const ITP_KAPPA2: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketResult {
    pub root: f64,
    /// Half-width of the final bracket; the true root lies within this distance.
    pub achieved_tol: f64,
    /// Function evaluations after the two endpoint evaluations.
    pub iterations: usize,
}

/// Finds a root of a continuous `f` in `[lo, hi]` to absolute tolerance `abs_tol`.
///
/// The update is the ITP scheme (interpolate, truncate, project): an
/// interpolated estimate, inverse-quadratic when three distinct function
/// values are known and regula falsi otherwise, is nudged toward the midpoint
/// and then projected into a shrinking window around it. The projection makes
/// the iteration count at most `⌈log₂((hi − lo) / (2·abs_tol))⌉ + 2`, i.e. never
/// worse than bisection by more than two steps, while smooth functions converge
/// superlinearly.
///
/// `f(lo)` and `f(hi)` must differ in sign, or one of them must be zero.
pub fn find_root_bracketed<F>(mut f: F, lo: f64, hi: f64, abs_tol: f64) -> Result<BracketResult>
where
    F: FnMut(f64) -> f64,
{
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "abs_tol",
            value: abs_tol,
            reason: "root tolerance must be positive",
        });
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter {
            name: "bracket",
            value: hi - lo,
            reason: "bracket must be finite with lo < hi",
        });
    }

    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Internal(format!(
            "root function returned NaN at bracket endpoint (f({lo}) = {f_lo}, f({hi}) = {f_hi})"
        )));
    }
    if f_lo == 0.0 {
        return Ok(BracketResult { root: lo, achieved_tol: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(BracketResult { root: hi, achieved_tol: 0.0, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotBracketed { lo, hi, f_lo, f_hi });
    }

    // Orient so that g(a) < 0 < g(b).
    let orient = if f_lo < 0.0 { 1.0 } else { -1.0 };
    let (mut a, mut b) = (lo, hi);
    let (mut ya, mut yb) = (orient * f_lo, orient * f_hi);
    let mut prev: Option<(f64, f64)> = None;

    // Project against a slightly tighter tolerance so that rounding in the
    // bracket arithmetic cannot leave the final width a few ulps above 2·abs_tol.
    let inner_tol = abs_tol * (1.0 - 1e-9) - 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
    if !(inner_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "abs_tol",
            value: abs_tol,
            reason: "root tolerance is below the floating-point resolution of the bracket",
        });
    }
    let n_half = ((hi - lo) / (2.0 * inner_tol)).log2().ceil().max(0.0) as i32;
    let n_max = n_half + ITP_SLACK as i32;
    let kappa1 = 0.2 / (hi - lo);
    let mut j = 0;

    while b - a > 2.0 * abs_tol {
        let mid = 0.5 * (a + b);
        let radius = (inner_tol * 2f64.powi(n_max - j) - 0.5 * (b - a)).max(0.0);
        let delta = kappa1 * (b - a).powf(ITP_KAPPA2);

        let x_interp = interpolate(a, ya, b, yb, prev);
        let sigma = (mid - x_interp).signum();
        let x_trunc = if delta <= (mid - x_interp).abs() {
            x_interp + sigma * delta
        } else {
            mid
        };
        let x = if (x_trunc - mid).abs() <= radius {
            x_trunc
        } else {
            mid - sigma * radius
        };

        let y = orient * f(x);
        j += 1;
        if y.is_nan() {
            return Err(Error::Internal(format!("root function returned NaN at {x}")));
        }
        if y > 0.0 {
            prev = Some((b, yb));
            b = x;
            yb = y;
        } else if y < 0.0 {
            prev = Some((a, ya));
            a = x;
            ya = y;
        } else {
            return Ok(BracketResult { root: x, achieved_tol: 0.0, iterations: j as usize });
        }
    }

    Ok(BracketResult {
        root: 0.5 * (a + b),
        achieved_tol: 0.5 * (b - a),
        iterations: j as usize,
    })
}

fn interpolate(a: f64, ya: f64, b: f64, yb: f64, prev: Option<(f64, f64)>) -> f64 {
    if let Some((c, yc)) = prev {
        if ya != yc && yb != yc {
            let x = a * yb * yc / ((ya - yb) * (ya - yc))
                + b * ya * yc / ((yb - ya) * (yb - yc))
                + c * ya * yb / ((yc - ya) * (yc - yb));
            if x > a && x < b {
                return x;
            }
        }
    }
    (yb * a - ya * b) / (yb - ya)
}
