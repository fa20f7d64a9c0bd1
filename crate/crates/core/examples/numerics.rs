//! The numerical building blocks on their own.
//!
//!     cargo run --example numerics

use photoinfo::numerics::{
    adaptive_quadrature, find_root_bracketed, log_binomial, log_gamma, log_sum_exp, sum_series_with_tail_bound,
};

fn main() -> photoinfo::Result<()> {
    println!("ln Γ(0.5)      = {:.15}", log_gamma(0.5)?);
    println!("ln C(1000, 500) = {:.10}", log_binomial(1000, 500)?);
    println!("log-sum-exp    = {:.10}", log_sum_exp([-1000.0, -1000.0]));

    // Σ 2^-n ln n with a geometric tail bound.
    let s = sum_series_with_tail_bound(
        |n| if n < 2 { 0.0 } else { 0.5f64.powi(n as i32) * (n as f64).ln() },
        |n| {
            let big_n = n.max(1) as f64;
            0.5f64.powi(n as i32) * 2.0 * (big_n.ln() + 1.0 / big_n)
        },
        1e-14,
        10_000,
    )?;
    println!("Σ 2^-n ln n    = {:.15} ({} terms)", s.value, s.terms);

    let q = adaptive_quadrature(|x: f64| (-x * x).exp(), 0.0, 6.0, 1e-12)?;
    println!("∫ exp(-x²)     = {:.15} ± {:.1e}", q.value, q.error_estimate);

    let r = find_root_bracketed(|x: f64| x.cos() - x, 0.0, 1.0, 1e-12)?;
    println!("cos x = x at   {:.12} after {} iterations", r.root, r.iterations);
    Ok(())
}
