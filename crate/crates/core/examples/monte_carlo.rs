//! Seeded Monte Carlo estimates of both detection chains against the analytic values.
//!
//!     cargo run --release --example monte_carlo -- 42

use photoinfo::info::{mutual_info_direct, mutual_info_homodyne_closed, Base, DetectorEfficiency, NumericsConfig, ThermalAlphabet};
use photoinfo::mc::{mc_mutual_info_direct, mc_mutual_info_homodyne, McConfig};

fn main() -> photoinfo::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let mc = McConfig::new(seed, 1_000_000)?;
    let cfg = NumericsConfig::default();
    println!("seed {seed}, {} samples per estimate (nats)", mc.samples);

    for nbar in [0.5, 1.0, 2.0] {
        let alphabet = ThermalAlphabet::new(nbar)?;
        let eff = DetectorEfficiency::new(0.5)?;
        let est = mc_mutual_info_direct(&alphabet, eff, &mc)?;
        let exact = mutual_info_direct(&alphabet, eff, &cfg, Base::Nats)?.value();
        println!(
            "direct   nbar={nbar:<4} eta2=0.5  {:.5} ± {:.5}  exact {exact:.5}  z = {:+.2}",
            est.mean,
            est.std_error,
            est.z_score(exact)
        );

        let est = mc_mutual_info_homodyne(&alphabet, &mc)?;
        let exact = mutual_info_homodyne_closed(&alphabet, &cfg, Base::Nats)?.value();
        println!(
            "homodyne nbar={nbar:<4}           {:.5} ± {:.5}  exact {exact:.5}  z = {:+.2}",
            est.mean,
            est.std_error,
            est.z_score(exact)
        );
    }
    Ok(())
}
