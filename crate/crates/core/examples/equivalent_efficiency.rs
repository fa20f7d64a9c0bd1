//! The photon-counting efficiency that carries as much information as an
//! ideal dual-homodyne receiver.
//!
//!     cargo run --release --example equivalent_efficiency

use photoinfo::info::{equivalent_efficiency_detailed, Base, NumericsConfig, ThermalAlphabet};

fn main() -> photoinfo::Result<()> {
    let cfg = NumericsConfig::default();
    println!("{:>8}  {:>10}  {:>14}  {:>5}", "nbar", "eta*^2", "homodyne bits", "iters");
    for nbar in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let r = equivalent_efficiency_detailed(&ThermalAlphabet::new(nbar)?, &cfg, Base::Bits)?;
        println!(
            "{nbar:>8}  {:>10.6}  {:>14.6}  {:>5}",
            r.efficiency.eta_sq(),
            r.target.value(),
            r.bracket.iterations
        );
    }
    Ok(())
}
