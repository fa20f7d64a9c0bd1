//! Photon counting with a lossy detector: the detected count law stays
//! thermal, and the mutual information drops steeply just below unit efficiency.
//!
//!     cargo run --example direct_detection

use photoinfo::info::{
    detected_pmf, mutual_info_direct, mutual_info_direct_closed_terms, mutual_info_direct_joint, thermal_pmf, Base,
    DetectorEfficiency, NumericsConfig, ThermalAlphabet,
};

fn main() -> photoinfo::Result<()> {
    let alphabet = ThermalAlphabet::new(1.0)?;
    let cfg = NumericsConfig::default();

    let eff = DetectorEfficiency::new(0.5)?;
    let thinned = alphabet.thinned(eff);
    println!("detected counts at eta2 = 0.5 follow a thermal law with mean {}", thinned.nbar());
    for m in 0..4 {
        println!("  P(m = {m}) = {:.6}  (thermal: {:.6})", detected_pmf(&alphabet, eff, m), thermal_pmf(&thinned, m));
    }

    println!("\n{:>6}  {:>10}  {:>12}", "eta2", "bits", "paths agree");
    for eta2 in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        let eff = DetectorEfficiency::new(eta2)?;
        let mi = mutual_info_direct(&alphabet, eff, &cfg, Base::Bits)?;
        let gap = (mutual_info_direct_joint(&alphabet, eff, &cfg)?
            - mutual_info_direct_closed_terms(&alphabet, eff, &cfg)?)
        .abs();
        println!("{eta2:>6}  {:>10.6}  {:>12.1e}", mi.value(), gap);
    }
    Ok(())
}
