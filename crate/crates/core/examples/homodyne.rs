//! Dual-homodyne detection of a thermal alphabet: closed form against quadrature.
//!
//!     cargo run --example homodyne

use photoinfo::info::{
    homodyne_conditional_intensity_pdf, homodyne_marginal_intensity_pdf, ideal_capacity,
    mutual_info_homodyne_closed, mutual_info_homodyne_quadrature, Base, IntensitySample, NumericsConfig,
    ThermalAlphabet,
};

fn main() -> photoinfo::Result<()> {
    let cfg = NumericsConfig::default();

    let alphabet = ThermalAlphabet::new(1.0)?;
    let i = IntensitySample::from_quadratures(1.0, 0.5);
    println!("p(I = {}) = {:.6}", i.value(), homodyne_marginal_intensity_pdf(&alphabet, i));
    for n in 0..3 {
        println!("p(I | n = {n}) = {:.6}", homodyne_conditional_intensity_pdf(n, i));
    }

    println!("\n{:>6}  {:>12}  {:>12}  {:>10}  {:>12}", "nbar", "closed", "quadrature", "rel diff", "capacity");
    for nbar in [0.1, 1.0, 5.0, 10.0] {
        let alphabet = ThermalAlphabet::new(nbar)?;
        let closed = mutual_info_homodyne_closed(&alphabet, &cfg, Base::Bits)?.value();
        let quad = mutual_info_homodyne_quadrature(&alphabet, &cfg, Base::Bits)?.value();
        let cap = ideal_capacity(&alphabet, Base::Bits).value();
        println!("{nbar:>6}  {closed:>12.8}  {quad:>12.8}  {:>10.1e}  {cap:>12.6}", ((closed - quad) / closed).abs());
    }
    Ok(())
}
