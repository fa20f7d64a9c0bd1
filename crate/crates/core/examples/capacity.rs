//! Capacity of the lossless photon-counting channel for a few mean photon numbers.
//!
//!     cargo run --example capacity

use photoinfo::info::{ideal_capacity, Base, ThermalAlphabet};

fn main() -> photoinfo::Result<()> {
    println!("{:>8}  {:>12}  {:>12}", "nbar", "bits", "nats");
    for nbar in [0.1, 0.5, 1.0, 3.0, 10.0, 100.0] {
        let c = ideal_capacity(&ThermalAlphabet::new(nbar)?, Base::Bits);
        println!("{nbar:>8}  {:>12.6}  {:>12.6}", c.bits(), c.nats());
    }
    Ok(())
}
