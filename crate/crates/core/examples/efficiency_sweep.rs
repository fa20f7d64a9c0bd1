//! Direct-detection information against efficiency at nbar = 1, written as CSV.
//!
//!     cargo run --example efficiency_sweep > fig2.csv

use photoinfo::cli::{render, run_sweep, Format, Preset, SweepSpec};
use photoinfo::info::{Base, NumericsConfig};

fn main() -> photoinfo::Result<()> {
    let rows = run_sweep(&SweepSpec::preset(Preset::Fig2), &NumericsConfig::default())?;
    print!("{}", render(&rows, Format::Csv, Base::Bits));
    Ok(())
}
