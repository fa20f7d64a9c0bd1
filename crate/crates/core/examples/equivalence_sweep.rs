//! Equivalent efficiency over a log grid of mean photon numbers, as JSON lines.
//! Pass a point count to override the default of 81.
//!
//!     cargo run --release --example equivalence_sweep -- 21

use photoinfo::cli::{render, run_sweep, Format, Preset, SweepSpec};
use photoinfo::info::{Base, NumericsConfig};

fn main() -> photoinfo::Result<()> {
    let mut spec = SweepSpec::preset(Preset::Fig4);
    if let Some(points) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        spec.points = points;
    }
    let rows = run_sweep(&spec, &NumericsConfig::default())?;
    print!("{}", render(&rows, Format::JsonLines, Base::Bits));
    Ok(())
}
