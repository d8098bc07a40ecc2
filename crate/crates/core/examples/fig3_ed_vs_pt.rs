//! All weight-2 coefficients of the 2 × 3 array from exact diagonalization
//! and from perturbation theory, side by side.

use std::path::Path;

use transmon_crosstalk::experiments::{run_fig3, write_experiment, SweepSpec};
use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let spec = SweepSpec {
        j_grid_ghz: vec![2.5e-4, 5e-4, 1e-3],
        ..SweepSpec::fig3_default()
    };
    let result = run_fig3(&spec)?;
    println!("J (MHz)  pair  range  ED (kHz)     PT (kHz)");
    for row in result.rows.iter().filter(|r| r.range == 1) {
        println!(
            "{:>7.3}  {},{}   {}      {:>+10.4}  {:>+10.4}",
            row.j_ghz * 1e3,
            row.l1,
            row.l2,
            row.range,
            row.w_ed.unwrap_or(f64::NAN) * 1e6,
            row.w_pt.unwrap_or(f64::NAN) * 1e6
        );
    }
    write_experiment(&result, Path::new("target/fig3"))?;
    Ok(())
}
