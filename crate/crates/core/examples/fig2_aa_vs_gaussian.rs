//! Nearest-neighbour ZZ of the Aubry-André pattern against a Gaussian
//! ensemble of matched width.
//!
//! Runs a reduced sweep by default; pass `full` for 31 couplings and 100
//! realizations. Output goes to `target/fig2`.

use std::path::Path;

use transmon_crosstalk::experiments::{run_fig2, write_experiment, EnsembleSpec, SweepSpec};
use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let mut spec = SweepSpec::fig2_default();
    if std::env::args().nth(1).as_deref() != Some("full") {
        spec.j_grid_ghz = vec![0.0, 5e-4, 1e-3, 1.5e-3];
        spec.disorder = EnsembleSpec::GaussianEnsemble {
            n_realizations: 10,
            base_seed: 0,
        };
    }
    let result = run_fig2(&spec)?;
    println!("sigma = {:.4} GHz", result.sigma_ghz);
    println!("J (MHz)  lambda    AA (kHz)    Gaussian (kHz)");
    for row in &result.rows {
        println!(
            "{:>7.3}  {:.5}  {:>10.4}  {:>10.4}",
            row.j_ghz * 1e3,
            row.lambda,
            row.mean_abs_w_aa * 1e6,
            row.mean_abs_w_gauss * 1e6
        );
    }
    let (csv, json) = write_experiment(&result, Path::new("target/fig2"))?;
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(())
}
