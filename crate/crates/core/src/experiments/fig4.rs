use std::io::Write;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::mbpt::{wh_pt_total, PtTensors, Resonance};
use crate::modes::single_particle_modes;

use super::output::Experiment;
use super::{correlation_range, site_pairs, Engine, EnsembleSpec, SweepSpec};

/// Weight-2 coefficients grouped by the distance between their two sites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeBin {
    pub range: usize,
    pub pairs: Vec<(usize, usize)>,
    /// Mean of `|w|` over `pairs`.
    pub mean_abs_w: f64,
}

#[derive(Debug, Clone)]
pub struct Fig4Result {
    pub spec: SweepSpec,
    pub bins: Vec<RangeBin>,
    pub resonances: Vec<Resonance>,
    pub warnings: Vec<String>,
}

/// Range-binned mean ZZ magnitude from perturbation theory at one coupling.
pub fn run_fig4(spec: &SweepSpec) -> Result<Fig4Result> {
    spec.validate()?;
    if spec.engine != Engine::Pt {
        return Err(Error::Config(
            "fig4 is computed with perturbation theory only (engine = pt)".into(),
        ));
    }
    let &[j] = spec.j_grid_ghz.as_slice() else {
        return Err(Error::Config(format!(
            "fig4 takes a single coupling, got {} grid points",
            spec.j_grid_ghz.len()
        )));
    };
    if spec.disorder != EnsembleSpec::Aa {
        return Err(Error::Config("fig4 runs on the Aubry-André pattern (disorder.kind = aa)".into()));
    }
    let lattice = spec.lattice()?;
    let pattern = spec.aa_pattern(&lattice)?;
    let modes = single_particle_modes(&lattice, &pattern, j)?;
    let tensors = PtTensors::<f64>::build(&modes, spec.ec_ghz, spec.denom_tol_ghz);

    let mut bins: Vec<RangeBin> = (1..=lattice.max_distance())
        .map(|range| RangeBin {
            range,
            pairs: Vec::new(),
            mean_abs_w: 0.0,
        })
        .collect();
    for (a, b) in site_pairs(lattice.n_sites()) {
        let bin = &mut bins[correlation_range((a, b), &lattice) - 1];
        bin.pairs.push((a, b));
        bin.mean_abs_w += wh_pt_total(&[a, b], &tensors)?.abs();
    }
    for bin in &mut bins {
        bin.mean_abs_w /= bin.pairs.len().max(1) as f64;
    }

    Ok(Fig4Result {
        spec: spec.clone(),
        bins,
        resonances: tensors.resonances().to_vec(),
        warnings: modes.warnings(),
    })
}

impl Experiment for Fig4Result {
    fn name(&self) -> &'static str {
        "fig4"
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["range_l", "n_pairs", "mean_abs_w_ghz"])?;
        for b in &self.bins {
            w.write_record(&[b.range.to_string(), b.pairs.len().to_string(), b.mean_abs_w.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    fn metadata(&self) -> serde_json::Value {
        json!({
            "experiment": "fig4",
            "spec": self.spec,
            "tolerances": { "denom_tol_ghz": self.spec.denom_tol_ghz },
            "resonances": self.resonances,
            "warnings": self.warnings,
        })
    }
}
