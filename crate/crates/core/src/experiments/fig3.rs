use std::io::Write;

use rayon::prelude::*;
use serde_json::json;

use crate::ed::solve_qubit_spectrum;
use crate::error::{Error, Result};
use crate::mbpt::{wh_pt_total, PtTensors, Resonance};
use crate::modes::single_particle_modes;
use crate::walsh::walsh_hadamard;

use super::output::Experiment;
use super::{correlation_range, effective_lambda, site_pairs, Engine, EnsembleSpec, SweepSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Row {
    pub j_ghz: f64,
    pub lambda: f64,
    pub l1: usize,
    pub l2: usize,
    pub range: usize,
    pub w_ed: Option<f64>,
    pub w_pt: Option<f64>,
    /// Low-overlap labels in the exact spectrum at this coupling.
    pub exceptions: usize,
}

#[derive(Debug, Clone)]
pub struct Fig3Result {
    pub spec: SweepSpec,
    pub rows: Vec<Fig3Row>,
    pub warnings: Vec<String>,
    pub resonances: Vec<(f64, Resonance)>,
}

struct Point {
    rows: Vec<Fig3Row>,
    warnings: Vec<String>,
    resonances: Vec<Resonance>,
}

/// Every weight-2 coefficient of the Aubry-André array from both engines
/// along the coupling grid.
pub fn run_fig3(spec: &SweepSpec) -> Result<Fig3Result> {
    spec.validate()?;
    if spec.disorder != EnsembleSpec::Aa {
        return Err(Error::Config("fig3 runs on the Aubry-André pattern (disorder.kind = aa)".into()));
    }
    let lattice = spec.lattice()?;
    let n = lattice.n_sites();
    let use_ed = matches!(spec.engine, Engine::Ed | Engine::Both);
    let use_pt = matches!(spec.engine, Engine::Pt | Engine::Both);
    if use_ed {
        crate::ed::check_ed_size(n, &spec.ed)?;
    }
    let pattern = spec.aa_pattern(&lattice)?;
    let pairs = site_pairs(n);

    let points: Vec<Point> = spec
        .j_grid_ghz
        .par_iter()
        .map(|&j| -> Result<Point> {
            let mut warnings = Vec::new();
            let mut resonances = Vec::new();
            let ed = if use_ed {
                let table = solve_qubit_spectrum(&lattice, &pattern, j, spec.ec_ghz, &spec.ed)?;
                warnings.extend(table.warnings().iter().map(|lw| {
                    format!("J={j}: state {} labeled with overlap {:.3}", lw.bitstring, lw.overlap)
                }));
                Some(walsh_hadamard(table.energies())?)
            } else {
                None
            };
            let exceptions = warnings.len();
            let pt = if use_pt {
                let modes = single_particle_modes(&lattice, &pattern, j)?;
                warnings.extend(modes.warnings().into_iter().map(|w| format!("J={j}: {w}")));
                let t = PtTensors::<f64>::build(&modes, spec.ec_ghz, spec.denom_tol_ghz);
                resonances.extend_from_slice(t.resonances());
                Some(t)
            } else {
                None
            };
            let rows = pairs
                .iter()
                .map(|&(a, b)| {
                    Ok(Fig3Row {
                        j_ghz: j,
                        lambda: effective_lambda(j, spec.ec_ghz, spec.mean_ghz),
                        l1: a,
                        l2: b,
                        range: correlation_range((a, b), &lattice),
                        w_ed: ed.as_ref().map(|w| w.at(&[a, b])).transpose()?,
                        w_pt: pt.as_ref().map(|t| wh_pt_total(&[a, b], t)).transpose()?,
                        exceptions,
                    })
                })
                .collect::<Result<_>>()?;
            Ok(Point {
                rows,
                warnings,
                resonances,
            })
        })
        .collect::<Result<_>>()?;

    let mut result = Fig3Result {
        spec: spec.clone(),
        rows: Vec::new(),
        warnings: Vec::new(),
        resonances: Vec::new(),
    };
    for (p, &j) in points.into_iter().zip(&spec.j_grid_ghz) {
        result.rows.extend(p.rows);
        result.warnings.extend(p.warnings);
        result.resonances.extend(p.resonances.into_iter().map(|r| (j, r)));
    }
    Ok(result)
}

impl Experiment for Fig3Result {
    fn name(&self) -> &'static str {
        "fig3"
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["j_ghz", "lambda", "l1", "l2", "range_l", "w_ed_ghz", "w_pt_ghz", "exceptions"])?;
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
        for r in &self.rows {
            w.write_record(&[
                r.j_ghz.to_string(),
                r.lambda.to_string(),
                r.l1.to_string(),
                r.l2.to_string(),
                r.range.to_string(),
                opt(r.w_ed),
                opt(r.w_pt),
                r.exceptions.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn metadata(&self) -> serde_json::Value {
        let resonances: Vec<_> = self
            .resonances
            .iter()
            .map(|(j, r)| json!({ "j_ghz": j, "resonance": r }))
            .collect();
        json!({
            "experiment": "fig3",
            "spec": self.spec,
            "tolerances": {
                "overlap_threshold": self.spec.ed.overlap_threshold,
                "denom_tol_ghz": self.spec.denom_tol_ghz,
            },
            "warnings": self.warnings,
            "resonances": resonances,
        })
    }
}
