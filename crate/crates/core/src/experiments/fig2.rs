use std::io::Write;

use rayon::prelude::*;
use serde_json::json;

use crate::disorder::{matched_sigma, DisorderKind, DisorderPattern};
use crate::ed::solve_qubit_spectrum;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mbpt::{wh_pt_total, PtTensors};
use crate::modes::single_particle_modes;
use crate::walsh::walsh_hadamard;

use super::output::Experiment;
use super::{effective_lambda, Engine, EnsembleSpec, SweepSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Row {
    pub j_ghz: f64,
    pub lambda: f64,
    pub mean_abs_w_aa: f64,
    pub mean_abs_w_gauss: f64,
    /// Labeling or localization warnings raised at this coupling, summed
    /// over the Aubry-André pattern and all realizations.
    pub exceptions: usize,
}

#[derive(Debug, Clone)]
pub struct Fig2Result {
    pub spec: SweepSpec,
    pub sigma_ghz: f64,
    pub seeds: Vec<u64>,
    pub rows: Vec<Fig2Row>,
    pub warnings: Vec<String>,
}

struct Point {
    mean_abs: f64,
    warnings: Vec<String>,
}

/// Mean `|w|` over nearest-neighbour weight-2 coefficients.
fn nearest_neighbour_mean(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    j: f64,
    spec: &SweepSpec,
) -> Result<Point> {
    let bonds = lattice.bonds();
    let (total, warnings) = match spec.engine {
        Engine::Ed => {
            let table = solve_qubit_spectrum(lattice, pattern, j, spec.ec_ghz, &spec.ed)?;
            let w = walsh_hadamard(table.energies())?;
            let total = bonds
                .iter()
                .map(|&(a, b)| w.at(&[a, b]).map(f64::abs))
                .sum::<Result<f64>>()?;
            let warnings = table
                .warnings()
                .iter()
                .map(|lw| format!("J={j}: state {} labeled with overlap {:.3}", lw.bitstring, lw.overlap))
                .collect();
            (total, warnings)
        }
        Engine::Pt => {
            let modes = single_particle_modes(lattice, pattern, j)?;
            let t = PtTensors::<f64>::build(&modes, spec.ec_ghz, spec.denom_tol_ghz);
            let total = bonds
                .iter()
                .map(|&(a, b)| wh_pt_total(&[a, b], &t).map(f64::abs))
                .sum::<Result<f64>>()?;
            let warnings = modes.warnings().into_iter().map(|w| format!("J={j}: {w}")).collect();
            (total, warnings)
        }
        Engine::Both => {
            return Err(Error::Config("fig2 needs a single engine (ed or pt)".into()));
        }
    };
    Ok(Point {
        mean_abs: total / bonds.len() as f64,
        warnings,
    })
}

/// Mean nearest-neighbour ZZ magnitude versus coupling for the Aubry-André
/// pattern and for a Gaussian ensemble of matched width.
pub fn run_fig2(spec: &SweepSpec) -> Result<Fig2Result> {
    spec.validate()?;
    if spec.engine == Engine::Both {
        return Err(Error::Config("fig2 needs a single engine (ed or pt)".into()));
    }
    if !matches!(spec.disorder, EnsembleSpec::GaussianEnsemble { .. }) {
        return Err(Error::Config(
            "fig2 compares against a Gaussian ensemble; set disorder.kind = gaussian_ensemble".into(),
        ));
    }
    let lattice = spec.lattice()?;
    if spec.engine == Engine::Ed {
        crate::ed::check_ed_size(lattice.n_sites(), &spec.ed)?;
    }
    let aa = spec.aa_pattern(&lattice)?;
    let sigma = matched_sigma(&aa)?;
    let ensemble = spec.patterns(&lattice)?;
    let seeds = ensemble
        .iter()
        .filter_map(|p| match p.spec.kind {
            DisorderKind::GaussianRandom { seed, .. } => Some(seed),
            DisorderKind::MetallicAa => None,
        })
        .collect();

    let patterns: Vec<&DisorderPattern> = std::iter::once(&aa).chain(&ensemble).collect();
    let n_j = spec.j_grid_ghz.len();
    let points: Vec<Point> = (0..patterns.len() * n_j)
        .into_par_iter()
        .map(|item| {
            let (p, jx) = (item / n_j, item % n_j);
            nearest_neighbour_mean(&lattice, patterns[p], spec.j_grid_ghz[jx], spec)
        })
        .collect::<Result<_>>()?;

    let mut warnings = Vec::new();
    let rows = spec
        .j_grid_ghz
        .iter()
        .enumerate()
        .map(|(jx, &j)| {
            let aa_point = &points[jx];
            let gauss: f64 = (1..patterns.len()).map(|p| points[p * n_j + jx].mean_abs).sum::<f64>()
                / ensemble.len() as f64;
            let mut exceptions = 0;
            for p in 0..patterns.len() {
                let pt = &points[p * n_j + jx];
                exceptions += pt.warnings.len();
                let label = if p == 0 { "aa".to_string() } else { format!("realization {}", p - 1) };
                warnings.extend(pt.warnings.iter().map(|w| format!("{label}: {w}")));
            }
            Fig2Row {
                j_ghz: j,
                lambda: effective_lambda(j, spec.ec_ghz, spec.mean_ghz),
                mean_abs_w_aa: aa_point.mean_abs,
                mean_abs_w_gauss: gauss,
                exceptions,
            }
        })
        .collect();

    Ok(Fig2Result {
        spec: spec.clone(),
        sigma_ghz: sigma,
        seeds,
        rows,
        warnings,
    })
}

impl Experiment for Fig2Result {
    fn name(&self) -> &'static str {
        "fig2"
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["j_ghz", "lambda", "mean_abs_w_aa_ghz", "mean_abs_w_gauss_ghz", "exceptions"])?;
        for r in &self.rows {
            w.write_record(&[
                r.j_ghz.to_string(),
                r.lambda.to_string(),
                r.mean_abs_w_aa.to_string(),
                r.mean_abs_w_gauss.to_string(),
                r.exceptions.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn metadata(&self) -> serde_json::Value {
        json!({
            "experiment": "fig2",
            "spec": self.spec,
            "sigma_ghz": self.sigma_ghz,
            "seeds": self.seeds,
            "averaging": "mean |w| over nearest-neighbour weight-2 coefficients",
            "tolerances": {
                "overlap_threshold": self.spec.ed.overlap_threshold,
                "denom_tol_ghz": self.spec.denom_tol_ghz,
            },
            "warnings": self.warnings,
        })
    }
}
