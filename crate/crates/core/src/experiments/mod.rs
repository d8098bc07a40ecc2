//! Parameter sweeps behind the three numerical studies: quasi-periodic vs
//! random patterning, exact vs perturbative coefficients, and the range
//! hierarchy of ZZ couplings on a `2 × 20` array.

mod fig2;
mod fig3;
mod fig4;
mod output;

use serde::Serialize;

use crate::disorder::{generate_pattern, matched_sigma, DisorderPattern, DisorderSpec};
use crate::ed::EdOptions;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mbpt::DEFAULT_DENOM_TOL;

pub use fig2::{run_fig2, Fig2Result, Fig2Row};
pub use fig3::{run_fig3, Fig3Result, Fig3Row};
pub use fig4::{run_fig4, Fig4Result, RangeBin};
pub use output::{write_experiment, Experiment};

/// Which solver produces the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Ed,
    Pt,
    Both,
}

/// Frequency patterning used by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleSpec {
    Aa,
    /// Realization `r` is drawn with seed `base_seed + r` and the width of
    /// the Aubry-André pattern on the same lattice.
    GaussianEnsemble { n_realizations: usize, base_seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub length: usize,
    pub mean_ghz: f64,
    pub delta_ghz: f64,
    pub ec_ghz: f64,
    pub j_grid_ghz: Vec<f64>,
    pub engine: Engine,
    pub disorder: EnsembleSpec,
    pub denom_tol_ghz: f64,
    pub ed: EdOptions,
}

/// 31 evenly spaced couplings from 0 to 1.5 MHz, in GHz.
pub fn default_j_grid() -> Vec<f64> {
    (0..=30).map(|i| 1.5e-3 * f64::from(i) / 30.0).collect()
}

impl SweepSpec {
    /// `2 × 3`, `E_C = 0.33 GHz`, ED, 100 Gaussian realizations.
    pub fn fig2_default() -> Self {
        Self {
            length: 3,
            mean_ghz: 5.5,
            delta_ghz: 1.0,
            ec_ghz: 0.33,
            j_grid_ghz: default_j_grid(),
            engine: Engine::Ed,
            disorder: EnsembleSpec::GaussianEnsemble {
                n_realizations: 100,
                base_seed: 0,
            },
            denom_tol_ghz: DEFAULT_DENOM_TOL,
            ed: EdOptions::default(),
        }
    }

    /// `2 × 3`, `E_C = 0.33 GHz`, both engines on the Aubry-André pattern.
    pub fn fig3_default() -> Self {
        Self {
            engine: Engine::Both,
            disorder: EnsembleSpec::Aa,
            ..Self::fig2_default()
        }
    }

    /// `2 × 20`, `E_C = 0.15 GHz`, `J = 1 MHz`, perturbation theory.
    pub fn fig4_default() -> Self {
        Self {
            length: 20,
            ec_ghz: 0.15,
            j_grid_ghz: vec![1e-3],
            engine: Engine::Pt,
            disorder: EnsembleSpec::Aa,
            ..Self::fig2_default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.length == 0 {
            return bad("lattice length must be at least 1".into());
        }
        if !(self.mean_ghz > 0.0) {
            return bad(format!("mean frequency must be positive, got {}", self.mean_ghz));
        }
        if !(self.delta_ghz >= 0.0) || !(self.ec_ghz >= 0.0) {
            return bad("delta and E_C must be non-negative".into());
        }
        if self.j_grid_ghz.is_empty() {
            return bad("J grid is empty".into());
        }
        if let Some(j) = self.j_grid_ghz.iter().find(|j| !(**j >= 0.0) || !j.is_finite()) {
            return bad(format!("J grid entries must be finite and non-negative, got {j}"));
        }
        if let EnsembleSpec::GaussianEnsemble { n_realizations: 0, .. } = self.disorder {
            return bad("n_realizations must be at least 1".into());
        }
        if !(self.denom_tol_ghz >= 0.0) {
            return bad("denominator tolerance must be non-negative".into());
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.length)
    }

    pub fn aa_pattern(&self, lattice: &Lattice) -> Result<DisorderPattern> {
        generate_pattern(lattice, DisorderSpec::metallic_aa(self.mean_ghz, self.delta_ghz))
    }

    /// The Aubry-André pattern, or every Gaussian realization with its seed.
    pub fn patterns(&self, lattice: &Lattice) -> Result<Vec<DisorderPattern>> {
        let aa = self.aa_pattern(lattice)?;
        match self.disorder {
            EnsembleSpec::Aa => Ok(vec![aa]),
            EnsembleSpec::GaussianEnsemble {
                n_realizations,
                base_seed,
            } => {
                let sigma = matched_sigma(&aa)?;
                (0..n_realizations as u64)
                    .map(|r| {
                        let seed = base_seed.wrapping_add(r);
                        generate_pattern(
                            lattice,
                            DisorderSpec::gaussian(self.mean_ghz, self.delta_ghz, sigma, seed),
                        )
                    })
                    .collect()
            }
        }
    }
}

/// `λ = 16 J E_C / ⟨ω⟩`.
pub fn effective_lambda(j: f64, ec: f64, mean: f64) -> f64 {
    16.0 * j * ec / mean
}

/// Manhattan distance between two sites.
pub fn correlation_range(pair: (usize, usize), lattice: &Lattice) -> usize {
    lattice.distance(pair.0, pair.1)
}

/// All site pairs `a < b`, in lexicographic order.
pub(crate) fn site_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}
