//! Transmon frequency patterns: the metallic-ratio Aubry-André potential and
//! a matched Gaussian random ensemble.
//!
//! All frequencies are in GHz.

use std::f64::consts::PI;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// How a pattern was generated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DisorderKind {
    MetallicAa,
    /// Gaussian draws from a ChaCha8 stream seeded with `seed`
    /// (`seed_from_u64`), sampled through `rand_distr::Normal`.
    GaussianRandom { seed: u64, sigma: f64 },
}

/// Everything needed to regenerate a pattern on a given lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    pub mean: f64,
    pub delta: f64,
    pub kind: DisorderKind,
}

impl DisorderSpec {
    pub fn metallic_aa(mean: f64, delta: f64) -> Self {
        Self {
            mean,
            delta,
            kind: DisorderKind::MetallicAa,
        }
    }

    pub fn gaussian(mean: f64, delta: f64, sigma: f64, seed: u64) -> Self {
        Self {
            mean,
            delta,
            kind: DisorderKind::GaussianRandom { seed, sigma },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisorderPattern {
    pub frequencies: Vec<f64>,
    pub spec: DisorderSpec,
}

impl DisorderPattern {
    /// Wraps explicit frequencies, e.g. for hand-built test systems.
    pub fn from_frequencies(frequencies: Vec<f64>) -> Self {
        let mean = frequencies.iter().sum::<f64>() / frequencies.len().max(1) as f64;
        Self {
            frequencies,
            spec: DisorderSpec::metallic_aa(mean, 0.0),
        }
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Writes `x,y,omega_ghz`, one row per site in canonical order.
    pub fn write_csv<W: Write>(&self, lattice: &Lattice, out: W) -> Result<()> {
        check_len(lattice, self)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y", "omega_ghz"])?;
        for (site, omega) in lattice.sites().iter().zip(&self.frequencies) {
            w.write_record(&[site.x.to_string(), site.y.to_string(), omega.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `⟨ω⟩ + (Δ/2)·sin[π (y + √(y²+4)) x]`.
///
/// `(y + √(y²+4))/2` is the `y`-th metallic ratio, so each row is an
/// Aubry-André potential with its own incommensurate period.
pub fn metallic_aa_frequency(x: usize, y: usize, mean: f64, delta: f64) -> f64 {
    let y = y as f64;
    let ratio2 = y + (y * y + 4.0).sqrt();
    mean + 0.5 * delta * (PI * ratio2 * x as f64).sin()
}

pub fn generate_pattern(lattice: &Lattice, spec: DisorderSpec) -> Result<DisorderPattern> {
    let frequencies = match spec.kind {
        DisorderKind::MetallicAa => lattice
            .sites()
            .iter()
            .map(|s| metallic_aa_frequency(s.x, s.y, spec.mean, spec.delta))
            .collect(),
        DisorderKind::GaussianRandom { seed, sigma } => {
            if !(sigma.is_finite() && sigma >= 0.0) {
                return Err(Error::Config(format!("invalid Gaussian width {sigma}")));
            }
            let normal = Normal::new(spec.mean, sigma).map_err(|e| {
                Error::Config(format!("invalid Gaussian width {sigma}: {e}"))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..lattice.n_sites()).map(|_| normal.sample(&mut rng)).collect()
        }
    };
    Ok(DisorderPattern { frequencies, spec })
}

/// Population standard deviation of the frequencies.
pub fn population_std(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::DegenerateStatistics(values.len()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok(var.sqrt())
}

/// Width of the Gaussian ensemble matched to a concrete Aubry-André pattern.
pub fn matched_sigma(pattern: &DisorderPattern) -> Result<f64> {
    if pattern.spec.kind != DisorderKind::MetallicAa {
        return Err(Error::Config(
            "matched sigma is defined for metallic Aubry-André patterns".into(),
        ));
    }
    population_std(&pattern.frequencies)
}

pub(crate) fn check_len(lattice: &Lattice, pattern: &DisorderPattern) -> Result<()> {
    if pattern.len() != lattice.n_sites() {
        return Err(Error::DimensionMismatch {
            what: "frequency pattern",
            got: pattern.len(),
            expected: lattice.n_sites(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_strength_gives_mean() {
        assert_eq!(metallic_aa_frequency(1, 1, 5.5, 0.0), 5.5);
    }

    #[test]
    fn golden_row_first_site() {
        // 40-digit evaluation of 5.5 + 0.5 sin(pi (1 + sqrt 5)).
        let expected = 5.162_254_852_869_238_178_8;
        assert!((metallic_aa_frequency(1, 1, 5.5, 1.0) - expected).abs() < 1e-14);
    }

    #[test]
    fn aa_bounded() {
        let lat = Lattice::new(20).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        assert_eq!(p.len(), 40);
        assert!(p.frequencies.iter().all(|w| (5.0..=6.0).contains(w)));
        let v = metallic_aa_frequency(20, 2, 5.5, 1.0);
        assert!((5.0..=6.0).contains(&v));
    }

    #[test]
    fn gaussian_zero_width_and_determinism() {
        let lat = Lattice::new(5).unwrap();
        let flat = generate_pattern(&lat, DisorderSpec::gaussian(5.5, 1.0, 0.0, 7)).unwrap();
        assert!(flat.frequencies.iter().all(|&w| w == 5.5));

        let a = generate_pattern(&lat, DisorderSpec::gaussian(5.5, 1.0, 0.4, 42)).unwrap();
        let b = generate_pattern(&lat, DisorderSpec::gaussian(5.5, 1.0, 0.4, 42)).unwrap();
        let c = generate_pattern(&lat, DisorderSpec::gaussian(5.5, 1.0, 0.4, 43)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.frequencies, c.frequencies);
    }

    #[test]
    fn negative_sigma_rejected() {
        let lat = Lattice::new(2).unwrap();
        assert!(generate_pattern(&lat, DisorderSpec::gaussian(5.5, 1.0, -1.0, 0)).is_err());
    }

    #[test]
    fn matched_sigma_small_lattice() {
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        // 40-digit population std of the six Aubry-André frequencies.
        let expected = 0.413_914_443_259_574_118_3;
        assert!((matched_sigma(&p).unwrap() - expected).abs() < 1e-14);

        let flat = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 0.0)).unwrap();
        assert_eq!(matched_sigma(&flat).unwrap(), 0.0);
    }

    #[test]
    fn matched_sigma_needs_two_sites() {
        let p = DisorderPattern::from_frequencies(vec![5.0]);
        assert!(matches!(
            matched_sigma(&p),
            Err(Error::DegenerateStatistics(1))
        ));
    }

    #[test]
    fn csv_layout() {
        let lat = Lattice::new(2).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 0.0)).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&lat, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,y,omega_ghz\n1,1,5.5\n2,1,5.5\n1,2,5.5\n2,2,5.5\n");
    }
}
