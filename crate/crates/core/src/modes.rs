//! Single-particle sector: the tight-binding Hamiltonian, its eigenmodes and
//! their n-point correlation functions.
//!
//! Eigenvectors come from a dense symmetric solve and are then polished to
//! double-double accuracy, so second-order quantities built from them stay
//! meaningful even when they cancel many digits.

use std::io::Write;

use faer::{Mat, Side};

use crate::assignment::max_weight_assignment;
use crate::disorder::{check_len, DisorderPattern};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::precision::{DoubleDouble, Real};

/// Home-site weight below which a mode is reported as delocalized.
pub const DELOCALIZATION_THRESHOLD: f64 = 0.5;

/// Dense square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                what: "matrix data",
                got: data.len(),
                expected: n * n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.n.max(1))
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_symmetric(&self) -> Result<()> {
        let tol = 1e-14 * self.norm_inf().max(1.0);
        for i in 0..self.n {
            for j in 0..i {
                let diff = (self.get(i, j) - self.get(j, i)).abs();
                if diff > tol {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        diff,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Tight-binding Hamiltonian: site frequencies on the diagonal, `j` on bonds.
pub fn build_h0(lattice: &Lattice, pattern: &DisorderPattern, j: f64) -> Result<DenseMatrix> {
    check_len(lattice, pattern)?;
    let mut h = DenseMatrix::zeros(lattice.n_sites());
    for (i, &w) in pattern.frequencies.iter().enumerate() {
        h.set(i, i, w);
    }
    for &(a, b) in lattice.bonds() {
        h.set(a, b, j);
        h.set(b, a, j);
    }
    Ok(h)
}

/// Dense symmetric eigensolve. Returns ascending eigenvalues and the
/// eigenvectors column-major (`vectors[c * n + i]` is component `i` of
/// eigenvector `c`).
pub(crate) fn symmetric_eigen(n: usize, entry: impl Fn(usize, usize) -> f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = Mat::<f64>::from_fn(n, n, entry);
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver did not converge: {e:?}")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let values: Vec<f64> = (0..n).map(|i| s[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for c in 0..n {
        for i in 0..n {
            vectors[c * n + i] = u[(i, c)];
        }
    }
    if values.iter().chain(&vectors).any(|v| !v.is_finite()) {
        return Err(Error::Numerical("eigensolver returned non-finite values".into()));
    }
    Ok((values, vectors))
}

/// Result of labeling eigenvectors by lattice site.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAssignment {
    /// `site_of[c]` is the site assigned to eigenvector column `c`.
    pub site_of: Vec<usize>,
    /// `|ψ_c(site_of[c])|²` for every column.
    pub weights: Vec<f64>,
    /// Columns whose home weight falls below [`DELOCALIZATION_THRESHOLD`].
    pub delocalized: Vec<usize>,
}

/// Bijectively assigns column-major eigenvectors to sites, maximizing the
/// total weight `Σ |ψ_c(site(c))|²`.
pub fn assign_modes(vectors: &[f64], n: usize) -> ModeAssignment {
    let weights: Vec<f64> = vectors.iter().map(|v| v * v).collect();
    let site_of = max_weight_assignment(&weights, n, n);
    let home: Vec<f64> = site_of
        .iter()
        .enumerate()
        .map(|(c, &s)| weights[c * n + s])
        .collect();
    let delocalized = (0..n)
        .filter(|&c| home[c] < DELOCALIZATION_THRESHOLD)
        .collect();
    ModeAssignment {
        site_of,
        weights: home,
        delocalized,
    }
}

/// Eigenmodes of `H₀`, relabeled so that mode `μ` lives on site `μ`.
///
/// Energies and amplitudes are stored as double-double pairs; the `f64`
/// accessors return the rounded values.
#[derive(Debug, Clone)]
pub struct SingleParticleModes {
    n: usize,
    energies: Vec<DoubleDouble>,
    vectors: Vec<DoubleDouble>,
    energies_f64: Vec<f64>,
    vectors_f64: Vec<f64>,
    mode_site_map: Vec<usize>,
    home_weights: Vec<f64>,
    delocalized: Vec<usize>,
}

impl SingleParticleModes {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn energy(&self, mu: usize) -> f64 {
        self.energies_f64[mu]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies_f64
    }

    /// `ψ_μ(i)`.
    pub fn psi(&self, mu: usize, site: usize) -> f64 {
        self.vectors_f64[mu * self.n + site]
    }

    /// Amplitudes of mode `μ` on all sites.
    pub fn column(&self, mu: usize) -> &[f64] {
        &self.vectors_f64[mu * self.n..(mu + 1) * self.n]
    }

    /// Energy in the requested precision.
    pub fn energy_as<T: Real>(&self, mu: usize) -> T {
        let e = self.energies[mu];
        T::from_parts(e.hi(), e.lo())
    }

    /// Amplitude in the requested precision.
    pub fn psi_as<T: Real>(&self, mu: usize, site: usize) -> T {
        let v = self.vectors[mu * self.n + site];
        T::from_parts(v.hi(), v.lo())
    }

    /// `mode_site_map[r]` is the site (and hence mode label) taken by the
    /// `r`-th eigenvalue in ascending order.
    pub fn mode_site_map(&self) -> &[usize] {
        &self.mode_site_map
    }

    /// `|ψ_μ(μ)|²` per mode.
    pub fn home_weights(&self) -> &[f64] {
        &self.home_weights
    }

    /// Modes whose home-site weight is below [`DELOCALIZATION_THRESHOLD`].
    pub fn delocalized(&self) -> &[usize] {
        &self.delocalized
    }

    /// Human-readable delocalization warnings, one per offending mode.
    pub fn warnings(&self) -> Vec<String> {
        self.delocalized
            .iter()
            .map(|&mu| {
                format!(
                    "mode {mu} is delocalized: home-site weight {:.4} < {DELOCALIZATION_THRESHOLD}",
                    self.home_weights[mu]
                )
            })
            .collect()
    }

    /// `Σ_i ∏_k ψ_{μ_k}(i)` with 0-based mode labels.
    pub fn npoint(&self, indices: &[usize]) -> f64 {
        (0..self.n)
            .map(|i| indices.iter().map(|&mu| self.psi(mu, i)).product::<f64>())
            .sum()
    }

    /// Writes `mu,E_mu_ghz,site_x,site_y,weight_on_home_site`.
    pub fn write_csv<W: Write>(&self, lattice: &Lattice, out: W) -> Result<()> {
        if lattice.n_sites() != self.n {
            return Err(Error::DimensionMismatch {
                what: "modes",
                got: self.n,
                expected: lattice.n_sites(),
            });
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["mu", "E_mu_ghz", "site_x", "site_y", "weight_on_home_site"])?;
        for mu in 0..self.n {
            let site = lattice.site(mu);
            w.write_record(&[
                mu.to_string(),
                self.energy(mu).to_string(),
                site.x.to_string(),
                site.y.to_string(),
                self.home_weights[mu].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Diagonalizes a real symmetric `H₀`, labels modes by site and fixes signs
/// so that `ψ_μ(μ) > 0`.
pub fn eigendecompose(h0: &DenseMatrix) -> Result<SingleParticleModes> {
    h0.check_symmetric()?;
    let n = h0.dim();
    let (_, raw) = symmetric_eigen(n, |i, j| h0.get(i, j))?;

    let assignment = assign_modes(&raw, n);
    let mut vectors = vec![0.0; n * n];
    for (c, &mu) in assignment.site_of.iter().enumerate() {
        let col = &raw[c * n..(c + 1) * n];
        let sign = if col[mu] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[mu * n + i] = sign * col[i];
        }
    }

    let (energies, vectors) = refine_eigenpairs(h0, &vectors);
    let vectors_f64: Vec<f64> = vectors.iter().map(|v| v.to_f64()).collect();
    let home_weights: Vec<f64> = (0..n).map(|mu| vectors_f64[mu * n + mu].powi(2)).collect();
    let mut delocalized: Vec<usize> = assignment
        .delocalized
        .iter()
        .map(|&c| assignment.site_of[c])
        .collect();
    delocalized.sort_unstable();

    Ok(SingleParticleModes {
        n,
        energies_f64: energies.iter().map(|e| e.to_f64()).collect(),
        energies,
        vectors_f64,
        vectors,
        mode_site_map: assignment.site_of,
        home_weights,
        delocalized,
    })
}

/// Convenience: `H₀` for the given pattern and coupling, diagonalized.
pub fn single_particle_modes(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    j: f64,
) -> Result<SingleParticleModes> {
    eigendecompose(&build_h0(lattice, pattern, j)?)
}

/// Ogita-Aishima iterative refinement of a full symmetric eigendecomposition,
/// carried out in double-double. Each step roughly squares the relative
/// error of well separated eigenpairs; near-degenerate pairs only get their
/// orthogonality restored.
fn refine_eigenpairs(a: &DenseMatrix, x0: &[f64]) -> (Vec<DoubleDouble>, Vec<DoubleDouble>) {
    type Dd = DoubleDouble;
    let n = a.dim();
    let mut x: Vec<Dd> = x0.iter().map(|&v| Dd::from(v)).collect();
    let a_norm = a.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut lambda = vec![Dd::ZERO; n];

    for iteration in 0..3 {
        let mut ax = vec![Dd::ZERO; n * n];
        for c in 0..n {
            for i in 0..n {
                let mut acc = Dd::ZERO;
                for k in 0..n {
                    let aik = a.get(i, k);
                    if aik != 0.0 {
                        acc += Dd::from(aik) * x[c * n + k];
                    }
                }
                ax[c * n + i] = acc;
            }
        }
        let dot = |u: &[Dd], v: &[Dd]| -> Dd { u.iter().zip(v).map(|(&p, &q)| p * q).sum() };
        let mut r = vec![Dd::ZERO; n * n];
        let mut s = vec![Dd::ZERO; n * n];
        for i in 0..n {
            let xi = &x[i * n..(i + 1) * n];
            for j in 0..n {
                let xj = &x[j * n..(j + 1) * n];
                let id = if i == j { Dd::from(1.0) } else { Dd::ZERO };
                r[i * n + j] = id - dot(xi, xj);
                s[i * n + j] = dot(xi, &ax[j * n..(j + 1) * n]);
            }
        }
        for i in 0..n {
            lambda[i] = s[i * n + i] / (Dd::from(1.0) - r[i * n + i]);
        }
        if iteration == 2 {
            break;
        }

        let mut off = 0.0;
        let mut r_norm = 0.0;
        for i in 0..n {
            for j in 0..n {
                let sv = if i == j { (s[i * n + i] - lambda[i]).to_f64() } else { s[i * n + j].to_f64() };
                off += sv * sv;
                r_norm += r[i * n + j].to_f64().powi(2);
            }
        }
        let delta = 2.0 * (off.sqrt() + a_norm * r_norm.sqrt());

        let mut e = vec![Dd::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let rij = r[i * n + j];
                let gap = lambda[j] - lambda[i];
                e[i * n + j] = if i != j && gap.abs().to_f64() > delta {
                    (s[i * n + j] + lambda[j] * rij) / gap
                } else {
                    rij * Dd::from(0.5)
                };
            }
        }
        let mut next = x.clone();
        for j in 0..n {
            for i in 0..n {
                let eij = e[i * n + j];
                if eij.is_zero() {
                    continue;
                }
                for k in 0..n {
                    next[j * n + k] += x[i * n + k] * eij;
                }
            }
        }
        x = next;
    }
    (lambda, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disorder::{generate_pattern, DisorderSpec};

    fn paper_modes(j: f64) -> (Lattice, SingleParticleModes) {
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        let m = single_particle_modes(&lat, &p, j).unwrap();
        (lat, m)
    }

    #[test]
    fn h0_two_site() {
        let lat = Lattice::new(1).unwrap();
        let p = DisorderPattern::from_frequencies(vec![5.0, 6.0]);
        let h = build_h0(&lat, &p, 0.001).unwrap();
        assert_eq!(h.as_slice(), &[5.0, 0.001, 0.001, 6.0]);
    }

    #[test]
    fn h0_bond_count_and_mismatch() {
        let (lat, _) = paper_modes(0.0);
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        let h = build_h0(&lat, &p, 0.001).unwrap();
        let off = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && h.get(i, j) != 0.0)
            .count();
        assert_eq!(off, 14);

        let wrong = DisorderPattern::from_frequencies(vec![5.0; 4]);
        assert!(matches!(
            build_h0(&lat, &wrong, 0.001),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn two_site_closed_form() {
        let lat = Lattice::new(1).unwrap();
        let p = DisorderPattern::from_frequencies(vec![5.0, 6.0]);
        let m = single_particle_modes(&lat, &p, 0.001).unwrap();
        let root = (1.0f64 + 4e-6).sqrt();
        assert!((m.energy(0) - (11.0 - root) / 2.0).abs() < 1e-14);
        assert!((m.energy(1) - (11.0 + root) / 2.0).abs() < 1e-14);
        assert!(m.psi(0, 0) > 0.0 && m.psi(1, 1) > 0.0);
    }

    #[test]
    fn decoupled_is_identity() {
        let (_, m) = paper_modes(0.0);
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        for mu in 0..6 {
            assert_eq!(m.energy(mu), p.frequencies[mu]);
            for i in 0..6 {
                assert_eq!(m.psi(mu, i), if i == mu { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(m.npoint(&[0, 0, 1, 1]), 0.0);
        assert_eq!(m.npoint(&[2, 2, 2, 2]), 1.0);
    }

    #[test]
    fn paper_parameters_localized() {
        let j = 0.001;
        let (lat, m) = paper_modes(j);
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        assert!(m.delocalized().is_empty());
        assert!(m.home_weights().iter().all(|&w| w > 0.99));
        for mu in 0..6 {
            assert!((m.energy(mu) - p.frequencies[mu]).abs() <= 10.0 * j * j / 1.0);
        }
        for mu in 0..6 {
            for nu in 0..6 {
                let expected = if mu == nu { 1.0 } else { 0.0 };
                assert!((m.npoint(&[mu, nu]) - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn residual_and_trace() {
        let (lat, m) = paper_modes(0.0015);
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        let h = build_h0(&lat, &p, 0.0015).unwrap();
        let n = 6;
        for mu in 0..n {
            for i in 0..n {
                let hv: f64 = (0..n).map(|k| h.get(i, k) * m.psi(mu, k)).sum();
                assert!((hv - m.energy(mu) * m.psi(mu, i)).abs() <= 1e-9 * h.norm_inf());
            }
        }
        let trace: f64 = (0..n).map(|i| h.get(i, i)).sum();
        let sum: f64 = m.energies().iter().sum();
        assert!((trace - sum).abs() <= 1e-9 * trace.abs());
    }

    #[test]
    fn refinement_reaches_double_double_orthogonality() {
        let (_, m) = paper_modes(0.0005);
        for mu in 0..6 {
            for nu in 0..6 {
                let dot: DoubleDouble = (0..6)
                    .map(|i| m.psi_as::<DoubleDouble>(mu, i) * m.psi_as::<DoubleDouble>(nu, i))
                    .sum();
                let expected = DoubleDouble::from(if mu == nu { 1.0 } else { 0.0 });
                assert!((dot - expected).abs().to_f64() < 1e-28);
            }
        }
    }

    #[test]
    fn asymmetric_rejected() {
        let h = DenseMatrix::from_row_major(2, vec![1.0, 0.5, 0.4, 2.0]).unwrap();
        assert!(matches!(eigendecompose(&h), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn swapped_columns_are_reassigned() {
        let v = vec![0.0, 1.0, 1.0, 0.0];
        let a = assign_modes(&v, 2);
        assert_eq!(a.site_of, vec![1, 0]);
        assert!(a.delocalized.is_empty());

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mixed = vec![0.6, 0.8, -0.8, 0.6];
        let b = assign_modes(&mixed, 2);
        assert_eq!(b.site_of, vec![1, 0]);
        let even = vec![s, s, -s, s];
        assert!(assign_modes(&even, 2).weights.iter().all(|&w| (w - 0.5).abs() < 1e-15));
    }

    #[test]
    fn resonant_pair_is_flagged() {
        // A clean 2x2 plaquette has fully extended modes.
        let lat = Lattice::new(2).unwrap();
        let p = DisorderPattern::from_frequencies(vec![5.0; 4]);
        let m = single_particle_modes(&lat, &p, 0.001).unwrap();
        assert!(!m.delocalized().is_empty());
        assert_eq!(m.warnings().len(), m.delocalized().len());
        let mut sites = m.mode_site_map().to_vec();
        sites.sort_unstable();
        assert_eq!(sites, vec![0, 1, 2, 3]);
    }

    #[test]
    fn modes_csv_header() {
        let (lat, m) = paper_modes(0.001);
        let mut buf = Vec::new();
        m.write_csv(&lat, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("mu,E_mu_ghz,site_x,site_y,weight_on_home_site\n0,"));
        assert_eq!(text.lines().count(), 7);
    }
}
