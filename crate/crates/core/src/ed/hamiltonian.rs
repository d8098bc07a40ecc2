//! Bose-Hubbard Hamiltonian restricted to one excitation-number sector.

use crate::disorder::{check_len, DisorderPattern};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::modes::DenseMatrix;

use super::fock::FockSector;

/// Symmetric sparse matrix as coordinate triplets, both triangles stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetric {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseSymmetric {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim);
        for &(i, j, v) in &self.entries {
            m.set(i, j, m.get(i, j) + v);
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for &(i, j, v) in &self.entries {
            y[i] += v * x[j];
        }
        y
    }
}

/// `Σ_i [ω_i n_i − (E_C/2) n_i(n_i+1)] + J Σ_⟨ij⟩ (a_i†a_j + h.c.)` on `sector`.
///
/// The quartic term is written in the form that gives `n(n+1)/2` per site,
/// i.e. including the single-particle shift `−E_C n`.
pub fn build_hbh(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    j: f64,
    ec: f64,
    sector: &FockSector,
) -> Result<SparseSymmetric> {
    check_len(lattice, pattern)?;
    if sector.n_sites() != lattice.n_sites() {
        return Err(Error::DimensionMismatch {
            what: "Fock sector",
            got: sector.n_sites(),
            expected: lattice.n_sites(),
        });
    }
    let omega = &pattern.frequencies;
    let mut entries = Vec::new();
    let mut target = vec![0u8; sector.n_sites()];
    for (s, occ) in sector.states().iter().enumerate() {
        let diag: f64 = occ
            .iter()
            .zip(omega)
            .map(|(&n, &w)| {
                let n = f64::from(n);
                w * n - 0.5 * ec * n * (n + 1.0)
            })
            .sum();
        entries.push((s, s, diag));
        if j == 0.0 {
            continue;
        }
        for &(a, b) in lattice.bonds() {
            for (from, to) in [(a, b), (b, a)] {
                if occ[from] == 0 {
                    continue;
                }
                target.copy_from_slice(occ);
                target[from] -= 1;
                target[to] += 1;
                let t = sector
                    .index_of(&target)
                    .expect("hopping conserves the excitation number");
                let amp = j * (f64::from(occ[from]) * f64::from(occ[to] + 1)).sqrt();
                entries.push((t, s, amp));
            }
        }
    }
    Ok(SparseSymmetric {
        dim: sector.len(),
        entries,
    })
}
