//! Qubit spectrum by exact diagonalization, sector by sector.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::max_weight_assignment;
use crate::bits::BitString;
use crate::disorder::{check_len, DisorderPattern};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::modes::{single_particle_modes, symmetric_eigen, SingleParticleModes};

use super::fock::{enumerate_sector, sector_dim, FockSector};
use super::hamiltonian::build_hbh;

/// Limits and thresholds for exact diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdOptions {
    /// Largest number of sites accepted.
    pub n_max_ed: usize,
    /// Largest sector dimension handed to the dense solver.
    pub max_sector_dim: usize,
    /// Assignment overlaps below this value are reported.
    pub overlap_threshold: f64,
}

impl Default for EdOptions {
    fn default() -> Self {
        Self {
            n_max_ed: 12,
            max_sector_dim: 20_000,
            overlap_threshold: 0.5,
        }
    }
}

/// Refuses systems beyond the configured caps before any work is done.
pub fn check_ed_size(n: usize, opts: &EdOptions) -> Result<()> {
    if n > opts.n_max_ed {
        return Err(Error::SizeCap(format!(
            "{n} sites exceed the exact-diagonalization cap n_max_ed = {}",
            opts.n_max_ed
        )));
    }
    let largest = sector_dim(n, n);
    if largest > opts.max_sector_dim as u128 {
        return Err(Error::SizeCap(format!(
            "largest sector for {n} sites has {largest} states, above max_sector_dim = {}",
            opts.max_sector_dim
        )));
    }
    Ok(())
}

/// A qubit state whose best-matching eigenvector overlaps poorly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelWarning {
    pub bitstring: String,
    pub overlap: f64,
}

/// Energies of all `2^N` qubit states, indexed by bit mask.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    n: usize,
    energies: Vec<f64>,
    overlaps: Vec<f64>,
    warnings: Vec<LabelWarning>,
}

impl SpectrumTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn energy(&self, b: BitString) -> f64 {
        self.energies[b.mask() as usize]
    }

    pub fn overlap(&self, b: BitString) -> f64 {
        self.overlaps[b.mask() as usize]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    pub fn warnings(&self) -> &[LabelWarning] {
        &self.warnings
    }

    /// Writes `bitstring,energy_ghz,overlap`, one row per mask.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["bitstring", "energy_ghz", "overlap"])?;
        for b in BitString::all(self.n) {
            w.write_record(&[b.to_string(), self.energy(b).to_string(), self.overlap(b).to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `∏_μ (c_μ†)^{b_μ} |0⟩` expanded in the Fock basis of `sector`, with
/// `c_μ† = Σ_i ψ_μ(i) a_i†`.
pub fn dressed_product_vector(
    b: BitString,
    modes: &SingleParticleModes,
    sector: &FockSector,
) -> Result<Vec<f64>> {
    if b.weight() as usize != sector.k() {
        return Err(Error::WeightMismatch {
            weight: b.weight(),
            k: sector.k(),
        });
    }
    let n = sector.n_sites();
    if modes.n() != n || b.len() != n {
        return Err(Error::DimensionMismatch {
            what: "modes",
            got: modes.n(),
            expected: n,
        });
    }
    let mut state: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    state.insert(vec![0; n], 1.0);
    for mu in b.ones() {
        let psi = modes.column(mu);
        let mut next = BTreeMap::new();
        for (occ, amp) in &state {
            for (i, &p) in psi.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let mut raised = occ.clone();
                raised[i] += 1;
                let factor = f64::from(raised[i]).sqrt();
                *next.entry(raised).or_insert(0.0) += amp * p * factor;
            }
        }
        state = next;
    }
    let mut v = vec![0.0; sector.len()];
    for (occ, amp) in state {
        let i = sector
            .index_of(&occ)
            .expect("weight matches sector, so every term lies inside it");
        v[i] = amp;
    }
    Ok(v)
}

/// Ascending eigenvalues of the Bose-Hubbard Hamiltonian with `k`
/// excitations.
pub fn sector_energies(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    j: f64,
    ec: f64,
    k: usize,
    opts: &EdOptions,
) -> Result<Vec<f64>> {
    check_len(lattice, pattern)?;
    let n = lattice.n_sites();
    check_ed_size(n, opts)?;
    let sector = enumerate_sector(n, k);
    let h = build_hbh(lattice, pattern, j, ec, &sector)?.to_dense();
    let (mut values, _) = symmetric_eigen(sector.len(), |r, c| h.get(r, c))?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

struct SectorResult {
    masks: Vec<u64>,
    energies: Vec<f64>,
    overlaps: Vec<f64>,
}

fn solve_sector(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    modes: &SingleParticleModes,
    j: f64,
    ec: f64,
    k: usize,
) -> Result<SectorResult> {
    let n = lattice.n_sites();
    let sector = enumerate_sector(n, k);
    let h = build_hbh(lattice, pattern, j, ec, &sector)?.to_dense();
    let dim = sector.len();
    let (values, vectors) = symmetric_eigen(dim, |r, c| h.get(r, c))?;

    let masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() as usize == k).collect();
    let mut weights = Vec::with_capacity(masks.len() * dim);
    for &mask in &masks {
        let v = dressed_product_vector(BitString::new(mask, n)?, modes, &sector)?;
        for c in 0..dim {
            let phi = &vectors[c * dim..(c + 1) * dim];
            let dot: f64 = v.iter().zip(phi).map(|(a, b)| a * b).sum();
            weights.push(dot * dot);
        }
    }
    let chosen = max_weight_assignment(&weights, masks.len(), dim);
    let energies = chosen.iter().map(|&c| values[c]).collect();
    let overlaps = chosen
        .iter()
        .enumerate()
        .map(|(r, &c)| weights[r * dim + c])
        .collect();
    Ok(SectorResult {
        masks,
        energies,
        overlaps,
    })
}

/// Diagonalizes every sector `k = 0..=N` and labels one eigenstate per
/// qubit bit-string by maximal overlap with its dressed product state.
pub fn solve_qubit_spectrum(
    lattice: &Lattice,
    pattern: &DisorderPattern,
    j: f64,
    ec: f64,
    opts: &EdOptions,
) -> Result<SpectrumTable> {
    check_len(lattice, pattern)?;
    let n = lattice.n_sites();
    check_ed_size(n, opts)?;
    let modes = single_particle_modes(lattice, pattern, j)?;

    let sectors: Vec<SectorResult> = (0..=n)
        .into_par_iter()
        .map(|k| solve_sector(lattice, pattern, &modes, j, ec, k))
        .collect::<Result<_>>()?;

    let size = 1usize << n;
    let mut energies = vec![0.0; size];
    let mut overlaps = vec![0.0; size];
    for s in &sectors {
        for (i, &mask) in s.masks.iter().enumerate() {
            energies[mask as usize] = s.energies[i];
            overlaps[mask as usize] = s.overlaps[i];
        }
    }
    let warnings = (0..size)
        .filter(|&m| overlaps[m] < opts.overlap_threshold)
        .map(|m| LabelWarning {
            bitstring: BitString::new(m as u64, n).map(|b| b.to_string()).unwrap_or_default(),
            overlap: overlaps[m],
        })
        .collect();
    Ok(SpectrumTable {
        n,
        energies,
        overlaps,
        warnings,
    })
}
