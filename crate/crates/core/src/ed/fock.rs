//! Number-conserving occupation bases.

use std::collections::HashMap;

/// All occupations `(n_1, …, n_N)` with `Σ n_i = k`, in descending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSector {
    n: usize,
    k: usize,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl FockSector {
    pub fn n_sites(&self) -> usize {
        self.n
    }

    /// Total excitation number.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn state(&self, i: usize) -> &[u8] {
        &self.basis[i]
    }

    pub fn states(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn index_of(&self, occupation: &[u8]) -> Option<usize> {
        self.index.get(occupation).copied()
    }
}

/// Builds the `k`-excitation sector over `n` sites.
pub fn enumerate_sector(n: usize, k: usize) -> FockSector {
    assert!(n >= 1, "a sector needs at least one site");
    assert!(k <= usize::from(u8::MAX), "occupations are stored as u8");
    let mut basis = Vec::new();
    let mut current = vec![0u8; n];
    fill(&mut current, 0, k, &mut basis);
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    FockSector { n, k, basis, index }
}

fn fill(current: &mut [u8], site: usize, remaining: usize, out: &mut Vec<Vec<u8>>) {
    if site + 1 == current.len() {
        current[site] = remaining as u8;
        out.push(current.to_vec());
        return;
    }
    for occ in (0..=remaining).rev() {
        current[site] = occ as u8;
        fill(current, site + 1, remaining - occ, out);
    }
    current[site] = 0;
}

/// `C(k+n−1, n−1)`, saturating at `u128::MAX`.
pub fn sector_dim(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    let (top, choose) = ((k + n - 1) as u128, (n - 1).min(k) as u128);
    let mut acc: u128 = 1;
    for i in 0..choose {
        acc = match acc.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
