//! Quasi-1D `2 × L` square lattice.
//!
//! Sites are ordered row-major with the `y = 1` row first and `x` ascending,
//! so site `i` has coordinates `(i % L + 1, i / L + 1)`. Every downstream
//! index (modes, bit-string digits, tensor axes) follows this order.

use crate::error::{Error, Result};

/// Integer lattice coordinates, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Site {
    pub x: usize,
    pub y: usize,
}

impl Site {
    pub fn manhattan(&self, other: &Site) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    length: usize,
    sites: Vec<Site>,
    bonds: Vec<(usize, usize)>,
}

impl Lattice {
    /// Builds the `2 × length` lattice with nearest-neighbour bonds.
    pub fn new(length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidDimension(length));
        }
        let sites: Vec<Site> = (1..=2)
            .flat_map(|y| (1..=length).map(move |x| Site { x, y }))
            .collect();

        let mut bonds = Vec::with_capacity(3 * length - 2);
        for i in 0..sites.len() {
            let s = sites[i];
            if s.x < length {
                bonds.push((i, i + 1));
            }
            if s.y == 1 {
                bonds.push((i, i + length));
            }
        }
        Ok(Self {
            length,
            sites,
            bonds,
        })
    }

    /// Long-axis length `L`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of sites `N = 2L`.
    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, index: usize) -> Site {
        self.sites[index]
    }

    /// Bonds as `(i, j)` with `i < j`.
    pub fn bonds(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    pub fn index_of(&self, site: Site) -> Option<usize> {
        (site.x >= 1 && site.x <= self.length && (1..=2).contains(&site.y))
            .then(|| (site.y - 1) * self.length + site.x - 1)
    }

    /// Manhattan distance between two sites given by index.
    pub fn distance(&self, i: usize, j: usize) -> usize {
        self.sites[i].manhattan(&self.sites[j])
    }

    /// Largest Manhattan distance between any two sites.
    pub fn max_distance(&self) -> usize {
        self.length
    }
}

/// Convenience wrapper matching the free-function style used elsewhere.
pub fn build_lattice(length: usize) -> Result<Lattice> {
    Lattice::new(length)
}
