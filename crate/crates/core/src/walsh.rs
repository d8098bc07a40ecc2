//! Walsh-Hadamard decomposition of a diagonal qubit spectrum.
//!
//! With `ā` the complement of `a`,
//! `w_b = 2^{-N} Σ_a (−1)^{b·ā} E_a`, and since
//! `(−1)^{b·ā} = (−1)^{|b|} (−1)^{b·a}` this is a signed fast Walsh-Hadamard
//! transform. Tables are indexed by bit mask (bit `i` is site `i`).

use std::io::Write;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// In-place unnormalized fast Walsh-Hadamard transform, `O(n log n)`.
pub fn fwht(data: &mut [f64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "length {n} is not a power of two");
    let mut h = 1;
    while h < n {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

fn parity_sign(mask: usize) -> f64 {
    if mask.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn register_size(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            what: "energy table (must have 2^N entries)",
            got: len,
            expected: len.next_power_of_two(),
        });
    }
    Ok(len.trailing_zeros() as usize)
}

/// Coefficients `w_b` for all `2^N` bit-strings.
pub fn walsh_hadamard(energies: &[f64]) -> Result<WalshTable> {
    let n = register_size(energies.len())?;
    let mut w = energies.to_vec();
    fwht(&mut w);
    let scale = 1.0 / energies.len() as f64;
    for (b, v) in w.iter_mut().enumerate() {
        *v *= scale * parity_sign(b);
    }
    Ok(WalshTable { n, coefficients: w })
}

/// Reconstructs `E_a = Σ_b w_b (−1)^{b·ā}`.
pub fn inverse_walsh_hadamard(table: &WalshTable) -> Vec<f64> {
    let mut e: Vec<f64> = table
        .coefficients
        .iter()
        .enumerate()
        .map(|(b, &w)| w * parity_sign(b))
        .collect();
    fwht(&mut e);
    e
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalshTable {
    n: usize,
    coefficients: Vec<f64>,
}

impl WalshTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, b: BitString) -> f64 {
        self.coefficients[b.mask() as usize]
    }

    /// Coefficient with ones exactly at `positions`.
    pub fn at(&self, positions: &[usize]) -> Result<f64> {
        Ok(self.get(BitString::from_positions(self.n, positions)?))
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Writes `bitstring,weight,w_ghz`, one row per mask.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["bitstring", "weight", "w_ghz"])?;
        for b in BitString::all(self.n) {
            w.write_record(&[b.to_string(), b.weight().to_string(), self.get(b).to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_spectrum() {
        let t = walsh_hadamard(&[2.5; 8]).unwrap();
        assert_eq!(t.coefficients()[0], 2.5);
        assert!(t.coefficients()[1..].iter().all(|&w| w == 0.0));
    }

    #[test]
    fn linear_spectrum_two_qubits() {
        let (w1, w2) = (5.1, 5.7);
        let e: Vec<f64> = (0..4)
            .map(|a| w1 * (a & 1) as f64 + w2 * (a >> 1 & 1) as f64)
            .collect();
        let t = walsh_hadamard(&e).unwrap();
        assert!((t.at(&[]).unwrap() - (w1 + w2) / 2.0).abs() < 1e-15);
        assert!((t.at(&[0]).unwrap() - w1 / 2.0).abs() < 1e-15);
        assert!((t.at(&[1]).unwrap() - w2 / 2.0).abs() < 1e-15);
        assert!(t.at(&[0, 1]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn single_pair_interaction() {
        // E_a = z a_0 a_1 has w_11 = z/4.
        let e = [0.0, 0.0, 0.0, 1.0];
        let t = walsh_hadamard(&e).unwrap();
        assert_eq!(t.at(&[0, 1]).unwrap(), 0.25);
    }

    #[test]
    fn rejects_bad_length() {
        assert!(walsh_hadamard(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn csv_rows() {
        let t = walsh_hadamard(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "bitstring,weight,w_ghz");
        assert!(text.contains("\n11,2,0.25\n"));
    }

    proptest::proptest! {
        #[test]
        fn round_trip(e in proptest::collection::vec(-10.0f64..10.0, 32)) {
            let t = walsh_hadamard(&e).unwrap();
            let back = inverse_walsh_hadamard(&t);
            for (x, y) in e.iter().zip(&back) {
                proptest::prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
            }
        }

        #[test]
        fn matches_definition(e in proptest::collection::vec(-1.0f64..1.0, 8)) {
            let t = walsh_hadamard(&e).unwrap();
            for b in 0..8usize {
                let direct: f64 = (0..8usize)
                    .map(|a| {
                        let abar = !a & 7;
                        if (b & abar).count_ones() % 2 == 0 { e[a] } else { -e[a] }
                    })
                    .sum::<f64>() / 8.0;
                proptest::prop_assert!((direct - t.coefficients()[b]).abs() < 1e-14);
            }
        }
    }
}
