//! Qubit-sector energies `E_b` to second order in `E_C`.
//!
//! Sums over pairwise distinct occupied modes are evaluated as full sums
//! minus their coincident-index parts, so the kernels carry no branches.

use crate::bits::BitString;
use crate::modes::SingleParticleModes;
use crate::precision::Real;

use super::tensors::PtTensors;

/// `Σ_μ E_μ b_μ`.
pub fn energy_order0(b: BitString, modes: &SingleParticleModes) -> f64 {
    b.ones().map(|mu| modes.energy(mu)).sum()
}

/// `−E_C |b| − E_C Σ_{μ≠ν} b_μ b_ν ⟨ψ_μ²ψ_ν²⟩`.
pub fn energy_order1(b: BitString, modes: &SingleParticleModes, ec: f64) -> f64 {
    let occupied: Vec<usize> = b.ones().collect();
    let mut pairs = 0.0;
    for &mu in &occupied {
        for &nu in &occupied {
            if mu != nu {
                pairs += modes.npoint(&[mu, mu, nu, nu]);
            }
        }
    }
    -ec * occupied.len() as f64 - ec * pairs
}

/// Second-order correction from the pair-exchange and two-mode tensors.
pub fn energy_order2<T: Real>(b: BitString, tensors: &PtTensors<T>) -> T {
    let occ: Vec<usize> = b.ones().collect();
    // The quartic term needs two bosons to act on.
    if occ.len() < 2 {
        return T::zero();
    }

    let mut pair_all = T::zero();
    let mut pair_diag = T::zero();
    for &a in &occ {
        pair_diag += tensors.dsum2(a, a);
        for &c in &occ {
            pair_all += tensors.dsum2(a, c);
        }
    }

    let mut triple_all = T::zero();
    let mut first_two = T::zero();
    let mut outer = T::zero();
    let mut last_two = T::zero();
    let mut diag = T::zero();
    for &a in &occ {
        diag += tensors.f(a, a, a);
        for &c in &occ {
            first_two += tensors.f(a, a, c);
            outer += tensors.f(a, c, a);
            last_two += tensors.f(a, c, c);
            for &m in &occ {
                triple_all += tensors.f(a, c, m);
            }
        }
    }
    let distinct_triples =
        triple_all + T::from_f64(2.0) * diag - first_two - outer - last_two;

    (pair_all - pair_diag) + distinct_triples
}

impl<T: Real> PtTensors<T> {
    pub fn order0(&self, b: BitString) -> T {
        b.ones().map(|mu| self.energy(mu)).sum()
    }

    pub fn order1(&self, b: BitString) -> T {
        let occ: Vec<usize> = b.ones().collect();
        let mut pairs = T::zero();
        for &mu in &occ {
            for &nu in &occ {
                if mu != nu {
                    pairs += self.emat(mu, nu);
                }
            }
        }
        -(T::from_f64(self.ec()) * T::from_f64(occ.len() as f64)) + pairs
    }

    pub fn order2(&self, b: BitString) -> T {
        energy_order2(b, self)
    }

    /// `E_b⁽⁰⁾ + E_b⁽¹⁾ + E_b⁽²⁾`.
    pub fn total(&self, b: BitString) -> T {
        self.order0(b) + self.order1(b) + self.order2(b)
    }

    /// Total PT energies of all `2^N` bit-strings, indexed by mask.
    pub fn all_energies(&self) -> Vec<T> {
        BitString::all(self.n()).map(|b| self.total(b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disorder::{generate_pattern, DisorderSpec};
    use crate::lattice::Lattice;
    use crate::mbpt::tensors::DEFAULT_DENOM_TOL;
    use crate::modes::single_particle_modes;

    fn setup(j: f64) -> (SingleParticleModes, PtTensors) {
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        let m = single_particle_modes(&lat, &p, j).unwrap();
        let t = PtTensors::build(&m, 0.33, DEFAULT_DENOM_TOL);
        (m, t)
    }

    #[test]
    fn trivial_cases() {
        let (m, t) = setup(0.001);
        let zero = BitString::zeros(6);
        assert_eq!(energy_order0(zero, &m), 0.0);
        assert_eq!(energy_order1(zero, &m, 0.33), 0.0);
        assert_eq!(energy_order2(zero, &t), 0.0);
        for mu in 0..6 {
            let e = BitString::from_positions(6, &[mu]).unwrap();
            assert_eq!(energy_order0(e, &m), m.energy(mu));
            assert_eq!(energy_order1(e, &m, 0.33), -0.33);
        }
        let full = BitString::new(0b111111, 6).unwrap();
        let sum: f64 = m.energies().iter().sum();
        assert!((energy_order0(full, &m) - sum).abs() < 1e-12);
    }

    #[test]
    fn decoupled_limits() {
        let (m, t) = setup(0.0);
        for b in BitString::all(6) {
            assert_eq!(energy_order1(b, &m, 0.33), -0.33 * f64::from(b.weight()));
            assert_eq!(energy_order2(b, &t), 0.0);
        }
    }

    #[test]
    fn tensor_and_direct_first_order_agree() {
        let (m, t) = setup(0.001);
        for b in BitString::all(6) {
            let direct = energy_order1(b, &m, 0.33);
            assert!((t.order1(b) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn coupling_scaling() {
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        let m = single_particle_modes(&lat, &p, 0.001).unwrap();
        let t1: PtTensors = PtTensors::build(&m, 0.33, DEFAULT_DENOM_TOL);
        let t2: PtTensors = PtTensors::build(&m, 0.66, DEFAULT_DENOM_TOL);
        for b in BitString::all(6) {
            assert_eq!(energy_order1(b, &m, 0.66), 2.0 * energy_order1(b, &m, 0.33));
            assert_eq!(energy_order2(b, &t2), 4.0 * energy_order2(b, &t1));
        }
    }
}
