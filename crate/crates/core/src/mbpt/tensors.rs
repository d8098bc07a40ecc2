//! First- and second-order interaction tensors in the dressed-mode basis.
//!
//! All tensors are assembled from one table of four-point functions
//! `Ψ_{αβμν} = Σ_i ψ_α(i)ψ_β(i)ψ_μ(i)ψ_ν(i)`, computed once as the Gram matrix
//! of the pair products `ψ_αψ_β` (`O(N⁵)` multiply-adds).

use rayon::prelude::*;
use serde::Serialize;

use crate::modes::SingleParticleModes;
use crate::precision::Real;

/// Default threshold below which an energy denominator is reported (GHz).
pub const DEFAULT_DENOM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceKind {
    /// Small `E_μ − E_ν` in the two-mode tensor.
    Site,
    /// Small `E_α + E_β − E_μ − E_ν` in the pair-exchange tensor.
    Mode,
}

/// A tensor entry whose energy denominator fell below the threshold.
///
/// Only one representative per symmetry orbit is listed: `α ≤ β, μ < ν` for
/// site resonances and `α ≤ β, μ ≤ ν, (α,β) < (μ,ν)` for mode resonances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resonance {
    pub kind: ResonanceKind,
    pub indices: [usize; 4],
    pub denominator_ghz: f64,
    /// The denominator was exactly zero and the entry was set to zero.
    pub zeroed: bool,
}

/// The `𝓔`, `𝓢` and `𝓓` tensors plus the partial sums the energy formulas
/// need. Generic over the scalar so that reference checks can run in
/// [`DoubleDouble`](crate::precision::DoubleDouble).
#[derive(Debug, Clone)]
pub struct PtTensors<T: Real = f64> {
    n: usize,
    ec: f64,
    energies: Vec<T>,
    emat: Vec<T>,
    s: Vec<T>,
    d: Vec<T>,
    dsum2: Vec<T>,
    f: Vec<T>,
    resonances: Vec<Resonance>,
}

/// `Ψ_{αβμν}` laid out as `((α·N + β)·N + μ)·N + ν`.
pub fn four_point_table<T: Real>(modes: &SingleParticleModes) -> Vec<T> {
    let n = modes.n();
    let n2 = n * n;
    let mut pairs = vec![T::zero(); n2 * n];
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                pairs[(a * n + b) * n + i] = modes.psi_as::<T>(a, i) * modes.psi_as::<T>(b, i);
            }
        }
    }
    let mut table = vec![T::zero(); n2 * n2];
    table.par_chunks_mut(n2.max(1)).enumerate().for_each(|(p, row)| {
        let lhs = &pairs[p * n..(p + 1) * n];
        for (q, out) in row.iter_mut().enumerate() {
            let rhs = &pairs[q * n..(q + 1) * n];
            let mut acc = T::zero();
            for i in 0..n {
                acc += lhs[i] * rhs[i];
            }
            *out = acc;
        }
    });
    table
}

/// `𝓔_{μν} = −E_C ⟨ψ_μ²ψ_ν²⟩`, row-major `N × N`, diagonal included.
pub fn tensor_e(modes: &SingleParticleModes, ec: f64) -> Vec<f64> {
    let psi4 = four_point_table::<f64>(modes);
    emat_from(&psi4, modes.n(), ec)
}

/// `𝓢_{αβμν}` as a flat `N⁴` array, with the resonance report.
pub fn tensor_s(modes: &SingleParticleModes, ec: f64, denom_tol: f64) -> (Vec<f64>, Vec<Resonance>) {
    let psi4 = four_point_table::<f64>(modes);
    let energies = energies_as::<f64>(modes);
    s_from(&psi4, &energies, ec, denom_tol)
}

/// `𝓓_{αβμν}` as a flat `N⁴` array, with the resonance report.
pub fn tensor_d(modes: &SingleParticleModes, ec: f64, denom_tol: f64) -> (Vec<f64>, Vec<Resonance>) {
    let psi4 = four_point_table::<f64>(modes);
    let energies = energies_as::<f64>(modes);
    d_from(&psi4, &energies, ec, denom_tol)
}

fn energies_as<T: Real>(modes: &SingleParticleModes) -> Vec<T> {
    (0..modes.n()).map(|mu| modes.energy_as::<T>(mu)).collect()
}

fn emat_from<T: Real>(psi4: &[T], n: usize, ec: f64) -> Vec<T> {
    let ec = T::from_f64(ec);
    let mut emat = vec![T::zero(); n * n];
    for mu in 0..n {
        for nu in 0..n {
            emat[mu * n + nu] = -(ec * psi4[((mu * n + mu) * n + nu) * n + nu]);
        }
    }
    emat
}

fn s_from<T: Real>(psi4: &[T], energies: &[T], ec: f64, tol: f64) -> (Vec<T>, Vec<Resonance>) {
    let n = energies.len();
    let n2 = n * n;
    let n3 = n2 * n;
    let ec = T::from_f64(ec);
    let c4 = T::from_f64(4.0) * (ec * ec);
    let mut s = vec![T::zero(); n3 * n];
    let reports: Vec<Vec<Resonance>> = s
        .par_chunks_mut(n3.max(1))
        .enumerate()
        .map(|(a, block)| {
            let mut found = Vec::new();
            for b in 0..n {
                for m in 0..n {
                    for nu in 0..n {
                        if m == nu {
                            continue;
                        }
                        let pair = m * n + nu;
                        let num = c4 * (psi4[(a * n + a) * n2 + pair] * psi4[(b * n + b) * n2 + pair]);
                        let den = energies[m] - energies[nu];
                        let value = settle(num, den, tol, || {
                            (a <= b && m < nu).then_some((ResonanceKind::Site, [a, b, m, nu]))
                        }, &mut found);
                        block[(b * n + m) * n + nu] = value;
                    }
                }
            }
            found
        })
        .collect();
    (s, reports.into_iter().flatten().collect())
}

/// Denominator of `𝓓_{αβμν}`. When an upper and a lower index coincide the
/// common energy is cancelled symbolically, which keeps every symmetry of
/// the tensor exact in floating point.
fn d_denominator<T: Real>(e: &[T], a: usize, b: usize, m: usize, nu: usize) -> T {
    if a == m {
        e[b] - e[nu]
    } else if a == nu {
        e[b] - e[m]
    } else if b == m {
        e[a] - e[nu]
    } else if b == nu {
        e[a] - e[m]
    } else {
        (e[a] + e[b]) - (e[m] + e[nu])
    }
}

fn d_from<T: Real>(psi4: &[T], energies: &[T], ec: f64, tol: f64) -> (Vec<T>, Vec<Resonance>) {
    let n = energies.len();
    let n2 = n * n;
    let n3 = n2 * n;
    let ec = T::from_f64(ec);
    let ec2 = ec * ec;
    let mut d = vec![T::zero(); n3 * n];
    let reports: Vec<Vec<Resonance>> = d
        .par_chunks_mut(n3.max(1))
        .enumerate()
        .map(|(a, block)| {
            let mut found = Vec::new();
            for b in 0..n {
                for m in 0..n {
                    for nu in 0..n {
                        if (a == m && b == nu) || (a == nu && b == m) {
                            continue;
                        }
                        let x = psi4[(a * n + b) * n2 + m * n + nu];
                        let num = ec2 * (x * x);
                        let den = d_denominator(energies, a, b, m, nu);
                        let value = settle(num, den, tol, || {
                            (a <= b && m <= nu && (a, b) < (m, nu))
                                .then_some((ResonanceKind::Mode, [a, b, m, nu]))
                        }, &mut found);
                        block[(b * n + m) * n + nu] = value;
                    }
                }
            }
            found
        })
        .collect();
    (d, reports.into_iter().flatten().collect())
}

/// Divides, recording small denominators on canonical entries. An exactly
/// zero denominator yields a zero entry.
fn settle<T: Real>(
    num: T,
    den: T,
    tol: f64,
    canonical: impl FnOnce() -> Option<(ResonanceKind, [usize; 4])>,
    found: &mut Vec<Resonance>,
) -> T {
    let zero_den = den.is_zero();
    if !num.is_zero() && den.abs().to_f64() < tol {
        if let Some((kind, indices)) = canonical() {
            found.push(Resonance {
                kind,
                indices,
                denominator_ghz: den.to_f64(),
                zeroed: zero_den,
            });
        }
    }
    if zero_den {
        T::zero()
    } else {
        num / den
    }
}

impl<T: Real> PtTensors<T> {
    /// Assembles every tensor from the modes with interaction strength `ec`.
    pub fn build(modes: &SingleParticleModes, ec: f64, denom_tol: f64) -> Self {
        let n = modes.n();
        let psi4 = four_point_table::<T>(modes);
        let energies = energies_as::<T>(modes);
        let emat = emat_from(&psi4, n, ec);
        let (s, mut resonances) = s_from(&psi4, &energies, ec, denom_tol);
        let (d, mode_res) = d_from(&psi4, &energies, ec, denom_tol);
        drop(psi4);
        resonances.extend(mode_res);

        let two = T::from_f64(2.0);
        let n2 = n * n;
        let dsum2 = (0..n2)
            .map(|p| d[p * n2..(p + 1) * n2].iter().copied().sum())
            .collect();
        let f = (0..n2 * n)
            .map(|t| {
                let base = t * n;
                (0..n).map(|k| two * d[base + k] + s[base + k]).sum()
            })
            .collect();

        Self {
            n,
            ec,
            energies,
            emat,
            s,
            d,
            dsum2,
            f,
            resonances,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ec(&self) -> f64 {
        self.ec
    }

    pub fn energy(&self, mu: usize) -> T {
        self.energies[mu]
    }

    pub fn emat(&self, mu: usize, nu: usize) -> T {
        self.emat[mu * self.n + nu]
    }

    pub fn s(&self, a: usize, b: usize, m: usize, nu: usize) -> T {
        self.s[self.index(a, b, m, nu)]
    }

    pub fn d(&self, a: usize, b: usize, m: usize, nu: usize) -> T {
        self.d[self.index(a, b, m, nu)]
    }

    /// `Σ_{αβ} 𝓓_{μναβ}`.
    pub fn dsum2(&self, mu: usize, nu: usize) -> T {
        self.dsum2[mu * self.n + nu]
    }

    /// `Σ_β (2𝓓_{μναβ} + 𝓢_{μναβ})`.
    pub fn f(&self, mu: usize, nu: usize, a: usize) -> T {
        self.f[(mu * self.n + nu) * self.n + a]
    }

    /// Entries whose energy denominator fell below the threshold.
    pub fn resonances(&self) -> &[Resonance] {
        &self.resonances
    }

    fn index(&self, a: usize, b: usize, m: usize, nu: usize) -> usize {
        ((a * self.n + b) * self.n + m) * self.n + nu
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disorder::{generate_pattern, DisorderPattern, DisorderSpec};
    use crate::lattice::Lattice;
    use crate::modes::single_particle_modes;

    fn paper(j: f64) -> SingleParticleModes {
        let lat = Lattice::new(3).unwrap();
        let p = generate_pattern(&lat, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
        single_particle_modes(&lat, &p, j).unwrap()
    }

    #[test]
    fn decoupled_tensors() {
        let m = paper(0.0);
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        for mu in 0..6 {
            for nu in 0..6 {
                let expected = if mu == nu { -0.33 } else { 0.0 };
                assert_eq!(t.emat(mu, nu), expected);
            }
        }
        assert!(t.s.iter().all(|&v| v == 0.0));
        assert!(t.d.iter().all(|&v| v == 0.0));
        assert!(t.resonances().is_empty());
    }

    #[test]
    fn emat_sign_and_locality() {
        let m = paper(0.001);
        let lat = Lattice::new(3).unwrap();
        let e = tensor_e(&m, 0.33);
        let mut near: f64 = 0.0;
        let mut far: f64 = 0.0;
        for mu in 0..6 {
            for nu in 0..6 {
                assert_eq!(e[mu * 6 + nu], e[nu * 6 + mu]);
                if mu == nu {
                    continue;
                }
                assert!(e[mu * 6 + nu] < 0.0);
                if lat.distance(mu, nu) == 1 {
                    near = near.max(e[mu * 6 + nu].abs());
                } else {
                    far = far.max(e[mu * 6 + nu].abs());
                }
            }
        }
        assert!(near > far);
    }

    #[test]
    fn symmetries_are_exact() {
        let m = paper(0.001);
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        let n = 6;
        for a in 0..n {
            for b in 0..n {
                for mu in 0..n {
                    assert_eq!(t.s(a, b, mu, mu), 0.0);
                    for nu in 0..n {
                        assert_eq!(t.s(a, b, mu, nu), t.s(b, a, mu, nu));
                        assert_eq!(t.s(a, b, mu, nu), -t.s(a, b, nu, mu));
                        assert_eq!(t.d(a, b, mu, nu), t.d(b, a, mu, nu));
                        assert_eq!(t.d(a, b, mu, nu), t.d(a, b, nu, mu));
                        assert_eq!(t.d(a, b, mu, nu), -t.d(mu, nu, a, b));
                    }
                }
                assert_eq!(t.d(a, b, a, b), 0.0);
                assert_eq!(t.d(a, b, b, a), 0.0);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for nu in 0..n {
                    let lhs = t.s(a, a, b, nu);
                    let rhs = 4.0 * t.d(a, b, a, nu);
                    assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn free_functions_match_struct() {
        let m = paper(0.001);
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        let (s, _) = tensor_s(&m, 0.33, DEFAULT_DENOM_TOL);
        let (d, _) = tensor_d(&m, 0.33, DEFAULT_DENOM_TOL);
        assert_eq!(s, t.s);
        assert_eq!(d, t.d);
    }

    #[test]
    fn zero_denominator_gives_zero_entry() {
        let mut found = Vec::new();
        let v = settle(1.0, 0.0, 1e-6, || Some((ResonanceKind::Mode, [0, 1, 2, 3])), &mut found);
        assert_eq!(v, 0.0);
        assert_eq!(found.len(), 1);
        assert!(found[0].zeroed);

        let v = settle(1.0, 5e-7, 1e-6, || None, &mut found);
        assert_eq!(v, 2e6);
        assert_eq!(found.len(), 1, "non-canonical entries are not listed");
    }

    #[test]
    fn degenerate_frequencies_stay_finite() {
        // Two identical, uncoupled rungs: modes 0 and 2 share an energy.
        let lat = Lattice::new(2).unwrap();
        let p = DisorderPattern::from_frequencies(vec![5.0, 5.0, 5.3, 5.3]);
        let m = single_particle_modes(&lat, &p, 0.0).unwrap();
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        assert!(t.s.iter().chain(&t.d).all(|v| v.is_finite()));
        assert!(t.resonances().is_empty(), "zero numerators are not resonances");

        let m = single_particle_modes(&lat, &p, 0.001).unwrap();
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        assert!(t.s.iter().chain(&t.d).all(|v| v.is_finite()));
    }

    #[test]
    fn near_resonance_reported() {
        let lat = Lattice::new(1).unwrap();
        let p = DisorderPattern::from_frequencies(vec![5.0, 5.0 + 2e-7]);
        let m = single_particle_modes(&lat, &p, 1e-9).unwrap();
        let t = PtTensors::<f64>::build(&m, 0.33, DEFAULT_DENOM_TOL);
        assert!(t
            .resonances()
            .iter()
            .any(|r| r.kind == ResonanceKind::Site && r.indices[2] == 0 && r.indices[3] == 1));
        for r in t.resonances() {
            let [a, b, mu, nu] = r.indices;
            assert!(a <= b && mu <= nu);
        }
    }
}
