//! Independent reference implementations shared by the integration tests
//! and the acceptance harness.

#![allow(dead_code)]

use std::collections::BTreeMap;

use transmon_crosstalk::prelude::*;

/// `2 × L` metallic Aubry-André array at `⟨ω⟩ = 5.5 GHz`, `Δ = 1 GHz`.
pub fn aa_system(l: usize) -> (Lattice, DisorderPattern) {
    let lattice = Lattice::new(l).unwrap();
    let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0)).unwrap();
    (lattice, pattern)
}

/// `Σ_i ψ_a(i) ψ_b(i) ψ_c(i) ψ_d(i)` evaluated directly from the modes.
fn overlap4<T: Real>(modes: &SingleParticleModes, idx: [usize; 4]) -> T {
    (0..modes.n())
        .map(|i| {
            modes.psi_as::<T>(idx[0], i)
                * modes.psi_as::<T>(idx[1], i)
                * modes.psi_as::<T>(idx[2], i)
                * modes.psi_as::<T>(idx[3], i)
        })
        .sum()
}

/// Matrix elements `⟨n| Σ c†_μ c†_ν c_ρ c_σ Ψ_{μνρσ} |b⟩ / √(Π n_μ!)` for
/// every Fock state `n` reached from the qubit state `b` in the dressed
/// basis. The bosonic factor is the same for every path into a given `n`,
/// so it is applied by the caller.
fn quartic_column<T: Real>(b: BitString, modes: &SingleParticleModes) -> BTreeMap<Vec<u8>, T> {
    let n = modes.n();
    let occupied: Vec<usize> = b.ones().collect();
    let start: Vec<u8> = (0..n).map(|i| u8::from(b.get(i))).collect();
    let mut column: BTreeMap<Vec<u8>, T> = BTreeMap::new();
    for &rho in &occupied {
        for &sigma in &occupied {
            if rho == sigma {
                continue;
            }
            let mut hole = start.clone();
            hole[rho] -= 1;
            hole[sigma] -= 1;
            for mu in 0..n {
                for nu in 0..n {
                    let mut target = hole.clone();
                    target[mu] += 1;
                    target[nu] += 1;
                    let amp = overlap4::<T>(modes, [mu, nu, rho, sigma]);
                    *column.entry(target).or_insert_with(T::zero) += amp;
                }
            }
        }
    }
    column
}

fn factorial_product(occ: &[u8]) -> f64 {
    occ.iter()
        .map(|&k| (1..=u32::from(k)).product::<u32>() as f64)
        .product()
}

/// Unperturbed energy difference `E_b − E_n`, summed only over modes whose
/// occupation changes.
fn unperturbed_gap<T: Real>(start: &[u8], target: &[u8], modes: &SingleParticleModes) -> T {
    let mut gap = T::zero();
    for (mu, (&s, &t)) in start.iter().zip(target).enumerate() {
        if s != t {
            gap += T::from_f64(f64::from(s) - f64::from(t)) * modes.energy_as::<T>(mu);
        }
    }
    gap
}

/// Brute-force first-order shift of the normal-ordered quartic term
/// `W = −(E_C/2) Σ_i a†_i a†_i a_i a_i`, plus the exact `−E_C` per boson
/// from the one-body part of the Bose-Hubbard anharmonicity.
pub fn oracle_order1<T: Real>(b: BitString, modes: &SingleParticleModes, ec: f64) -> T {
    let start: Vec<u8> = (0..modes.n()).map(|i| u8::from(b.get(i))).collect();
    let column = quartic_column::<T>(b, modes);
    let diag = column.get(&start).copied().unwrap_or_else(T::zero);
    let half = T::from_f64(0.5 * ec);
    -(T::from_f64(ec) * T::from_f64(f64::from(b.weight()))) - half * diag
}

/// Brute-force Rayleigh-Schrödinger second order,
/// `Σ_{n≠b} |⟨n|W|b⟩|² / (E_b − E_n)`.
pub fn oracle_order2<T: Real>(b: BitString, modes: &SingleParticleModes, ec: f64) -> T {
    let start: Vec<u8> = (0..modes.n()).map(|i| u8::from(b.get(i))).collect();
    let column = quartic_column::<T>(b, modes);
    let quarter = T::from_f64(0.25 * ec * ec);
    let mut total = T::zero();
    for (target, amp) in column {
        if target == start || amp.is_zero() {
            continue;
        }
        let gap = unperturbed_gap::<T>(&start, &target, modes);
        let bose = T::from_f64(factorial_product(&target));
        total += quarter * bose * amp * amp / gap;
    }
    total
}

/// Pearson correlation coefficient and least-squares slope of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    (sxy / sxx, sxy / (sxx * syy).sqrt())
}
