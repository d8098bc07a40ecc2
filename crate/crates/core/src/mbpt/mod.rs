//! Bosonic many-body perturbation theory in the anharmonicity `E_C`.
//!
//! The unperturbed problem is the tight-binding Hamiltonian; qubit states
//! are products of singly occupied dressed modes. Energies are corrected to
//! second order, and their Walsh-Hadamard coefficients are available in
//! closed form without enumerating all `2^N` states.

mod energy;
mod tensors;
mod walsh;

pub use energy::{energy_order0, energy_order1, energy_order2};
pub use tensors::{
    four_point_table, tensor_d, tensor_e, tensor_s, PtTensors, Resonance, ResonanceKind,
    DEFAULT_DENOM_TOL,
};
pub use walsh::{max_range, pt_walsh_rows, write_pt_walsh_csv, wh_pt, wh_pt_total, PtWalshRow};
