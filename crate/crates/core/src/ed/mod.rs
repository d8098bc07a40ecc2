//! Exact diagonalization of the Bose-Hubbard model.
//!
//! The Hamiltonian conserves the total excitation number, so each sector
//! `k = 0..=N` is diagonalized on its own and no occupation cutoff is needed.

mod fock;
mod hamiltonian;
mod spectrum;

pub use fock::{enumerate_sector, sector_dim, FockSector};
pub use hamiltonian::{build_hbh, SparseSymmetric};
pub use spectrum::{
    check_ed_size, dressed_product_vector, sector_energies, solve_qubit_spectrum, EdOptions,
    LabelWarning,
    SpectrumTable,
};
