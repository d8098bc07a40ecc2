//! Residual crosstalk in coupled transmon arrays.
//!
//! A `2 × L` array of transmons with patterned frequencies is modelled as a
//! Bose-Hubbard system. The qubit spectrum `E_b` and its Walsh-Hadamard
//! (multi-qubit ZZ) coefficients `w_b` are obtained either by exact
//! diagonalization for small arrays or by second-order perturbation theory
//! in the anharmonicity, which scales polynomially and reaches `2 × 20`.
//!
//! ```
//! use transmon_crosstalk::prelude::*;
//!
//! let lattice = Lattice::new(3)?;
//! let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0))?;
//! let modes = single_particle_modes(&lattice, &pattern, 0.001)?;
//! let tensors = PtTensors::<f64>::build(&modes, 0.33, DEFAULT_DENOM_TOL);
//! let zz = wh_pt_total(&[0, 1], &tensors)?;
//! assert!(zz.abs() < 1e-3);
//! # Ok::<(), transmon_crosstalk::Error>(())
//! ```

pub mod assignment;
pub mod bits;
pub mod cli;
pub mod disorder;
pub mod ed;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod mbpt;
pub mod modes;
pub mod precision;
pub mod walsh;

pub use error::{Error, Result};

/// The types and functions most programs need.
pub mod prelude {
    pub use crate::bits::BitString;
    pub use crate::disorder::{
        generate_pattern, matched_sigma, metallic_aa_frequency, DisorderKind, DisorderPattern,
        DisorderSpec,
    };
    pub use crate::ed::{solve_qubit_spectrum, EdOptions, SpectrumTable};
    pub use crate::error::{Error, Result};
    pub use crate::lattice::{build_lattice, Lattice, Site};
    pub use crate::mbpt::{
        energy_order0, energy_order1, energy_order2, wh_pt, wh_pt_total, PtTensors,
        DEFAULT_DENOM_TOL,
    };
    pub use crate::modes::{build_h0, eigendecompose, single_particle_modes, SingleParticleModes};
    pub use crate::precision::{DoubleDouble, Real};
    pub use crate::walsh::{inverse_walsh_hadamard, walsh_hadamard, WalshTable};
}
