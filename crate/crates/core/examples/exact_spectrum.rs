//! Exact qubit spectrum of a 2 × 3 Bose-Hubbard array and its
//! Walsh-Hadamard decomposition.

use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let lattice = Lattice::new(3)?;
    let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0))?;
    let (j, ec) = (1e-3, 0.33);

    let table = solve_qubit_spectrum(&lattice, &pattern, j, ec, &EdOptions::default())?;
    let wh = walsh_hadamard(table.energies())?;

    for b in BitString::all(6).filter(|b| b.weight() <= 1) {
        println!("E[{b}] = {:.9} GHz (overlap {:.4})", table.energy(b), table.overlap(b));
    }
    println!("nearest-neighbour ZZ:");
    for &(a, c) in lattice.bonds() {
        println!("  w[{a},{c}] = {:+.3} kHz", wh.at(&[a, c])? * 1e6);
    }
    println!("{} labelling warnings", table.warnings().len());
    Ok(())
}
