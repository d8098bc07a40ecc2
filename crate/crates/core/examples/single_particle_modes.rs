//! Dressed single-particle modes of a weakly coupled 2 × 3 array: energies,
//! home-site weights and the first few correlators.

use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let lattice = Lattice::new(3)?;
    let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0))?;
    let modes = single_particle_modes(&lattice, &pattern, 1e-3)?;

    println!("mode  omega_site  E_mode      home weight");
    for mu in 0..modes.n() {
        println!(
            "{mu:>4}  {:.6}  {:.9}  {:.6}",
            pattern.frequencies[mu],
            modes.energy(mu),
            modes.home_weights()[mu]
        );
    }
    println!("<psi_0^2 psi_1^2> = {:.3e}", modes.npoint(&[0, 0, 1, 1]));
    println!("<psi_0^4>         = {:.6}", modes.npoint(&[0, 0, 0, 0]));
    for w in modes.warnings() {
        println!("warning: {w}");
    }
    Ok(())
}
