//! Closed-form perturbative Walsh-Hadamard coefficients order by order, and
//! a check against the transform of the perturbative energies.

use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let lattice = Lattice::new(3)?;
    let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0))?;
    let modes = single_particle_modes(&lattice, &pattern, 1e-3)?;
    let tensors: PtTensors = PtTensors::build(&modes, 0.33, DEFAULT_DENOM_TOL);

    println!("pair   order0     order1 (kHz)  order2 (kHz)  total (kHz)");
    for &(a, b) in lattice.bonds() {
        let orders: Vec<f64> = (0..=2).map(|k| wh_pt(&[a, b], k, &tensors)).collect::<Result<_>>()?;
        let total = wh_pt_total(&[a, b], &tensors)?;
        println!(
            "{a},{b}    {:+.1e}   {:+.4}       {:+.4}       {:+.4}",
            orders[0],
            orders[1] * 1e6,
            orders[2] * 1e6,
            total * 1e6
        );
    }

    // Same numbers from all 2^N energies.
    let fast = walsh_hadamard(&tensors.all_energies())?;
    let worst = BitString::all(6)
        .filter(|b| b.weight() <= 3)
        .map(|b| {
            let p: Vec<usize> = b.ones().collect();
            Ok((fast.get(b) - wh_pt_total(&p, &tensors)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("max |FWHT - closed form| = {worst:.1e} GHz");
    for r in tensors.resonances() {
        println!("resonance: {r:?}");
    }
    Ok(())
}
