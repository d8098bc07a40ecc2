//! Prints the metallic Aubry-André frequency map of a 2 × 20 array and its
//! matched Gaussian width.
//!
//! ```text
//! cargo run --example potential_map
//! ```

use transmon_crosstalk::prelude::*;

fn main() -> Result<()> {
    let lattice = Lattice::new(20)?;
    let pattern = generate_pattern(&lattice, DisorderSpec::metallic_aa(5.5, 1.0))?;

    for y in 1..=2 {
        let row: Vec<String> = lattice
            .sites()
            .iter()
            .zip(&pattern.frequencies)
            .filter(|(s, _)| s.y == y)
            .map(|(_, w)| format!("{w:.3}"))
            .collect();
        println!("y={y}: {}", row.join(" "));
    }
    println!("matched sigma = {:.4} GHz", matched_sigma(&pattern)?);

    // The same map as CSV, the input of the potential plot.
    pattern.write_csv(&lattice, std::io::sink())?;
    Ok(())
}
