//! Enumerates the alpha-orientations of the octahedron by flips and checks
//! the count against brute force over all 2^|E| orientations.

use alphaflip::analysis::diameter_and_height;
use alphaflip::families::octahedron;
use alphaflip::orientations::{brute_force_orientations, DEFAULT_STATE_CAP};

fn main() -> alphaflip::Result<()> {
    let f = octahedron();
    let lat = f.lattice()?;
    let space = lat.enumerate(DEFAULT_STATE_CAP)?;
    let brute = brute_force_orientations(&f.graph, &f.alpha, DEFAULT_STATE_CAP)?;
    println!("essential cycles: {}", lat.num_cycles());
    println!("states by flips: {}, by brute force: {}", space.len(), brute.len());
    println!("min: {}", lat.min().to_bitstring());
    println!("max: {}", lat.max().to_bitstring());
    let d = diameter_and_height(&space);
    println!("diameter {}, height {}, d(min, max) {}", d.diameter, d.height, d.min_to_max);
    print!("{}", space.potentials_csv().lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
