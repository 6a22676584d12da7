//! Two orientations that differ by reversing one directed cycle yet have the
//! same directed faces: the trivial face-flip coupling can never change their
//! distance.

use alphaflip::chains::{distance_change_probability, expected_distance_change, ChainKind};
use alphaflip::families::hardness_example;

fn main() -> alphaflip::Result<()> {
    let (f, x, y) = hardness_example();
    let lat = f.lattice()?;
    println!("{} vertices, {} faces, distance {}", f.graph.num_vertices(), lat.num_cycles(), lat.lattice_distance(&x, &y));
    println!("x: {}", x.to_bitstring());
    println!("y: {}", y.to_bitstring());
    for kind in ChainKind::ALL {
        println!(
            "{:>10}: P(distance changes) = {}, E[change] = {}",
            kind.name(),
            distance_change_probability(kind, &lat, &x, &y),
            expected_distance_change(kind, &lat, &x, &y)
        );
    }
    Ok(())
}
