//! Exact mixing times of the three chains on small grid quadrangulations.

use alphaflip::analysis::{kernel, mixing_time};
use alphaflip::chains::ChainKind;
use alphaflip::families::quad_grid;
use alphaflip::orientations::DEFAULT_STATE_CAP;

fn main() -> alphaflip::Result<()> {
    println!("grid,vertices,states,face,tower,slow_tower");
    for (a, b) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5)] {
        let f = quad_grid(a, b)?;
        let lat = f.lattice()?;
        let space = lat.enumerate(DEFAULT_STATE_CAP)?;
        let taus = ChainKind::ALL
            .iter()
            .map(|&k| mixing_time(&kernel(k, &lat, &space)?, 1 << 24))
            .collect::<alphaflip::Result<Vec<_>>>()?;
        println!("{a}x{b},{},{},{},{},{}", f.graph.num_vertices(), space.len(), taus[0], taus[1], taus[2]);
    }
    Ok(())
}
