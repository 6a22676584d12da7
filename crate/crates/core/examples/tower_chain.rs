//! Towers in a grid quadrangulation and a short run of the tower chain.

use alphaflip::chains::{find_tower, reverse_tower, run, ChainKind};
use alphaflip::families::quad_grid;

fn main() -> alphaflip::Result<()> {
    let f = quad_grid(4, 4)?;
    let lat = f.lattice()?;
    let x = lat.min();
    for c in 0..lat.num_cycles() {
        if let Some(t) = find_tower(&lat, x, c) {
            let y = reverse_tower(&lat, x, &t)?;
            println!(
                "face {c}: tower of {} faces {:?}, boundary {} edges, {:?}, move probability {}, distance after {}",
                t.len(),
                t.faces,
                t.boundary.len(),
                t.sense,
                t.move_probability(),
                lat.lattice_distance(x, &y)
            );
        }
    }
    let traj = run(ChainKind::Tower, &lat, lat.min(), 2000, 7, 250, None);
    print!("{}", traj.to_csv());
    Ok(())
}
