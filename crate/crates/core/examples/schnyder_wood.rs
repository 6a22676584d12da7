//! Every 3-orientation of T_2 is the orientation of exactly one Schnyder
//! wood: color all of them and validate.

use alphaflip::families::tri_t;
use alphaflip::orientations::DEFAULT_STATE_CAP;
use alphaflip::structures::{color_schnyder_wood, forget, validate};

fn main() -> alphaflip::Result<()> {
    let f = tri_t(2)?;
    let lat = f.lattice()?;
    let space = lat.enumerate(DEFAULT_STATE_CAP)?;
    let corners = [f.marker("ar"), f.marker("ag"), f.marker("ab")];
    let mut ok = 0;
    for x in &space.states {
        let c = color_schnyder_wood(&f.graph, x, corners)?;
        if validate(&f.graph, &c).is_valid() && &forget(&c) == x {
            ok += 1;
        }
    }
    println!("{ok} of {} states give valid Schnyder woods", space.len());
    let c = color_schnyder_wood(&f.graph, f.reference.as_ref().unwrap(), corners)?;
    for (e, col) in c.colors.iter().enumerate() {
        let (a, b) = c.orientation.arc(&f.graph, e);
        println!("{a} -> {b}: {}", col.map_or("outer", |k| k.name()));
    }
    Ok(())
}
