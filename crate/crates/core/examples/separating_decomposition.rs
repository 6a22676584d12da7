//! The separating decomposition of a grid quadrangulation read off from its
//! 2-orientation, validated and printed as colored DOT.

use alphaflip::families::quad_grid;
use alphaflip::structures::{color_separating_decomposition, forget, to_dot, validate};

fn main() -> alphaflip::Result<()> {
    let f = quad_grid(3, 3)?;
    let lat = f.lattice()?;
    let x = lat.max();
    let c = color_separating_decomposition(&f.graph, x, f.marker("s"), f.marker("t"))?;
    let rep = validate(&f.graph, &c);
    println!("// valid: {}, forget recovers the orientation: {}", rep.is_valid(), &forget(&c) == x);
    print!("{}", to_dot(&f.graph, &c));
    Ok(())
}
