//! Writes a family instance as JSON, reads it back and rebuilds its lattice.

use alphaflip::families::tri_t_subdiv;
use alphaflip::io::{load_json, GraphDoc};
use alphaflip::orientations::AlphaLattice;

fn main() -> alphaflip::Result<()> {
    let f = tri_t_subdiv(3, 2)?;
    let text = GraphDoc::from_instance(&f).to_json();
    let loaded = load_json(&text)?;
    let lat = AlphaLattice::new(&loaded.graph, loaded.alpha.as_ref().unwrap())?;
    println!("{} bytes of JSON, {} vertices, {} markers", text.len(), loaded.graph.num_vertices(), loaded.markers.len());
    println!("reference state survives: {}", loaded.reference == f.reference);
    println!("lattice height {}", lat.height());
    println!("canonical: {}", GraphDoc::parse(&text)?.to_json() == text);
    Ok(())
}
