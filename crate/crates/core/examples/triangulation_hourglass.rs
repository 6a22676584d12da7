//! The triangulations T_n: part sizes of the hour-glass partition grow like
//! (2+sqrt 3)^n, and so do the directed path counts of the central state.

use alphaflip::analysis::{count_directed_paths, hourglass_bound, kernel, part_sizes, path_recurrence};
use alphaflip::chains::ChainKind;
use alphaflip::families::tri_t;
use alphaflip::orientations::DEFAULT_STATE_CAP;

fn main() -> alphaflip::Result<()> {
    println!("k,h_k,g_k");
    for (k, (h, g)) in path_recurrence(8).into_iter().enumerate() {
        println!("{},{h},{g}", k + 1);
    }
    println!();
    println!("n,states,left,central,right,bound");
    for n in 1..=3 {
        let f = tri_t(n)?;
        let lat = f.lattice()?;
        let space = lat.enumerate(DEFAULT_STATE_CAP)?;
        let labels = f.classifier.as_ref().unwrap().labels(&f.graph, &space).unwrap();
        let (l, c, r) = part_sizes(&labels);
        let bound = hourglass_bound(&kernel(ChainKind::FaceFlip, &lat, &space)?, &labels)?;
        println!("{n},{},{l},{c},{r},{bound}", space.len());
    }
    let f = tri_t(4)?;
    let x = f.reference.as_ref().unwrap();
    for k in 1..=5 {
        let p = count_directed_paths(&f.graph, x, f.marker("x0"), f.marker(&format!("x{k}")))?;
        println!("T_4 central state: {p} directed paths x0 -> x{k}");
    }
    Ok(())
}
