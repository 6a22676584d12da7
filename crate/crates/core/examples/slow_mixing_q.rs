//! The quadrangulations Q_n: an hour-glass partition with a single central
//! state forces exponentially slow mixing of the face-flip chain.

use alphaflip::analysis::{hourglass_bound, kernel, mixing_time, part_sizes};
use alphaflip::chains::ChainKind;
use alphaflip::families::quad_q;
use alphaflip::orientations::DEFAULT_STATE_CAP;

fn main() -> alphaflip::Result<()> {
    println!("n,states,left,central,right,bound,tau_mix");
    for n in 2..=5 {
        let f = quad_q(n)?;
        let lat = f.lattice()?;
        let space = lat.enumerate(DEFAULT_STATE_CAP)?;
        let labels = f.classifier.as_ref().unwrap().labels(&f.graph, &space).unwrap();
        let (l, c, r) = part_sizes(&labels);
        let k = kernel(ChainKind::FaceFlip, &lat, &space)?;
        let bound = hourglass_bound(&k, &labels)?;
        let tau = mixing_time(&k, 1 << 24)?;
        println!("{n},{},{l},{c},{r},{bound},{tau}", space.len());
    }
    Ok(())
}
