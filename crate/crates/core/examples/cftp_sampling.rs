//! Exact uniform sampling by monotone coupling from the past, checked with a
//! chi-square test against the enumerated state space.

use alphaflip::analysis::{uniformity_test, DEFAULT_SIGNIFICANCE};
use alphaflip::chains::{cftp_sample, ChainKind};
use alphaflip::families::octahedron;
use alphaflip::orientations::DEFAULT_STATE_CAP;
use rayon::prelude::*;

fn main() -> alphaflip::Result<()> {
    let f = octahedron();
    let lat = f.lattice()?;
    let space = lat.enumerate(DEFAULT_STATE_CAP)?;
    let samples = (0..20_000u64)
        .into_par_iter()
        .map(|seed| cftp_sample(ChainKind::FaceFlip, &lat, seed))
        .collect::<alphaflip::Result<Vec<_>>>()?;
    let rep = uniformity_test(&space, &samples, DEFAULT_SIGNIFICANCE)?;
    println!(
        "{} states, {} samples: chi2 = {:.3} on {} dof, p = {:.4} -> {}",
        space.len(),
        samples.len(),
        rep.statistic,
        rep.dof,
        rep.p_value,
        if rep.passed { "uniform" } else { "rejected" }
    );
    // tower chains are not monotone
    println!("{}", cftp_sample(ChainKind::Tower, &lat, 0).unwrap_err());
    Ok(())
}
