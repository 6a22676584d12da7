//! Exact conductance of small chains next to the hour-glass bound.

use alphaflip::analysis::{conductance_csv, exact_conductance, hourglass_bound, kernel, ConductanceRow, CONDUCTANCE_MAX_STATES};
use alphaflip::chains::ChainKind;
use alphaflip::families::{quad_q, tri_t, FamilyInstance};
use alphaflip::orientations::DEFAULT_STATE_CAP;

fn row(f: &FamilyInstance, kind: ChainKind) -> alphaflip::Result<ConductanceRow> {
    let lat = f.lattice()?;
    let space = lat.enumerate(DEFAULT_STATE_CAP)?;
    let labels = f.classifier.as_ref().unwrap().labels(&f.graph, &space).unwrap();
    let k = kernel(kind, &lat, &space)?;
    Ok(ConductanceRow {
        family: format!("{}/{}", f.family, kind.name()),
        param: f.params[0].to_string(),
        states: space.len(),
        bound: hourglass_bound(&k, &labels)?,
        exact: (space.len() <= CONDUCTANCE_MAX_STATES).then(|| exact_conductance(&k)).transpose()?,
    })
}

fn main() -> alphaflip::Result<()> {
    // the hour-glass bound needs face flips: a tower move may jump from
    // left to right directly
    let rows = [quad_q(2)?, quad_q(3)?, quad_q(4)?, tri_t(1)?, tri_t(2)?, tri_t(3)?]
        .iter()
        .map(|f| row(f, ChainKind::FaceFlip))
        .collect::<alphaflip::Result<Vec<_>>>()?;
    print!("{}", conductance_csv(&rows));
    println!();
    let f = quad_q(3)?;
    let lat = f.lattice()?;
    let space = lat.enumerate(DEFAULT_STATE_CAP)?;
    for kind in ChainKind::ALL {
        println!("Q_3 {:>10}: exact conductance {}", kind.name(), exact_conductance(&kernel(kind, &lat, &space)?)?);
    }
    Ok(())
}
