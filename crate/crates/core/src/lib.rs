pub mod analysis;
pub mod chains;
pub mod cli;
pub mod error;
pub mod families;
mod flow;
pub mod io;
pub mod orientations;
pub mod planegraph;
pub mod structures;

pub use error::{Error, Result};
