pub mod error;
pub mod exact;
pub mod lie;
pub mod affvir;
pub mod pbw;
pub mod highest_weight;
pub mod sugawara;
pub mod loop_tensor;
pub mod irreducibility;
pub mod cli;

pub use error::{Error, Result};
