//! Finite certificates separating chromatic recurrence from density recurrence.

pub mod assembly;
pub mod cli;
pub mod error;
pub mod eset;
pub mod f2core;
pub mod graphs;
pub mod limits;
pub mod rational;
pub mod torus;

pub use error::{Error, Result};
pub use limits::Limits;
