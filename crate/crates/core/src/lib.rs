//! Simulator and library for the open-open game on decidably represented
//! topological spaces.

pub mod clubfilter;
pub mod descriptor;
pub mod error;
pub mod game;
pub mod ku;
pub mod registry;
pub mod spaces;
pub mod strategies;

pub use error::{Error, Result};
