//! Concrete strategies: the Cantor cube winning strategy for Player I, the
//! counter-strategies for Player II, and seeded adversaries.

mod cantor;
mod diagonal;
mod measure;
mod random;
mod scripted;
mod sum;
pub(crate) mod support;

pub use cantor::{CantorPlayerOne, Overflow};
pub use diagonal::DiagonalPlayerTwo;
pub use measure::MeasurePlayerTwo;
pub use random::{random_refinement, RandomPlayerOne, RandomPlayerTwo};
pub use scripted::{decode_moves, encode_moves, Scripted};
pub use sum::{touched_summands, untouched_witness, SumPlayerTwo};
pub use support::history_support;
