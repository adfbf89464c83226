//! Free groups and one-edge cyclic splittings: reduced words, Stallings
//! graphs, Whitehead moves, HNN and amalgam normal forms, endomorphisms, and
//! a bounded verification pipeline for a free group in which the algebraic
//! and definable closures of a subgroup differ.

pub mod alphabet;
pub mod autos;
pub mod cli;
pub mod closure;
pub mod error;
pub mod splittings;
pub mod stallings;
pub mod whitehead;
pub mod word;

pub use alphabet::Alphabet;
pub use error::{Error, Result};
pub use stallings::SubgroupGraph;
pub use word::{CyclicWord, Letter, Word};
