//! Computation in free groups and in multiple HNN extensions of free groups
//! with cyclic associated subgroups: the word problem, generalized torsion
//! certificates, and finite positive-cone searches for left and bi-orders.

pub mod cli;
pub mod error;
pub mod freeness;
pub mod hnn;
pub mod order;
pub mod presentation;
pub mod syntax;
pub mod torsion;
pub mod word;

pub use error::{Error, Result};
pub use hnn::{HnnWord, MultipleHnnPresentation, PinchReport, Relation, StableLetter};
pub use presentation::parse_presentation;
pub use word::{Alphabet, CyclicDecomposition, Letter, Word};
