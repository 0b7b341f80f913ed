//! Non-crossing partitions, the unshuffle bialgebras built on words and on
//! decorated non-crossing partitions, half-shuffle exponentials of linear
//! forms, and the moment–cumulant transforms they encode.

pub mod cli;
pub mod coeff;
pub mod cumulants;
pub mod decorated;
pub mod error;
pub mod functional;
pub mod hopf;
pub mod moebius;
pub mod partition;
pub mod series;
pub mod tree;
pub mod verify;
pub mod word;

pub use coeff::Coefficient;
pub use decorated::DecoratedNC;
pub use error::{Error, Result};
pub use hopf::{Atom, BarWord, Element, Linear, Tensor2, Tensor3, Variant};
pub use partition::{NonCrossingPartition, SetPartition};
pub use word::{Alphabet, Letter, Word};
