//! Color codes and toric codes on colored cell complexes, the local Clifford
//! map that unfolds one into copies of the other, and exact checks of
//! transversal diagonal gates.

pub mod clifford;
pub mod codes;
pub mod complex;
pub mod counting;
pub mod error;
pub mod gates;
pub mod gf2;
pub mod par;
pub mod pauli;
pub mod qubit;
pub mod unfold;

pub use error::{Error, Result};
