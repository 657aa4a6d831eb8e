//! Witt towers of epsilon-Hermitian spaces over local fields, enhanced Witt groups,
//! the Kudla homomorphism and the arithmetic of theta-lifting first occurrences.

pub mod abgroups;
pub mod classgroup;
pub mod cli;
pub mod constants;
pub mod error;
pub mod forms;
pub mod intmat;
pub mod kudla;
pub mod localfield;
pub mod oracle;
pub mod theta;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
