//! Twirling-based characterization of quantum channels.
//!
//! Exact χ-matrix tooling, stabilizer-frame simulation and the two shot-based
//! estimators: selective/blind process tomography over mutually unbiased bases
//! or Cliffords, and Pauli-weight profiling under local one-qubit twirls.

pub mod bits;
pub mod channel;
pub mod dense;
pub mod error;
pub mod harness;
pub mod local_twirl;
pub mod pauli;
pub mod rng;
pub mod seqpt;
pub mod sim;
pub mod stabilizer;

pub use bits::Bits;
pub use error::{Error, Result};
pub use pauli::{Pauli1, PauliLabel, PauliOperator};
