//! Dense and stabilizer-frame simulation, twirl enumeration and Haar checks.

mod backend;
mod haar;
mod state;
mod twirl;

pub use backend::{
    select_backend, Backend, BackendKind, DenseBackend, ExperimentRecord, PauliFrameBackend, TwirlDescriptor,
};
pub use haar::{haar_moment_closed_form, haar_twirl_moment, haar_unitary, HaarMomentEstimate};
pub use state::{evolve, measure_computational, DenseState};
pub use twirl::{
    enumerate_twirl_exact, enumerate_twirl_exact_from, exact_chi_extraction, mub_preparation,
    outcome_quasi_distribution, twirl_elements, LocalTwirlElement, TwirlKind, TwirlSpec, EXACT_TWIRL_QUBIT_CAP,
};
