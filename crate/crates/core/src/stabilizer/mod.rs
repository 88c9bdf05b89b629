//! GF(2) symplectic machinery: Clifford tableaus, stabilizer frames and MUBs.

mod clifford;
mod frame;
pub mod gf2;
mod mub;

pub use clifford::{
    dense_conjugation_error, enumerate_cliffords, sample_clifford_uniform, CliffordElement, Gate, GateRecord,
    CLIFFORD_ENUMERATION_CAP,
};
pub use frame::{
    candidate_paulis, frames_independent, intersect_cosets, solve_intermediary_pauli, CandidateSet, CosetKey,
    StabilizerFrame, CANDIDATE_ENUMERATION_CAP,
};
pub use mub::{build_mub_family, Gf2n, MubBasis, MubFamily, MUB_FAMILY_CAP, MUB_QUBIT_CAP};
