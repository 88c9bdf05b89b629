//! Dense pure and mixed states.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::bits::Bits;
use crate::channel::ChannelModel;
use crate::dense::{self, CMatrix, CVector};
use crate::error::{check_qubits, Error, Result};

const STATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum DenseState {
    Pure { n: usize, amplitudes: CVector },
    Mixed { n: usize, rho: CMatrix },
}

impl DenseState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        dense::check_dense(n)?;
        Ok(DenseState::Pure { n, amplitudes: dense::basis_vector(dense::dim(n), 0) })
    }

    pub fn basis(bits: &Bits) -> Result<Self> {
        let n = bits.len();
        dense::check_dense(n)?;
        Ok(DenseState::Pure { n, amplitudes: dense::basis_vector(dense::dim(n), bits.to_index()) })
    }

    pub fn from_vector(v: CVector) -> Result<Self> {
        let d = v.len();
        if d == 0 || !d.is_power_of_two() {
            return Err(Error::DimensionMismatch { expected: d.next_power_of_two().max(1), found: d });
        }
        if (v.norm() - 1.0).abs() > STATE_TOL {
            return Err(Error::validation("state", format!("norm {} is not 1", v.norm())));
        }
        Ok(DenseState::Pure { n: d.trailing_zeros() as usize, amplitudes: v })
    }

    pub fn from_density(rho: CMatrix) -> Result<Self> {
        let n = dense::qubits_of(&rho)?;
        let tr = dense::trace(&rho);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::validation("state", format!("trace {tr} is not 1")));
        }
        if dense::hermitian_deviation(&rho) > STATE_TOL {
            return Err(Error::NotHermitian(dense::hermitian_deviation(&rho)));
        }
        if dense::min_eigenvalue(&rho) < -STATE_TOL {
            return Err(Error::validation("state", "density matrix is not positive semidefinite"));
        }
        Ok(DenseState::Mixed { n, rho })
    }

    pub fn n(&self) -> usize {
        match self {
            DenseState::Pure { n, .. } | DenseState::Mixed { n, .. } => *n,
        }
    }

    pub fn density(&self) -> CMatrix {
        match self {
            DenseState::Pure { amplitudes, .. } => dense::projector(amplitudes),
            DenseState::Mixed { rho, .. } => rho.clone(),
        }
    }

    /// Born probabilities indexed by computational-basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        match self {
            DenseState::Pure { amplitudes, .. } => amplitudes.iter().map(|a| a.norm_sqr()).collect(),
            DenseState::Mixed { rho, .. } => (0..rho.nrows()).map(|i| rho[(i, i)].re).collect(),
        }
    }
}

pub fn evolve(state: &DenseState, channel: &ChannelModel) -> Result<DenseState> {
    check_qubits(state.n(), channel.n())?;
    if let (DenseState::Pure { n, amplitudes }, Some([u])) = (state, channel.kraus()) {
        let out = u * amplitudes;
        if (out.norm() - 1.0).abs() <= STATE_TOL {
            return Ok(DenseState::Pure { n: *n, amplitudes: out });
        }
    }
    Ok(DenseState::Mixed { n: state.n(), rho: channel.apply(&state.density())? })
}

/// Samples a computational-basis outcome from a probability vector.
pub(crate) fn sample_outcome<R: Rng + ?Sized>(n: usize, probs: &[f64], rng: &mut R) -> Result<Bits> {
    let clipped: Vec<f64> = probs.iter().map(|&p| p.max(0.0)).collect();
    let dist = WeightedIndex::new(&clipped).map_err(|e| Error::Unsampleable(e.to_string()))?;
    Ok(Bits::from_index(n, dist.sample(rng)))
}

pub fn measure_computational<R: Rng + ?Sized>(state: &DenseState, rng: &mut R) -> Result<Bits> {
    sample_outcome(state.n(), &state.probabilities(), rng)
}
