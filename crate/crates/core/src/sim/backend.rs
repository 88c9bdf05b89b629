//! Shot-level execution of twirled circuits.
//!
//! Every experiment has the same shape: prepare `|0…0⟩`, apply a Clifford `U`,
//! the channel, an optional intermediary Pauli, then `U†`, and measure.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::channel::ChannelModel;
use crate::dense::{self, CVector};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{Pauli1, PauliOperator};
use crate::rng::StreamRng;
use crate::sim::state::sample_outcome;
use crate::stabilizer::{CliffordElement, GateRecord};

const PROBABILITY_TOL: f64 = 1e-9;

/// Which twirl element a realization used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwirlDescriptor {
    /// State `|ψ_{J,m}⟩` of basis `J`.
    Mub { j: u64, m: Bits },
    /// A full Clifford applied to `|0…0⟩`.
    Clifford { circuit: Vec<GateRecord> },
    /// Per-qubit Pauli then rotation `exp(-iπ/4 σ_r)`; strings list qubit 1 first.
    Local { paulis: String, rotations: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub index: u64,
    pub twirl: TwirlDescriptor,
    /// Measured bitstring after undoing the twirl.
    pub outcome: Bits,
}

pub trait Backend: Sync {
    fn name(&self) -> &'static str;

    /// Runs one shot of `U, Λ, P, U†, measure`.
    fn run_shot(
        &self,
        channel: &ChannelModel,
        pre: &CliffordElement,
        intermediary: Option<&PauliOperator>,
        rng: &mut StreamRng,
    ) -> Result<Bits>;
}

/// Exact state-vector backend for `n ≤` [`dense::DENSE_QUBIT_CAP`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DenseBackend;

impl DenseBackend {
    /// Outcome distribution `p(v) = Σ_k w_k |⟨v|U† P A_k U|0⟩|²`, indexed by basis index.
    pub fn outcome_probabilities(
        &self,
        channel: &ChannelModel,
        pre: &CliffordElement,
        intermediary: Option<&PauliOperator>,
    ) -> Result<Vec<f64>> {
        let n = channel.n();
        check_qubits(n, pre.n())?;
        if let Some(p) = intermediary {
            check_qubits(n, p.n())?;
        }
        dense::check_dense(n)?;
        if !channel.classify().hermitian_preserving {
            return Err(Error::Unsampleable("map is not Hermitian-preserving".into()));
        }
        let d = dense::dim(n);
        let mut psi = dense::basis_vector(d, 0);
        pre.apply_to_state(&mut psi);
        let post = pre.adjoint();
        let pauli = intermediary.map(|p| p.to_dense());
        let sum = channel.operator_sum()?;
        let mut probs = vec![0.0; d];
        for (w, a) in sum.weights.iter().zip(&sum.operators) {
            let mut phi: CVector = a * &psi;
            if let Some(p) = &pauli {
                phi = p * phi;
            }
            post.apply_to_state(&mut phi);
            for (acc, amp) in probs.iter_mut().zip(phi.iter()) {
                *acc += w * amp.norm_sqr();
            }
        }
        let total: f64 = probs.iter().sum();
        let min = probs.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -PROBABILITY_TOL || (total - 1.0).abs() > 1e-8 {
            return Err(Error::Unsampleable(format!(
                "outcome distribution is not a probability vector (min {min:e}, total {total})"
            )));
        }
        Ok(probs)
    }
}

impl Backend for DenseBackend {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn run_shot(
        &self,
        channel: &ChannelModel,
        pre: &CliffordElement,
        intermediary: Option<&PauliOperator>,
        rng: &mut StreamRng,
    ) -> Result<Bits> {
        let probs = self.outcome_probabilities(channel, pre, intermediary)?;
        sample_outcome(channel.n(), &probs, rng)
    }
}

/// Stabilizer-frame backend for Pauli channels at any `n`.
///
/// A sampled error `E` followed by the intermediary `P` flips the outcome
/// bits where `U†(P E)U` has an X or Y factor.
#[derive(Debug, Clone, Copy, Default)]
pub struct PauliFrameBackend;

impl PauliFrameBackend {
    pub fn sample_error(&self, channel: &ChannelModel, rng: &mut StreamRng) -> Result<PauliOperator> {
        let layers = channel
            .pauli_layers()
            .ok_or_else(|| Error::Unsampleable("the Pauli-frame backend needs a Pauli channel".into()))?;
        let mut e = PauliOperator::identity(channel.n());
        for layer in layers {
            let weights: Vec<f64> = layer.iter().map(|(_, p)| *p).collect();
            let dist = WeightedIndex::new(&weights).map_err(|err| Error::Unsampleable(err.to_string()))?;
            e.mul_assign_unchecked(&layer[dist.sample(rng)].0);
        }
        Ok(e.unsigned())
    }
}

impl Backend for PauliFrameBackend {
    fn name(&self) -> &'static str {
        "pauli_frame"
    }

    fn run_shot(
        &self,
        channel: &ChannelModel,
        pre: &CliffordElement,
        intermediary: Option<&PauliOperator>,
        rng: &mut StreamRng,
    ) -> Result<Bits> {
        check_qubits(channel.n(), pre.n())?;
        let mut q = self.sample_error(channel, rng)?;
        if let Some(p) = intermediary {
            check_qubits(channel.n(), p.n())?;
            let mut prod = p.clone();
            prod.mul_assign_unchecked(&q);
            q = prod;
        }
        Ok(pre.conjugate_adjoint(&q)?.x().clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    /// Dense when `n` fits, otherwise the Pauli-frame backend for Pauli channels.
    #[default]
    Auto,
    Dense,
    PauliFrame,
}

/// Resolves `kind` for `channel`.
pub fn select_backend(kind: BackendKind, channel: &ChannelModel) -> Result<&'static dyn Backend> {
    static DENSE: DenseBackend = DenseBackend;
    static FRAME: PauliFrameBackend = PauliFrameBackend;
    match kind {
        BackendKind::Dense => {
            dense::check_dense(channel.n())?;
            Ok(&DENSE)
        }
        BackendKind::PauliFrame => {
            if channel.pauli_layers().is_none() {
                return Err(Error::Unsampleable("the Pauli-frame backend needs a Pauli channel".into()));
            }
            Ok(&FRAME)
        }
        BackendKind::Auto => {
            if channel.pauli_layers().is_some() && channel.n() > 3 {
                Ok(&FRAME)
            } else if channel.n() <= dense::DENSE_QUBIT_CAP {
                Ok(&DENSE)
            } else {
                Err(Error::Capacity {
                    what: "dense simulation of a non-Pauli channel",
                    n: channel.n(),
                    cap: dense::DENSE_QUBIT_CAP,
                })
            }
        }
    }
}

/// Single-qubit factors rendered as a Pauli string.
pub(crate) fn factors_to_string(f: &[Pauli1]) -> String {
    f.iter().map(|p| p.symbol()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::noise;
    use crate::rng::{domain, substream};
    use crate::stabilizer::{sample_clifford_uniform, Gate};

    #[test]
    fn backends_agree_on_pauli_channels() {
        let n = 2;
        let ch =
            ChannelModel::pauli_channel(n, vec![("II".parse().unwrap(), 0.6), ("XZ".parse().unwrap(), 0.4)]).unwrap();
        let mut rng = substream(4, domain::GENERIC, 0);
        for _ in 0..10 {
            let u = sample_clifford_uniform(n, &mut rng);
            let probs = DenseBackend.outcome_probabilities(&ch, &u, None).unwrap();
            // two possible outcomes: 0 and the flip pattern of XZ
            let flip = u.conjugate_adjoint(&"XZ".parse().unwrap()).unwrap().x().clone();
            assert!((probs[0] - 0.6).abs() < 1e-12 || flip.is_zero());
            let mut r = substream(5, domain::GENERIC, 0);
            let mut hits = 0;
            for _ in 0..2000 {
                let o = PauliFrameBackend.run_shot(&ch, &u, None, &mut r).unwrap();
                assert!(o.is_zero() || o == flip);
                if o == flip && !flip.is_zero() {
                    hits += 1;
                }
            }
            if !flip.is_zero() {
                assert!((hits as f64 / 2000.0 - 0.4).abs() < 0.05);
            }
        }
    }

    #[test]
    fn intermediary_flips_outcome() {
        let ch = ChannelModel::identity(1);
        let h = CliffordElement::from_circuit(1, &[Gate::H(0)]).unwrap();
        let probs = DenseBackend.outcome_probabilities(&ch, &h, Some(&"Z".parse().unwrap())).unwrap();
        assert!((probs[1] - 1.0).abs() < 1e-12);
        let mut rng = substream(0, domain::GENERIC, 0);
        let o = PauliFrameBackend.run_shot(&ch, &h, Some(&"Z".parse().unwrap()), &mut rng).unwrap();
        assert_eq!(o.to_string(), "1");
    }

    #[test]
    fn non_positive_maps_cannot_be_sampled() {
        let ch = ChannelModel::from_chi(crate::channel::ChiMatrix::diagonal(1, &[0.9, -0.3, 0.2, 0.2]).unwrap());
        // Y eigenstate input exposes the negative output eigenvalue
        let s = CliffordElement::from_circuit(1, &[Gate::H(0), Gate::S(0)]).unwrap();
        assert!(matches!(DenseBackend.outcome_probabilities(&ch, &s, None), Err(Error::Unsampleable(_))));
        let kraus = ChannelModel::from_kraus(noise::amplitude_damping(0.3)).unwrap();
        assert!(select_backend(BackendKind::PauliFrame, &kraus).is_err());
    }
}
