//! Twirl families and their exact (enumerated) averages.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::channel::ChannelModel;
use crate::dense::{self, CMatrix};
use crate::error::{check_capacity, check_qubits, Error, Result};
use crate::pauli::{Pauli1, PauliLabel, PauliOperator};
use crate::sim::backend::{factors_to_string, TwirlDescriptor};
use crate::stabilizer::{enumerate_cliffords, CliffordElement, Gate, MubFamily, CLIFFORD_ENUMERATION_CAP};

/// Largest `n` for MUB and local-twirl enumeration.
pub const EXACT_TWIRL_QUBIT_CAP: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwirlKind {
    HaarState,
    Mub,
    CliffordFull,
    LocalClifford,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwirlSpec {
    pub kind: TwirlKind,
    pub n: usize,
}

impl TwirlSpec {
    pub fn new(kind: TwirlKind, n: usize) -> Self {
        TwirlSpec { kind, n }
    }

    /// Number of distinct twirl elements; `None` for the continuous Haar twirl
    /// or when the count does not fit in a `u128`.
    pub fn enumeration_size(&self) -> Option<u128> {
        let n = self.n as u32;
        match self.kind {
            TwirlKind::HaarState => None,
            TwirlKind::Mub => {
                let d = 1u128.checked_shl(n)?;
                d.checked_mul(d + 1)
            }
            TwirlKind::LocalClifford => 12u128.checked_pow(n),
            TwirlKind::CliffordFull => {
                // |Sp(2n,2)| · 4^n
                let mut size = 1u128.checked_shl(2 * n)?.checked_mul(1u128.checked_shl(n * n)?)?;
                for j in 1..=n {
                    size = size.checked_mul(1u128.checked_shl(2 * j)? - 1)?;
                }
                Some(size)
            }
        }
    }
}

/// One element of the one-qubit Clifford twirl: per qubit a Pauli followed by
/// the rotation `exp(-iπ/4 σ_r)`, `r ∈ {x, y, z}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalTwirlElement {
    pub paulis: Vec<Pauli1>,
    pub rotations: Vec<Pauli1>,
}

fn rotation_gates(q: usize, r: Pauli1) -> Vec<Gate> {
    match r {
        Pauli1::X => vec![Gate::H(q), Gate::S(q), Gate::H(q)],
        // X·H = exp(-iπ/4 σy) exactly
        Pauli1::Y => vec![Gate::H(q), Gate::X(q)],
        Pauli1::Z => vec![Gate::S(q)],
        Pauli1::I => Vec::new(),
    }
}

fn pauli_gate(q: usize, p: Pauli1) -> Option<Gate> {
    match p {
        Pauli1::I => None,
        Pauli1::X => Some(Gate::X(q)),
        Pauli1::Y => Some(Gate::Y(q)),
        Pauli1::Z => Some(Gate::Z(q)),
    }
}

impl LocalTwirlElement {
    /// Number of elements, `12^n`.
    pub fn count(n: usize) -> Result<u64> {
        check_capacity("local twirl index", n, 17)?;
        Ok(12u64.pow(n as u32))
    }

    /// Base-12 index with per-qubit digit `3·pauli + rotation`, qubit 1 most significant.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        let count = Self::count(n)?;
        if index >= count {
            return Err(Error::validation("index", format!("local twirl index {index} outside [0, {count})")));
        }
        let mut paulis = vec![Pauli1::I; n];
        let mut rotations = vec![Pauli1::X; n];
        let mut rest = index;
        for q in (0..n).rev() {
            let code = rest % 12;
            rest /= 12;
            paulis[q] = Pauli1::from_digit(code / 3);
            rotations[q] = Pauli1::NONIDENTITY[(code % 3) as usize];
        }
        Ok(LocalTwirlElement { paulis, rotations })
    }

    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let paulis = (0..n).map(|_| Pauli1::ALL[rng.random_range(0..4)]).collect();
        let rotations = (0..n).map(|_| Pauli1::NONIDENTITY[rng.random_range(0..3)]).collect();
        LocalTwirlElement { paulis, rotations }
    }

    pub fn n(&self) -> usize {
        self.paulis.len()
    }

    pub fn gates(&self) -> Vec<Gate> {
        let mut out = Vec::new();
        for (q, (&p, &r)) in self.paulis.iter().zip(&self.rotations).enumerate() {
            out.extend(pauli_gate(q, p));
            out.extend(rotation_gates(q, r));
        }
        out
    }

    pub fn to_clifford(&self) -> CliffordElement {
        CliffordElement::from_circuit(self.n(), &self.gates()).expect("gates act on valid qubits")
    }

    pub fn descriptor(&self) -> TwirlDescriptor {
        TwirlDescriptor::Local {
            paulis: factors_to_string(&self.paulis),
            rotations: factors_to_string(&self.rotations),
        }
    }

    pub fn from_descriptor(paulis: &str, rotations: &str) -> Result<Self> {
        let parse = |s: &str, allow_identity: bool| -> Result<Vec<Pauli1>> {
            s.chars()
                .map(|ch| match ch {
                    'I' if allow_identity => Ok(Pauli1::I),
                    'X' => Ok(Pauli1::X),
                    'Y' => Ok(Pauli1::Y),
                    'Z' => Ok(Pauli1::Z),
                    other => Err(Error::InvalidLabel(format!("unexpected {other:?} in local twirl descriptor"))),
                })
                .collect()
        };
        let paulis = parse(paulis, true)?;
        let rotations = parse(rotations, false)?;
        check_qubits(paulis.len(), rotations.len())?;
        Ok(LocalTwirlElement { paulis, rotations })
    }
}

/// Clifford preparing `|ψ_{J,m}⟩ = 𝒱_J|m⟩` from `|0…0⟩`.
pub fn mub_preparation(family: &MubFamily, j: u64, m: &Bits) -> Result<CliffordElement> {
    let n = family.n();
    check_qubits(n, m.len())?;
    let mut gates: Vec<Gate> = m.iter_ones().map(Gate::X).collect();
    gates.extend(family.circuit(j)?);
    CliffordElement::from_circuit(n, &gates)
}

/// Every element of a finite twirl as (descriptor, preparation Clifford).
pub fn twirl_elements(spec: &TwirlSpec) -> Result<Vec<(TwirlDescriptor, CliffordElement)>> {
    let n = spec.n;
    match spec.kind {
        TwirlKind::HaarState => Err(Error::validation("kind", "the Haar twirl has no finite enumeration")),
        TwirlKind::Mub => {
            check_capacity("exact MUB twirl", n, EXACT_TWIRL_QUBIT_CAP)?;
            let family = MubFamily::new(n)?;
            let d = dense::dim(n);
            let mut out = Vec::with_capacity(d * (d + 1));
            for j in 0..family.len() {
                for m in 0..d {
                    let m = Bits::from_index(n, m);
                    out.push((TwirlDescriptor::Mub { j, m: m.clone() }, mub_preparation(&family, j, &m)?));
                }
            }
            Ok(out)
        }
        TwirlKind::CliffordFull => {
            check_capacity("exact Clifford twirl", n, CLIFFORD_ENUMERATION_CAP)?;
            Ok(enumerate_cliffords(n)?
                .into_iter()
                .map(|c| (TwirlDescriptor::Clifford { circuit: c.gate_records() }, c))
                .collect())
        }
        TwirlKind::LocalClifford => {
            check_capacity("exact local twirl", n, EXACT_TWIRL_QUBIT_CAP)?;
            (0..LocalTwirlElement::count(n)?)
                .map(|i| {
                    let e = LocalTwirlElement::from_index(n, i)?;
                    Ok((e.descriptor(), e.to_clifford()))
                })
                .collect()
        }
    }
}

/// Real part of `⟨v|C† P Λ(C|0⟩⟨0|C†) P C|v⟩` for every `v`.
///
/// Works for any linear map, so non-positive maps give quasi-probabilities.
pub fn outcome_quasi_distribution(
    channel: &ChannelModel,
    pre: &CliffordElement,
    intermediary: Option<&PauliOperator>,
) -> Result<Vec<f64>> {
    let n = channel.n();
    check_qubits(n, pre.n())?;
    dense::check_dense(n)?;
    let d = dense::dim(n);
    let mut psi = dense::basis_vector(d, 0);
    pre.apply_to_state(&mut psi);
    let mut out = channel.apply(&dense::projector(&psi))?;
    if let Some(p) = intermediary {
        check_qubits(n, p.n())?;
        let pd = p.to_dense();
        out = &pd * out * &pd;
    }
    let u = pre.to_dense()?;
    let back = u.adjoint() * out * &u;
    Ok((0..d).map(|v| back[(v, v)].re).collect())
}

fn average_distributions(n: usize, parts: Vec<Vec<f64>>) -> Vec<f64> {
    let d = dense::dim(n);
    let mut acc = vec![0.0; d];
    let count = parts.len() as f64;
    for part in &parts {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    acc.iter().map(|a| a / count).collect()
}

/// Exact twirl average of the outcome distribution with input `|0…0⟩`.
pub fn enumerate_twirl_exact(
    channel: &ChannelModel,
    spec: &TwirlSpec,
    intermediary: Option<&PauliOperator>,
) -> Result<Vec<f64>> {
    enumerate_twirl_exact_from(channel, spec, intermediary, &Bits::zeros(channel.n()))
}

/// As [`enumerate_twirl_exact`] with computational input `|input⟩`; outcome
/// index `0` then means the input survived.
pub fn enumerate_twirl_exact_from(
    channel: &ChannelModel,
    spec: &TwirlSpec,
    intermediary: Option<&PauliOperator>,
    input: &Bits,
) -> Result<Vec<f64>> {
    let n = channel.n();
    check_qubits(n, spec.n)?;
    check_qubits(n, input.len())?;
    let flip = CliffordElement::from_circuit(n, &input.iter_ones().map(Gate::X).collect::<Vec<_>>())?;
    let elements = twirl_elements(spec)?;
    // the operator sum is memoized, so build it once before fanning out
    channel.operator_sum()?;
    let parts = elements
        .par_iter()
        .map(|(_, c)| outcome_quasi_distribution(channel, &flip.then(c)?, intermediary))
        .collect::<Result<Vec<_>>>()?;
    Ok(average_distributions(n, parts))
}

/// `χ_{l,l'}` recovered from the MUB-state average of
/// `⟨ψ|Λ(P_l|ψ⟩⟨ψ|P_{l'})|ψ⟩ = (Dχ_{l,l'} + δ_{l,l'})/(D+1)`.
///
/// The identity relies on trace preservation.
pub fn exact_chi_extraction(channel: &ChannelModel, l: &PauliLabel, lp: &PauliLabel) -> Result<Complex64> {
    let n = channel.n();
    check_qubits(n, l.n())?;
    check_qubits(n, lp.n())?;
    check_capacity("exact MUB twirl", n, EXACT_TWIRL_QUBIT_CAP)?;
    if !channel.classify().trace_preserving {
        return Err(Error::validation("channel", "χ extraction from a twirl needs a trace-preserving map"));
    }
    let d = dense::dim(n);
    let pl = l.to_operator().to_dense();
    let plp = lp.to_operator().to_dense();
    let family = MubFamily::new(n)?;
    let mut states = Vec::with_capacity(d * (d + 1));
    for j in 0..family.len() {
        let u = family.basis(j)?.change_of_basis.to_dense()?;
        for m in 0..d {
            states.push(u.column(m).into_owned());
        }
    }
    channel.operator_sum()?;
    let terms = states
        .par_iter()
        .map(|psi| {
            let sigma: CMatrix = &pl * dense::projector(psi) * &plp;
            let out = channel.apply(&sigma)?;
            Ok((psi.adjoint() * out * psi)[(0, 0)])
        })
        .collect::<Result<Vec<Complex64>>>()?;
    let avg = terms.iter().sum::<Complex64>() / states.len() as f64;
    let delta = if l == lp { 1.0 } else { 0.0 };
    Ok(((d as f64 + 1.0) * avg - delta) / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{noise, ChiMatrix};

    fn label(s: &str) -> PauliLabel {
        s.parse::<PauliOperator>().unwrap().label().unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(TwirlSpec::new(TwirlKind::Mub, 2).enumeration_size(), Some(20));
        assert_eq!(TwirlSpec::new(TwirlKind::LocalClifford, 3).enumeration_size(), Some(1728));
        assert_eq!(TwirlSpec::new(TwirlKind::CliffordFull, 1).enumeration_size(), Some(24));
        assert_eq!(TwirlSpec::new(TwirlKind::CliffordFull, 2).enumeration_size(), Some(11520));
        assert_eq!(TwirlSpec::new(TwirlKind::HaarState, 1).enumeration_size(), None);
    }

    #[test]
    fn rotations_match_exponentials() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (r, sigma) in [(Pauli1::X, noise::pauli_x()), (Pauli1::Y, noise::pauli_y()), (Pauli1::Z, noise::pauli_z())]
        {
            let want = (CMatrix::identity(2, 2) - sigma * dense::c(0.0, 1.0)).scale(h);
            let got = CliffordElement::from_circuit(1, &rotation_gates(0, r)).unwrap().to_dense().unwrap();
            // equal up to a global phase
            let phase = (want.adjoint() * &got)[(0, 0)] / 1.0;
            let phase = phase / phase.norm();
            assert!(dense::max_abs_diff(&(want * phase), &got) < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn local_index_round_trip() {
        for i in [0u64, 1, 11, 12, 143] {
            let e = LocalTwirlElement::from_index(2, i).unwrap();
            let back: u64 =
                e.paulis.iter().zip(&e.rotations).fold(0, |acc, (p, r)| acc * 12 + p.digit() * 3 + (r.digit() - 1));
            assert_eq!(back, i);
            let TwirlDescriptor::Local { paulis, rotations } = e.descriptor() else { unreachable!() };
            assert_eq!(LocalTwirlElement::from_descriptor(&paulis, &rotations).unwrap(), e);
        }
        assert!(LocalTwirlElement::from_index(1, 12).is_err());
    }

    #[test]
    fn mub_survival_examples() {
        for n in 1..=2 {
            let id = ChannelModel::identity(n);
            let spec = TwirlSpec::new(TwirlKind::Mub, n);
            let d = dense::dim(n) as f64;
            assert!((enumerate_twirl_exact(&id, &spec, None).unwrap()[0] - 1.0).abs() < 1e-12);
            let x = PauliOperator::single(n, 0, Pauli1::X);
            assert!((enumerate_twirl_exact(&id, &spec, Some(&x)).unwrap()[0] - 1.0 / (d + 1.0)).abs() < 1e-12);
        }
        let dep = ChannelModel::from_kraus(noise::depolarizing(0.3)).unwrap();
        let p = enumerate_twirl_exact(&dep, &TwirlSpec::new(TwirlKind::Mub, 1), None).unwrap();
        assert!((p[0] - 0.85).abs() < 1e-12);
    }

    #[test]
    fn mub_and_clifford_twirls_agree_at_one_qubit() {
        let ch = ChannelModel::from_kraus(noise::amplitude_damping(0.35)).unwrap();
        let a = enumerate_twirl_exact(&ch, &TwirlSpec::new(TwirlKind::Mub, 1), None).unwrap();
        let b = enumerate_twirl_exact(&ch, &TwirlSpec::new(TwirlKind::CliffordFull, 1), None).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn chi_extraction_examples() {
        let id = ChannelModel::identity(1);
        assert!((exact_chi_extraction(&id, &label("I"), &label("I")).unwrap() - 1.0).norm() < 1e-12);
        assert!(exact_chi_extraction(&id, &label("Z"), &label("Z")).unwrap().norm() < 1e-12);
        let dep = ChannelModel::from_kraus(noise::depolarizing(0.3)).unwrap();
        assert!((exact_chi_extraction(&dep, &label("X"), &label("X")).unwrap() - 0.075).norm() < 1e-12);
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let chi = cx.chi().unwrap();
        for a in ["II", "ZI", "IX", "ZX", "XY"] {
            for b in ["II", "ZI", "IX", "ZX", "YZ"] {
                let (la, lb) = (label(a), label(b));
                let got = exact_chi_extraction(&cx, &la, &lb).unwrap();
                assert!((got - chi.get(la.index() as usize, lb.index() as usize)).norm() < 1e-10, "{a} {b}");
            }
        }
        let leaky = ChannelModel::from_chi(ChiMatrix::diagonal(1, &[0.8, 0.05, 0.05, 0.0]).unwrap());
        assert!(exact_chi_extraction(&leaky, &label("I"), &label("I")).is_err());
    }

    #[test]
    fn local_twirl_state_independence() {
        let ch = ChannelModel::from_kraus(noise::amplitude_damping(0.2)).unwrap();
        let spec = TwirlSpec::new(TwirlKind::LocalClifford, 1);
        let f0 = enumerate_twirl_exact_from(&ch, &spec, None, &"0".parse().unwrap()).unwrap()[0];
        let f1 = enumerate_twirl_exact_from(&ch, &spec, None, &"1".parse().unwrap()).unwrap()[0];
        assert!((f0 - f1).abs() < 1e-12);
    }
}
