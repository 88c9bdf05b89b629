//! Quantum maps in Kraus, χ and sparse Pauli-channel form.

mod bounds;
mod chi;
mod coarse;
pub mod noise;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bounds::{
    check_cp_bound, check_cp_bound_with_tol, check_positive_bound, check_positive_bound_with_tol, BoundKind,
    BoundViolation, DEFAULT_BOUND_TOL,
};
pub use chi::{
    apply_chi, chi_from_kraus, diagonalize_chi, pauli_coefficients, ChiEigenDecomposition, ChiJson, ChiMatrix,
};
pub use coarse::{coarse_grain, CoarseGrainedDiagonal};

use crate::bits::Bits;
use crate::dense::{self, c, CMatrix};
use crate::error::{check_qubits, Error, Result};
use crate::pauli::{Pauli1, PauliOperator};
use crate::rng::{domain, substream};

/// Relative PSD tolerance: eigenvalues `≥ -PSD_TOL · max eigenvalue` count as nonnegative.
pub const PSD_TOL: f64 = 1e-9;
/// Largest `n` for the sampled positivity heuristic.
pub const POSITIVITY_QUBIT_CAP: usize = 3;
const POSITIVITY_RANDOM_STATES: u64 = 64;
const TP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub hermitian_preserving: bool,
    pub trace_preserving: bool,
    pub completely_positive: bool,
    /// Positivity on states; `Unknown` beyond the heuristic's qubit cap.
    pub positive: Tristate,
}

/// Weighted operator sum `ρ ↦ Σ_k w_k A_k ρ A_k†`.
///
/// Kraus channels have all weights 1; a Hermitian χ yields real weights of
/// either sign from its eigendecomposition.
#[derive(Debug, Clone)]
pub struct OperatorSum {
    pub weights: Vec<f64>,
    pub operators: Vec<CMatrix>,
}

impl OperatorSum {
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = rho.nrows();
        let mut out = CMatrix::zeros(d, d);
        for (w, a) in self.weights.iter().zip(&self.operators) {
            out += (a * rho * a.adjoint()).scale(*w);
        }
        out
    }

    pub fn is_kraus(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Kraus(Vec<CMatrix>),
    Chi(ChiMatrix),
    /// Composition of independent Pauli channels, each a list of unsigned
    /// Paulis with probabilities `Σ p_P P ρ P`.
    Pauli(Vec<PauliLayer>),
}

/// An `n`-qubit map. Derived forms are computed once on first use.
#[derive(Debug)]
pub struct ChannelModel {
    n: usize,
    repr: Repr,
    chi: OnceLock<ChiMatrix>,
    operator_sum: OnceLock<OperatorSum>,
    classification: OnceLock<Classification>,
}

impl Clone for ChannelModel {
    fn clone(&self) -> Self {
        let out = ChannelModel::from_repr(self.n, self.repr.clone());
        if let Some(chi) = self.chi.get() {
            let _ = out.chi.set(chi.clone());
        }
        if let Some(cls) = self.classification.get() {
            let _ = out.classification.set(*cls);
        }
        out
    }
}

/// One sparse Pauli channel `Σ_P p_P P ρ P`.
pub type PauliLayer = Vec<(PauliOperator, f64)>;

/// Largest number of distinct Paulis produced when merging layers.
pub const PAULI_MERGE_CAP: usize = 1 << 21;

fn canonical_pauli(p: &PauliOperator) -> PauliOperator {
    p.unsigned()
}

fn merge_layers(n: usize, layers: &[PauliLayer]) -> Result<PauliLayer> {
    let mut acc: BTreeMap<PauliOperator, f64> = BTreeMap::new();
    acc.insert(PauliOperator::identity(n), 1.0);
    for layer in layers {
        let mut next: BTreeMap<PauliOperator, f64> = BTreeMap::new();
        for (pa, va) in &acc {
            for (pb, vb) in layer {
                let mut prod = pa.clone();
                prod.mul_assign_unchecked(pb);
                *next.entry(canonical_pauli(&prod)).or_insert(0.0) += va * vb;
            }
            if next.len() > PAULI_MERGE_CAP {
                return Err(Error::Capacity { what: "Pauli channel expansion", n, cap: PAULI_MERGE_CAP });
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().filter(|(_, v)| *v > 0.0).collect())
}

impl ChannelModel {
    fn from_repr(n: usize, repr: Repr) -> Self {
        ChannelModel { n, repr, chi: OnceLock::new(), operator_sum: OnceLock::new(), classification: OnceLock::new() }
    }

    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::validation("kraus", "empty Kraus set"))?;
        let n = dense::qubits_of(first)?;
        dense::check_dense(n)?;
        for a in &kraus {
            if a.nrows() != first.nrows() || a.ncols() != first.nrows() {
                return Err(Error::DimensionMismatch { expected: first.nrows(), found: a.nrows() });
            }
        }
        Ok(Self::from_repr(n, Repr::Kraus(kraus)))
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::from_kraus(vec![u])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_repr(n, Repr::Pauli(vec![vec![(PauliOperator::identity(n), 1.0)]]))
    }

    pub fn from_chi(chi: ChiMatrix) -> Self {
        let n = chi.n();
        let out = Self::from_repr(n, Repr::Chi(chi.clone()));
        let _ = out.chi.set(chi);
        out
    }

    /// Pauli channel `Σ_P p_P P ρ P`; probabilities must be nonnegative and sum to one.
    pub fn pauli_channel(n: usize, terms: Vec<(PauliOperator, f64)>) -> Result<Self> {
        let mut merged: BTreeMap<PauliOperator, f64> = BTreeMap::new();
        for (p, v) in terms {
            check_qubits(n, p.n())?;
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::validation("probability", format!("{v} for {p} is not a nonnegative number")));
            }
            *merged.entry(canonical_pauli(&p)).or_insert(0.0) += v;
        }
        let total: f64 = merged.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::validation("probability", format!("Pauli probabilities sum to {total}, not 1")));
        }
        Ok(Self::from_repr(n, Repr::Pauli(vec![merged.into_iter().filter(|(_, v)| *v > 0.0).collect()])))
    }

    /// Single-qubit depolarizing noise `(1-p)ρ + p I/2` applied independently to every qubit.
    pub fn local_depolarizing(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::validation("p", format!("must lie in [0, 1], got {p}")));
        }
        let single = [(Pauli1::I, 1.0 - 0.75 * p), (Pauli1::X, p / 4.0), (Pauli1::Y, p / 4.0), (Pauli1::Z, p / 4.0)];
        let mut out = Self::identity(n);
        for q in 0..n {
            let terms = single.iter().map(|&(f, v)| (PauliOperator::single(n, q, f), v)).collect();
            out = out.then(&Self::pauli_channel(n, terms)?)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kraus(&self) -> Option<&[CMatrix]> {
        match &self.repr {
            Repr::Kraus(k) => Some(k),
            _ => None,
        }
    }

    /// Independent Pauli layers, if the map was built as a Pauli channel.
    pub fn pauli_layers(&self) -> Option<&[PauliLayer]> {
        match &self.repr {
            Repr::Pauli(t) => Some(t),
            _ => None,
        }
    }

    /// Merged Pauli distribution; fails with a capacity error when it grows too large.
    pub fn pauli_terms(&self) -> Option<Result<PauliLayer>> {
        self.pauli_layers().map(|layers| merge_layers(self.n, layers))
    }

    /// `χ^col` and `p_w` without dense χ.
    ///
    /// Pauli channels whose layers act on pairwise disjoint qubits are handled at
    /// any `n` by propagating support distributions; `p_w` is then exact only for
    /// `w ≤ cutoff` and the remaining mass is lumped into `p_{cutoff+1}`.
    pub fn coarse_grain(&self, cutoff: usize) -> Result<CoarseGrainedDiagonal> {
        let cutoff = cutoff.min(self.n);
        if let Some(layers) = self.pauli_layers() {
            if let Some(cg) = disjoint_support_coarse_grain(self.n, cutoff, layers) {
                return Ok(cg);
            }
            let terms = merge_layers(self.n, layers)?;
            return Ok(CoarseGrainedDiagonal::from_pauli_terms(self.n, cutoff, &terms));
        }
        Ok(coarse_grain(self.chi()?).truncated(cutoff))
    }

    pub fn chi_if_defined(&self) -> Option<&ChiMatrix> {
        match &self.repr {
            Repr::Chi(c) => Some(c),
            _ => None,
        }
    }

    /// Dense χ, built on first use.
    pub fn chi(&self) -> Result<&ChiMatrix> {
        if let Some(chi) = self.chi.get() {
            return Ok(chi);
        }
        dense::check_dense(self.n)?;
        Ok(self.chi.get_or_init(|| match &self.repr {
            Repr::Kraus(k) => chi_from_kraus(k).expect("validated at construction"),
            Repr::Chi(c) => c.clone(),
            Repr::Pauli(layers) => {
                let labels = 1usize << (2 * self.n);
                let mut diag = vec![0.0; labels];
                for (p, v) in &merge_layers(self.n, layers).expect("dense n is within the merge cap") {
                    diag[p.label().expect("dense n fits a label").index() as usize] += v;
                }
                ChiMatrix::diagonal(self.n, &diag).expect("sized to D²")
            }
        }))
    }

    /// Weighted operator sum; requires a Hermitian-preserving map.
    pub fn operator_sum(&self) -> Result<&OperatorSum> {
        if let Some(s) = self.operator_sum.get() {
            return Ok(s);
        }
        dense::check_dense(self.n)?;
        let sum = match &self.repr {
            Repr::Kraus(k) => OperatorSum { weights: vec![1.0; k.len()], operators: k.clone() },
            Repr::Pauli(layers) => {
                let terms = merge_layers(self.n, layers)?;
                OperatorSum {
                    weights: terms.iter().map(|(_, v)| *v).collect(),
                    operators: terms.iter().map(|(p, _)| p.to_dense()).collect(),
                }
            }
            Repr::Chi(chi) => {
                let e = diagonalize_chi(chi)?;
                let scale = e.eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
                let keep: Vec<usize> =
                    (0..e.eigenvalues.len()).filter(|&k| e.eigenvalues[k].abs() > 1e-14 * scale.max(1e-300)).collect();
                OperatorSum {
                    weights: keep.iter().map(|&k| e.eigenvalues[k]).collect(),
                    operators: keep.iter().map(|&k| e.operators[k].clone()).collect(),
                }
            }
        };
        Ok(self.operator_sum.get_or_init(|| sum))
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let d = dense::dim(self.n);
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: rho.nrows() });
        }
        match &self.repr {
            Repr::Chi(chi) if !chi.is_hermitian() => apply_chi(chi, rho),
            _ => Ok(self.operator_sum()?.apply(rho)),
        }
    }

    /// The map `ρ ↦ later(self(ρ))`, composed at the Kraus level where possible.
    pub fn then(&self, later: &ChannelModel) -> Result<ChannelModel> {
        check_qubits(self.n, later.n)?;
        match (&self.repr, &later.repr) {
            (Repr::Pauli(a), Repr::Pauli(b)) => {
                let layers = a.iter().chain(b).filter(|l| !(l.len() == 1 && l[0].0.is_identity())).cloned().collect();
                Ok(Self::from_repr(self.n, Repr::Pauli(layers)))
            }
            _ => {
                let first = self.operator_sum()?;
                let second = later.operator_sum()?;
                let mut weights = Vec::new();
                let mut ops = Vec::new();
                for (wb, b) in second.weights.iter().zip(&second.operators) {
                    for (wa, a) in first.weights.iter().zip(&first.operators) {
                        weights.push(wa * wb);
                        ops.push(b * a);
                    }
                }
                if weights.iter().all(|&w| w >= 0.0) {
                    let scaled = weights.iter().zip(ops).map(|(w, a)| a.scale(w.sqrt())).collect();
                    Self::from_kraus(compress_kraus(scaled))
                } else {
                    let scaled: Vec<CMatrix> = weights.iter().zip(&ops).map(|(w, a)| a.scale(w.abs().sqrt())).collect();
                    let signs: Vec<f64> = weights.iter().map(|w| w.signum()).collect();
                    let coeffs: Vec<Vec<Complex64>> =
                        scaled.iter().map(|a| pauli_coefficients(a).expect("square")).collect();
                    let labels = coeffs[0].len();
                    let chi = DMatrix::from_fn(labels, labels, |l, lp| {
                        coeffs.iter().zip(&signs).map(|(a, s)| a[l] * a[lp].conj() * *s).sum::<Complex64>()
                    });
                    Ok(Self::from_chi(ChiMatrix::new(self.n, chi)?))
                }
            }
        }
    }

    /// Kraus set with each operator embedded on `qubits` (0-based) of an `n`-qubit register.
    pub fn embed_kraus(kraus: &[CMatrix], qubits: &[usize], n: usize) -> Result<Self> {
        let ops = kraus.iter().map(|k| dense::embed(k, qubits, n)).collect::<Result<Vec<_>>>()?;
        Self::from_kraus(ops)
    }

    pub fn classify(&self) -> Classification {
        *self.classification.get_or_init(|| self.compute_classification())
    }

    fn compute_classification(&self) -> Classification {
        match &self.repr {
            Repr::Pauli(_) => Classification {
                hermitian_preserving: true,
                trace_preserving: true,
                completely_positive: true,
                positive: Tristate::Yes,
            },
            Repr::Kraus(k) => {
                let d = k[0].nrows();
                let sum = k.iter().fold(CMatrix::zeros(d, d), |acc, a| acc + a.adjoint() * a);
                Classification {
                    hermitian_preserving: true,
                    trace_preserving: dense::max_abs_diff(&sum, &CMatrix::identity(d, d)) <= TP_TOL,
                    completely_positive: true,
                    positive: Tristate::Yes,
                }
            }
            Repr::Chi(chi) => {
                let hermitian = chi.is_hermitian();
                let tp = (chi.trace() - 1.0).abs() <= TP_TOL && chi.is_trace_preserving(TP_TOL);
                let cp = hermitian && is_psd(chi);
                let positive = if cp {
                    Tristate::Yes
                } else if !hermitian || !check_positive_bound(chi).is_empty() {
                    Tristate::No
                } else if self.n <= POSITIVITY_QUBIT_CAP {
                    match self.sampled_positivity() {
                        Ok(true) => Tristate::Yes,
                        Ok(false) => Tristate::No,
                        Err(_) => Tristate::Unknown,
                    }
                } else {
                    Tristate::Unknown
                };
                Classification {
                    hermitian_preserving: hermitian,
                    trace_preserving: tp,
                    completely_positive: cp,
                    positive,
                }
            }
        }
    }

    /// Applies the map to every product of Pauli eigenstates plus a fixed set of
    /// random pure states and checks the outputs for negative eigenvalues.
    ///
    /// This is a necessary-condition search, so `true` means no witness was found.
    fn sampled_positivity(&self) -> Result<bool> {
        let sum = self.operator_sum()?;
        let n = self.n;
        let d = dense::dim(n);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let single: [[Complex64; 2]; 6] = [
            [c(1., 0.), c(0., 0.)],
            [c(0., 0.), c(1., 0.)],
            [c(h, 0.), c(h, 0.)],
            [c(h, 0.), c(-h, 0.)],
            [c(h, 0.), c(0., h)],
            [c(h, 0.), c(0., -h)],
        ];
        let mut states = Vec::new();
        for code in 0..6usize.pow(n as u32) {
            let mut v = dense::CVector::from_element(1, c(1., 0.));
            let mut rest = code;
            for _ in 0..n {
                let s = single[rest % 6];
                rest /= 6;
                v = v.kronecker(&dense::CVector::from_row_slice(&s));
            }
            states.push(v);
        }
        for i in 0..POSITIVITY_RANDOM_STATES {
            let mut rng = substream(0, domain::POSITIVITY, i);
            states.push(dense::random_state(d, &mut rng));
        }
        for psi in states {
            let out = sum.apply(&dense::projector(&psi));
            let scale = out.iter().map(|v| v.norm()).fold(1.0, f64::max);
            if dense::min_eigenvalue(&out) < -PSD_TOL * scale {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn disjoint_support_coarse_grain(n: usize, cutoff: usize, layers: &[PauliLayer]) -> Option<CoarseGrainedDiagonal> {
    let mut used = Bits::zeros(n);
    for layer in layers {
        let footprint = layer.iter().fold(Bits::zeros(n), |acc, (p, _)| acc.or(&p.support()));
        let union = used.or(&footprint);
        if union.count_ones() != used.count_ones() + footprint.count_ones() {
            return None;
        }
        used = union;
    }
    // distribution over supports of weight ≤ cutoff; heavier mass lumped together
    let mut dist: BTreeMap<Bits, f64> = BTreeMap::new();
    dist.insert(Bits::zeros(n), 1.0);
    let mut overflow = 0.0;
    for layer in layers {
        let mut next: BTreeMap<Bits, f64> = BTreeMap::new();
        let mut next_overflow = 0.0;
        for (s, v) in &dist {
            for (p, q) in layer {
                let support = s.or(&p.support());
                if support.count_ones() <= cutoff {
                    *next.entry(support).or_insert(0.0) += v * q;
                } else {
                    next_overflow += v * q;
                }
            }
        }
        let layer_total: f64 = layer.iter().map(|(_, q)| q).sum();
        next_overflow += overflow * layer_total;
        dist = next;
        overflow = next_overflow;
    }
    let mut cg = CoarseGrainedDiagonal::from_contributions(n, cutoff, dist);
    if cutoff < n {
        cg.p_w[cutoff + 1] += overflow;
    }
    Some(cg)
}

fn is_psd(chi: &ChiMatrix) -> bool {
    let h = (chi.matrix() + chi.matrix().adjoint()).scale(0.5);
    let ev = h.symmetric_eigenvalues();
    let max = ev.iter().copied().fold(0.0, f64::max);
    let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
    min >= -PSD_TOL * max.max(f64::MIN_POSITIVE)
}

/// Canonical Kraus form: orthogonal operators from the Gram matrix, dropping null directions.
pub fn compress_kraus(kraus: Vec<CMatrix>) -> Vec<CMatrix> {
    if kraus.len() <= 1 {
        return kraus;
    }
    let m = kraus.len();
    let gram = DMatrix::from_fn(m, m, |j, k| {
        kraus[j].iter().zip(kraus[k].iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>()
    });
    let eig = gram.symmetric_eigen();
    let max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..m).filter(|&k| eig.eigenvalues[k] > 1e-14 * max.max(f64::MIN_POSITIVE)).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let d = kraus[0].nrows();
    let out: Vec<CMatrix> = order
        .iter()
        .map(|&k| {
            let mut a = CMatrix::zeros(d, d);
            for (j, kj) in kraus.iter().enumerate() {
                a += kj * eig.eigenvectors[(j, k)];
            }
            a
        })
        .collect();
    if out.is_empty() {
        vec![CMatrix::zeros(d, d)]
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_kraus(n: usize, count: usize, seed: u64) -> Vec<CMatrix> {
        use rand_distr::StandardNormal;
        let mut rng = substream(seed, domain::GENERIC, 0);
        let d = dense::dim(n);
        let raw: Vec<CMatrix> = (0..count)
            .map(|_| CMatrix::from_fn(d, d, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal))))
            .collect();
        // normalize so Σ A†A = I via S^{-1/2}
        let s = raw.iter().fold(CMatrix::zeros(d, d), |acc, a| acc + a.adjoint() * a);
        let e = s.symmetric_eigen();
        let inv_sqrt = &e.eigenvectors
            * CMatrix::from_diagonal(&e.eigenvalues.map(|v| c(1.0 / v.sqrt(), 0.0)))
            * e.eigenvectors.adjoint();
        raw.into_iter().map(|a| a * &inv_sqrt).collect()
    }

    fn random_density(d: usize, seed: u64) -> CMatrix {
        let mut rng = substream(seed, domain::GENERIC, 1);
        let mut rho = CMatrix::zeros(d, d);
        for _ in 0..3 {
            let w: f64 = rng.random();
            rho += dense::projector(&dense::random_state(d, &mut rng)).scale(w);
        }
        let t = dense::trace(&rho);
        rho / t
    }

    #[test]
    fn kraus_chi_round_trip_on_random_channels() {
        for seed in 0..100u64 {
            let n = 1 + (seed as usize % 3);
            let kraus = random_kraus(n, 1 + (seed as usize % 4), seed);
            let chi = chi_from_kraus(&kraus).unwrap();
            let model = ChannelModel::from_kraus(kraus.clone()).unwrap();
            for j in 0..20 {
                let rho = random_density(dense::dim(n), seed * 100 + j);
                let direct = model.apply(&rho).unwrap();
                let via = apply_chi(&chi, &rho).unwrap();
                assert!(dense::max_abs_diff(&direct, &via) < 1e-10);
            }
        }
    }

    #[test]
    fn random_cp_channels_satisfy_cauchy_schwarz() {
        for seed in 0..200u64 {
            let n = 1 + (seed as usize % 3);
            let chi = chi_from_kraus(&random_kraus(n, 2, 1000 + seed)).unwrap();
            assert!(check_cp_bound_with_tol(&chi, 1e-9).is_empty(), "seed {seed}");
            assert!(check_positive_bound(&chi).is_empty());
        }
    }

    #[test]
    fn classification_examples() {
        let cnot = ChannelModel::unitary(noise::cnot()).unwrap().classify();
        assert!(cnot.hermitian_preserving && cnot.trace_preserving && cnot.completely_positive);

        let t = ChannelModel::from_chi(noise::transpose_chi(1).unwrap()).classify();
        assert!(t.hermitian_preserving && t.trace_preserving && !t.completely_positive);
        assert_eq!(t.positive, Tristate::Yes);

        let low = ChannelModel::from_chi(ChiMatrix::diagonal(1, &[0.9, 0.0, 0.0, 0.0]).unwrap()).classify();
        assert!(!low.trace_preserving);

        // Passes the necessary bounds but stretches the Bloch y component by 1.2.
        let stretch = ChiMatrix::diagonal(1, &[0.9, -0.3, 0.2, 0.2]).unwrap();
        assert!(check_positive_bound(&stretch).is_empty());
        let cls = ChannelModel::from_chi(stretch).classify();
        assert!(!cls.completely_positive);
        assert_eq!(cls.positive, Tristate::No);

        // Contracts every Bloch component, so positive though not CP.
        let flip = ChannelModel::from_chi(ChiMatrix::diagonal(1, &[-0.4, 0.45, 0.45, 0.5]).unwrap()).classify();
        assert!(!flip.completely_positive);
        assert_eq!(flip.positive, Tristate::Yes);
    }

    #[test]
    fn sign_split_gives_two_cp_maps() {
        let chi = noise::transpose_chi(2).unwrap();
        let e = diagonalize_chi(&chi).unwrap();
        let (plus, minus) = e.split_positive_negative().unwrap();
        assert!(ChannelModel::from_chi(plus.clone()).classify().completely_positive);
        assert!(ChannelModel::from_chi(minus.clone()).classify().completely_positive);
        assert!(dense::max_abs_diff(&(plus.matrix() - minus.matrix()), chi.matrix()) < 1e-12);
    }

    #[test]
    fn trace_condition_matches_dense_sum() {
        for seed in 0..10u64 {
            let n = 1 + (seed as usize % 2);
            let chi = chi_from_kraus(&random_kraus(n, 3, 50 + seed)).unwrap();
            assert!(chi.is_trace_preserving(1e-9));
            // dense Σ χ_{l,l'} P_{l'} P_l
            let d = dense::dim(n);
            let ps: Vec<CMatrix> = (0..chi.labels() as u64)
                .map(|l| crate::pauli::PauliLabel::new(n, l).unwrap().to_operator().to_dense())
                .collect();
            let mut acc = CMatrix::zeros(d, d);
            for l in 0..chi.labels() {
                for lp in 0..chi.labels() {
                    acc += &ps[lp] * &ps[l] * chi.get(l, lp);
                }
            }
            assert!(dense::max_abs_diff(&acc, &CMatrix::identity(d, d)) < 1e-10);
        }
        let broken = ChiMatrix::diagonal(1, &[0.5, 0.5, 0.5, 0.0]).unwrap();
        assert!(!broken.is_trace_preserving(1e-9));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let n = 2;
        let h = ChannelModel::embed_kraus(&[noise::hadamard()], &[0], n).unwrap();
        let cx = ChannelModel::unitary(noise::cnot()).unwrap();
        let dep = ChannelModel::embed_kraus(&noise::depolarizing(0.2), &[1], n).unwrap();
        let total = h.then(&cx).unwrap().then(&dep).unwrap();
        let rho = random_density(4, 9);
        let seq = dep.apply(&cx.apply(&h.apply(&rho).unwrap()).unwrap()).unwrap();
        assert!(dense::max_abs_diff(&total.apply(&rho).unwrap(), &seq) < 1e-12);
        assert!(total.kraus().unwrap().len() <= 16);
    }

    #[test]
    fn pauli_channels_compose_sparsely() {
        let ch = ChannelModel::local_depolarizing(40, 0.01).unwrap();
        assert_eq!(ch.pauli_layers().unwrap().len(), 40);
        let cg = ch.coarse_grain(2).unwrap();
        let q: f64 = 0.0075;
        assert!((cg.p_w[0] - (1.0 - q).powi(40)).abs() < 1e-12);
        assert!((cg.p_w[1] - 40.0 * q * (1.0 - q).powi(39)).abs() < 1e-12);
        assert!((cg.total() - 1.0).abs() < 1e-12);
        let single: Bits = format!("1{}", "0".repeat(39)).parse().unwrap();
        assert!((cg.get(&single) - q * (1.0 - q).powi(39)).abs() < 1e-14);

        let small = ChannelModel::local_depolarizing(2, 0.3).unwrap();
        assert_eq!(small.pauli_terms().unwrap().unwrap().len(), 16);
        assert!((small.chi().unwrap().diag(0) - 0.775f64.powi(2)).abs() < 1e-12);
        let dense_cg = coarse_grain(small.chi().unwrap());
        let sparse_cg = small.coarse_grain(2).unwrap();
        for (s, v) in &dense_cg.chi_col {
            assert!((sparse_cg.get(s) - v).abs() < 1e-12);
        }
    }
}
