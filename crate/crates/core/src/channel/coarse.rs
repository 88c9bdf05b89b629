//! Diagonal χ collected by support and by Pauli weight.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::channel::chi::ChiMatrix;
use crate::pauli::{supports_up_to, PauliLabel, PauliOperator};

/// `χ^col_v = Σ_{labels with support v} χ_{l,l}` and `p_w = Σ_{|v| = w} χ^col_v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoarseGrainedDiagonal {
    pub n: usize,
    pub cutoff: usize,
    pub chi_col: BTreeMap<Bits, f64>,
    pub p_w: Vec<f64>,
}

impl CoarseGrainedDiagonal {
    /// Builds from `(support, value)` contributions, keeping supports of weight `≤ cutoff`
    /// in `chi_col` while `p_w` covers every weight.
    pub fn from_contributions(n: usize, cutoff: usize, items: impl IntoIterator<Item = (Bits, f64)>) -> Self {
        let cutoff = cutoff.min(n);
        let mut chi_col: BTreeMap<Bits, f64> = supports_up_to(n, cutoff).into_iter().map(|s| (s, 0.0)).collect();
        let mut p_w = vec![0.0; n + 1];
        for (support, v) in items {
            let w = support.count_ones();
            p_w[w] += v;
            if w <= cutoff {
                *chi_col.entry(support).or_insert(0.0) += v;
            }
        }
        CoarseGrainedDiagonal { n, cutoff, chi_col, p_w }
    }

    /// From a sparse Pauli channel `Σ p_P P ρ P`.
    pub fn from_pauli_terms(n: usize, cutoff: usize, terms: &[(PauliOperator, f64)]) -> Self {
        Self::from_contributions(n, cutoff, terms.iter().map(|(p, v)| (p.support(), *v)))
    }

    pub fn get(&self, support: &Bits) -> f64 {
        self.chi_col.get(support).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.p_w.iter().sum()
    }

    /// Mass on weights above the cutoff.
    pub fn tail_mass(&self) -> f64 {
        self.p_w[self.cutoff + 1..].iter().sum()
    }

    /// Restricts `chi_col` to weight `≤ cutoff`, keeping `p_w`.
    pub fn truncated(&self, cutoff: usize) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let chi_col =
            self.chi_col.iter().filter(|(s, _)| s.count_ones() <= cutoff).map(|(s, v)| (s.clone(), *v)).collect();
        CoarseGrainedDiagonal { n: self.n, cutoff, chi_col, p_w: self.p_w.clone() }
    }
}

pub fn coarse_grain(chi: &ChiMatrix) -> CoarseGrainedDiagonal {
    let n = chi.n();
    CoarseGrainedDiagonal::from_contributions(
        n,
        n,
        (0..chi.labels()).map(|l| (PauliLabel::new(n, l as u64).expect("in range").support(), chi.diag(l))),
    )
}
