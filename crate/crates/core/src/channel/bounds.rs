//! Necessary conditions on χ for complete positivity and for positivity.

use serde::{Deserialize, Serialize};

use crate::channel::chi::ChiMatrix;

pub const DEFAULT_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `|χ_{l,l'}|² ≤ χ_{l,l} χ_{l',l'}` fails.
    CauchySchwarz,
    /// A CP map has a negative diagonal entry.
    NegativeDiagonal,
    /// `|χ_{l,l'}|² ≤ χ_{l,l}χ_{l',l'} + (χ_{l,l}+χ_{l',l'})/D + 1/D²` fails.
    PositiveOffDiagonal,
    /// A diagonal entry lies outside `[-1/D, 1]`.
    DiagonalRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub kind: BoundKind,
    pub row: usize,
    pub col: usize,
    /// Left-hand side of the violated inequality.
    pub lhs: f64,
    /// Right-hand side (the bound).
    pub rhs: f64,
}

pub fn check_cp_bound(chi: &ChiMatrix) -> Vec<BoundViolation> {
    check_cp_bound_with_tol(chi, DEFAULT_BOUND_TOL)
}

pub fn check_cp_bound_with_tol(chi: &ChiMatrix, tol: f64) -> Vec<BoundViolation> {
    let labels = chi.labels();
    let mut out = Vec::new();
    for l in 0..labels {
        let d = chi.diag(l);
        if d < -tol {
            out.push(BoundViolation { kind: BoundKind::NegativeDiagonal, row: l, col: l, lhs: d, rhs: 0.0 });
        }
    }
    for l in 0..labels {
        for lp in (l + 1)..labels {
            let lhs = chi.get(l, lp).norm_sqr();
            let rhs = chi.diag(l) * chi.diag(lp);
            if lhs > rhs + tol {
                out.push(BoundViolation { kind: BoundKind::CauchySchwarz, row: l, col: lp, lhs, rhs });
            }
        }
    }
    out
}

pub fn check_positive_bound(chi: &ChiMatrix) -> Vec<BoundViolation> {
    check_positive_bound_with_tol(chi, DEFAULT_BOUND_TOL)
}

pub fn check_positive_bound_with_tol(chi: &ChiMatrix, tol: f64) -> Vec<BoundViolation> {
    let labels = chi.labels();
    let d = (1usize << chi.n()) as f64;
    let mut out = Vec::new();
    for l in 0..labels {
        let v = chi.diag(l);
        if v < -1.0 / d - tol {
            out.push(BoundViolation { kind: BoundKind::DiagonalRange, row: l, col: l, lhs: v, rhs: -1.0 / d });
        } else if v > 1.0 + tol {
            out.push(BoundViolation { kind: BoundKind::DiagonalRange, row: l, col: l, lhs: v, rhs: 1.0 });
        }
    }
    for l in 0..labels {
        for lp in (l + 1)..labels {
            let (a, b) = (chi.diag(l), chi.diag(lp));
            let lhs = chi.get(l, lp).norm_sqr();
            let rhs = a * b + (a + b) / d + 1.0 / (d * d);
            if lhs > rhs + tol {
                out.push(BoundViolation { kind: BoundKind::PositiveOffDiagonal, row: l, col: lp, lhs, rhs });
            }
        }
    }
    out
}
