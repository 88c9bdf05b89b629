//! χ-matrix in the Pauli basis: `Λ(ρ) = Σ χ_{l,l'} P_l ρ P_{l'}`.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::{self, c, CMatrix};
use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PauliOperator};

/// Relative tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// `P_l` as a signed permutation: `P|u⟩ = base · (-1)^{|z & u|} |u ⊕ x⟩`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Monomial {
    pub x: usize,
    pub z: usize,
    pub base: Complex64,
}

impl Monomial {
    pub fn of(p: &PauliOperator) -> Self {
        let (x, z) = p.index_masks();
        Monomial { x, z, base: p.basis_phase_base() }
    }

    #[inline]
    pub fn coeff(&self, u: usize) -> Complex64 {
        if (self.z & u).count_ones() % 2 == 1 {
            -self.base
        } else {
            self.base
        }
    }
}

pub(crate) fn label_monomials(n: usize) -> Vec<Monomial> {
    (0..PauliLabel::count(n))
        .map(|l| Monomial::of(&PauliLabel::new(n, l).expect("label in range").to_operator()))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiMatrix {
    n: usize,
    data: CMatrix,
}

impl ChiMatrix {
    pub fn new(n: usize, data: CMatrix) -> Result<Self> {
        dense::check_dense(n)?;
        let labels = 1usize << (2 * n);
        if data.nrows() != labels || data.ncols() != labels {
            return Err(Error::DimensionMismatch { expected: labels, found: data.nrows() });
        }
        Ok(ChiMatrix { n, data })
    }

    /// Diagonal χ from real entries indexed by label.
    pub fn diagonal(n: usize, diag: &[f64]) -> Result<Self> {
        let labels = 1usize << (2 * n);
        if diag.len() != labels {
            return Err(Error::DimensionMismatch { expected: labels, found: diag.len() });
        }
        let mut m = CMatrix::zeros(labels, labels);
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = c(v, 0.0);
        }
        ChiMatrix::new(n, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of labels, `D²`.
    pub fn labels(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn get(&self, l: usize, lp: usize) -> Complex64 {
        self.data[(l, lp)]
    }

    pub fn diag(&self, l: usize) -> f64 {
        self.data[(l, l)].re
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        (0..self.labels()).map(|l| self.diag(l)).collect()
    }

    /// `Σ_l χ_{l,l}`.
    pub fn trace(&self) -> f64 {
        dense::trace(&self.data).re
    }

    pub fn hermitian_deviation(&self) -> f64 {
        dense::hermitian_deviation(&self.data)
    }

    pub fn is_hermitian(&self) -> bool {
        let scale = self.data.iter().map(|v| v.norm()).fold(1.0, f64::max);
        self.hermitian_deviation() <= HERMITIAN_TOL * scale
    }

    /// Coefficients of `Σ_{l,l'} χ_{l,l'} P_{l'} P_l` in the Pauli basis.
    pub fn trace_condition_coefficients(&self) -> Vec<Complex64> {
        let n = self.n;
        let ops: Vec<PauliOperator> =
            (0..self.labels() as u64).map(|l| PauliLabel::new(n, l).expect("in range").to_operator()).collect();
        let mut acc = vec![Complex64::default(); self.labels()];
        for (l, pl) in ops.iter().enumerate() {
            for (lp, plp) in ops.iter().enumerate() {
                let v = self.data[(l, lp)];
                if v == Complex64::default() {
                    continue;
                }
                let prod = plp.multiply(pl).expect("same n");
                let idx = PauliLabel::from_operator(&prod).expect("in range").index() as usize;
                acc[idx] += v * crate::pauli::i_pow(prod.phase());
            }
        }
        acc
    }

    /// Trace preservation: `Σ χ_{l,l'} P_{l'} P_l = I` within `tol`.
    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.trace_condition_coefficients().iter().enumerate().all(|(i, v)| {
            if i == 0 {
                (v - c(1.0, 0.0)).norm() <= tol
            } else {
                v.norm() <= tol
            }
        })
    }

    /// Row-major CSV with one `"re,im"` cell per entry.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        for r in 0..self.labels() {
            let row: Vec<String> = (0..self.labels())
                .map(|col| format!("{},{}", self.data[(r, col)].re, self.data[(r, col)].im))
                .collect();
            writer.write_record(&row)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> ChiJson {
        let labels =
            (0..self.labels() as u64).map(|l| PauliLabel::new(self.n, l).expect("in range").to_string()).collect();
        let entries = (0..self.labels())
            .map(|r| (0..self.labels()).map(|col| [self.data[(r, col)].re, self.data[(r, col)].im]).collect())
            .collect();
        ChiJson { n: self.n, labels, entries }
    }

    pub fn from_json(doc: &ChiJson) -> Result<Self> {
        let labels = 1usize << (2 * doc.n);
        if doc.entries.len() != labels || doc.entries.iter().any(|r| r.len() != labels) {
            return Err(Error::DimensionMismatch { expected: labels, found: doc.entries.len() });
        }
        let m = DMatrix::from_fn(labels, labels, |r, col| c(doc.entries[r][col][0], doc.entries[r][col][1]));
        ChiMatrix::new(doc.n, m)
    }
}

/// JSON form of a χ-matrix; complex entries are `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ChiJson {
    pub n: usize,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// `Tr[P A]` for a monomial `P`.
fn trace_with(m: &Monomial, a: &CMatrix) -> Complex64 {
    (0..a.nrows()).map(|w| m.coeff(w) * a[(w, w ^ m.x)]).sum()
}

/// χ of `ρ ↦ Σ_k A_k ρ A_k†`, via `a_{k,l} = Tr[P_l A_k]/D`.
pub fn chi_from_kraus(kraus: &[CMatrix]) -> Result<ChiMatrix> {
    let first = kraus.first().ok_or_else(|| Error::validation("kraus", "empty Kraus set"))?;
    let n = dense::qubits_of(first)?;
    dense::check_dense(n)?;
    let d = dense::dim(n);
    for a in kraus {
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: a.nrows() });
        }
    }
    let monomials = label_monomials(n);
    let labels = monomials.len();
    let coeffs = DMatrix::from_fn(kraus.len(), labels, |k, l| trace_with(&monomials[l], &kraus[k]) / d as f64);
    // χ = aᵀ a*  (χ_{l,l'} = Σ_k a_{k,l} a*_{k,l'})
    let chi = coeffs.transpose() * coeffs.map(|v| v.conj());
    ChiMatrix::new(n, chi)
}

/// Expansion coefficients `Tr[P_l A]/D` of an operator in the Pauli basis.
pub fn pauli_coefficients(a: &CMatrix) -> Result<Vec<Complex64>> {
    let n = dense::qubits_of(a)?;
    let d = dense::dim(n) as f64;
    Ok(label_monomials(n).iter().map(|m| trace_with(m, a) / d).collect())
}

/// `Σ_{l,l'} χ_{l,l'} P_l ρ P_{l'}`.
pub fn apply_chi(chi: &ChiMatrix, rho: &CMatrix) -> Result<CMatrix> {
    let d = dense::dim(chi.n());
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho.nrows() });
    }
    let monomials = label_monomials(chi.n());
    let mut out = CMatrix::zeros(d, d);
    let mut partial = CMatrix::zeros(d, d);
    for (l, ml) in monomials.iter().enumerate() {
        partial.fill(Complex64::default());
        let mut any = false;
        for (lp, mlp) in monomials.iter().enumerate() {
            let v = chi.get(l, lp);
            if v == Complex64::default() {
                continue;
            }
            any = true;
            // (ρ P)_{r,c} = ρ_{r, c⊕x} · coeff(c), since P_{w,c} = coeff(c) δ_{w, c⊕x}
            for col in 0..d {
                let src = col ^ mlp.x;
                let k = v * mlp.coeff(col);
                for r in 0..d {
                    partial[(r, col)] += k * rho[(r, src)];
                }
            }
        }
        if !any {
            continue;
        }
        // (P M)_{r,c} = coeff(r ⊕ x) M_{r⊕x, c}
        for r in 0..d {
            let src = r ^ ml.x;
            let k = ml.coeff(src);
            for col in 0..d {
                out[(r, col)] += k * partial[(src, col)];
            }
        }
    }
    Ok(out)
}

/// `χ = B† S B` with generalized Kraus operators `A_k = Σ_l B*_{k,l} P_l`.
#[derive(Debug, Clone)]
pub struct ChiEigenDecomposition {
    pub n: usize,
    /// Real eigenvalues `S_{k,k}`, descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary `B`; row `k` holds the conjugated eigenvector coefficients.
    pub basis: CMatrix,
    pub operators: Vec<CMatrix>,
}

impl ChiEigenDecomposition {
    pub fn reconstruct(&self) -> CMatrix {
        let s = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&v| c(v, 0.0)),
        ));
        self.basis.adjoint() * s * &self.basis
    }

    /// `χ = χ₊ − χ₋` with both parts positive semidefinite.
    pub fn split_positive_negative(&self) -> Result<(ChiMatrix, ChiMatrix)> {
        let part = |keep: &dyn Fn(f64) -> f64| -> Result<ChiMatrix> {
            let s = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                self.eigenvalues.len(),
                self.eigenvalues.iter().map(|&v| c(keep(v), 0.0)),
            ));
            ChiMatrix::new(self.n, self.basis.adjoint() * s * &self.basis)
        };
        Ok((part(&|v| v.max(0.0))?, part(&|v| (-v).max(0.0))?))
    }
}

pub fn diagonalize_chi(chi: &ChiMatrix) -> Result<ChiEigenDecomposition> {
    if !chi.is_hermitian() {
        return Err(Error::NotHermitian(chi.hermitian_deviation()));
    }
    let h = (chi.matrix() + chi.matrix().adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let labels = chi.labels();
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    // Q holds eigenvectors as columns with χ = Q S Q†, so B = Q† (reordered).
    let q = DMatrix::from_fn(labels, labels, |l, k| eig.eigenvectors[(l, order[k])]);
    let basis = q.adjoint();
    let pauli_dense: Vec<CMatrix> =
        (0..labels as u64).map(|l| PauliLabel::new(chi.n(), l).expect("in range").to_operator().to_dense()).collect();
    let d = dense::dim(chi.n());
    let operators = (0..labels)
        .map(|k| {
            let mut a = CMatrix::zeros(d, d);
            for (l, p) in pauli_dense.iter().enumerate() {
                let coef = q[(l, k)];
                if coef.norm() > 0.0 {
                    a += p * coef;
                }
            }
            a
        })
        .collect();
    Ok(ChiEigenDecomposition { n: chi.n(), eigenvalues, basis, operators })
}
