//! Small dense complex linear-algebra helpers shared by the exact backends.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{check_capacity, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest qubit count handled by dense D×D (and D²×D² χ) operations.
pub const DENSE_QUBIT_CAP: usize = 6;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn dim(n: usize) -> usize {
    1usize << n
}

pub fn check_dense(n: usize) -> Result<()> {
    check_capacity("dense simulation", n, DENSE_QUBIT_CAP)
}

/// `log2` of a square matrix dimension, if it is a power of two.
pub fn qubits_of(m: &CMatrix) -> Result<usize> {
    let d = m.nrows();
    if m.ncols() != d || d == 0 || !d.is_power_of_two() {
        return Err(Error::DimensionMismatch { expected: d.next_power_of_two().max(1), found: m.ncols() });
    }
    Ok(d.trailing_zeros() as usize)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn basis_vector(d: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[i] = c(1.0, 0.0);
    v
}

/// Embed an operator on the ordered qubit list `qubits` (0-based) into `n` qubits.
///
/// Row/column index bit `k` of `op` (most significant first) corresponds to
/// `qubits[k]`.
pub fn embed(op: &CMatrix, qubits: &[usize], n: usize) -> Result<CMatrix> {
    let k = qubits.len();
    if op.nrows() != dim(k) || op.ncols() != dim(k) {
        return Err(Error::DimensionMismatch { expected: dim(k), found: op.nrows() });
    }
    let d = dim(n);
    let local_index =
        |u: usize| -> usize { qubits.iter().fold(0usize, |acc, &q| (acc << 1) | ((u >> (n - 1 - q)) & 1)) };
    let mask: usize = qubits.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    let mut out = CMatrix::zeros(d, d);
    for col in 0..d {
        let lc = local_index(col);
        for lr in 0..dim(k) {
            let entry = op[(lr, lc)];
            if entry == Complex64::default() {
                continue;
            }
            let mut row = col & !mask;
            for (pos, &q) in qubits.iter().enumerate() {
                if (lr >> (k - 1 - pos)) & 1 == 1 {
                    row |= 1usize << (n - 1 - q);
                }
            }
            out[(row, col)] += entry;
        }
    }
    Ok(out)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_state<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    use rand_distr::StandardNormal;
    let v = CVector::from_fn(d, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let norm = v.norm();
    v.unscale(norm)
}

/// Minimum eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}
