//! Standard gates, noise channels and reference maps.

use crate::channel::chi::ChiMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::dense::{self, c, CMatrix};
use crate::error::{Error, Result};

fn m2(a: [[(f64, f64); 2]; 2]) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, col| c(a[r][col].0, a[r][col].1))
}

pub fn pauli_x() -> CMatrix {
    m2([[(0., 0.), (1., 0.)], [(1., 0.), (0., 0.)]])
}

pub fn pauli_y() -> CMatrix {
    m2([[(0., 0.), (0., -1.)], [(0., 1.), (0., 0.)]])
}

pub fn pauli_z() -> CMatrix {
    m2([[(1., 0.), (0., 0.)], [(0., 0.), (-1., 0.)]])
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    m2([[(h, 0.), (h, 0.)], [(h, 0.), (-h, 0.)]])
}

/// The phase gate `S = diag(1, i)`.
pub fn phase() -> CMatrix {
    m2([[(1., 0.), (0., 0.)], [(0., 0.), (0., 1.)]])
}

pub fn phase_dagger() -> CMatrix {
    phase().adjoint()
}

/// `T = diag(1, e^{iπ/4})`, a non-Clifford test gate.
pub fn t_gate() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    m2([[(1., 0.), (0., 0.)], [(0., 0.), (h, h)]])
}

/// CNOT with the control on the first (most significant) qubit.
pub fn cnot() -> CMatrix {
    CMatrix::from_fn(4, 4, |r, col| if r == [0, 1, 3, 2][col] { c(1., 0.) } else { c(0., 0.) })
}

pub fn cz() -> CMatrix {
    CMatrix::from_fn(4, 4, |r, col| {
        if r != col {
            c(0., 0.)
        } else if r == 3 {
            c(-1., 0.)
        } else {
            c(1., 0.)
        }
    })
}

pub fn swap() -> CMatrix {
    CMatrix::from_fn(4, 4, |r, col| if r == [0, 2, 1, 3][col] { c(1., 0.) } else { c(0., 0.) })
}

/// Looks up a named gate; the arity is `log2` of the matrix size.
pub fn named_gate(name: &str) -> Option<CMatrix> {
    Some(match name.to_ascii_lowercase().as_str() {
        "i" | "id" | "identity" => CMatrix::identity(2, 2),
        "x" => pauli_x(),
        "y" => pauli_y(),
        "z" => pauli_z(),
        "h" => hadamard(),
        "s" => phase(),
        "sdg" => phase_dagger(),
        "t" => t_gate(),
        "cnot" | "cx" => cnot(),
        "cz" => cz(),
        "swap" => swap(),
        _ => return None,
    })
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) && p.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(name, format!("must lie in [0, 1], got {p}")))
    }
}

/// `ρ ↦ (1-p)ρ + p I/2` as Kraus operators `√(1-3p/4) I, √(p/4) X, Y, Z`.
pub fn depolarizing(p: f64) -> Vec<CMatrix> {
    let a = (1.0 - 0.75 * p).max(0.0).sqrt();
    let b = (0.25 * p).max(0.0).sqrt();
    vec![CMatrix::identity(2, 2).scale(a), pauli_x().scale(b), pauli_y().scale(b), pauli_z().scale(b)]
}

pub fn checked_depolarizing(p: f64) -> Result<Vec<CMatrix>> {
    check_probability("p", p)?;
    Ok(depolarizing(p))
}

pub fn bit_flip(p: f64) -> Vec<CMatrix> {
    vec![CMatrix::identity(2, 2).scale((1.0 - p).sqrt()), pauli_x().scale(p.sqrt())]
}

pub fn phase_flip(p: f64) -> Vec<CMatrix> {
    vec![CMatrix::identity(2, 2).scale((1.0 - p).sqrt()), pauli_z().scale(p.sqrt())]
}

pub fn amplitude_damping(gamma: f64) -> Vec<CMatrix> {
    let k0 = m2([[(1., 0.), (0., 0.)], [(0., 0.), ((1.0 - gamma).sqrt(), 0.)]]);
    let k1 = m2([[(0., 0.), (gamma.sqrt(), 0.)], [(0., 0.), (0., 0.)]]);
    vec![k0, k1]
}

/// Named single-qubit noise with parameter `p`.
pub fn named_noise(name: &str, p: f64) -> Result<Vec<CMatrix>> {
    check_probability("p", p)?;
    match name.to_ascii_lowercase().as_str() {
        "depolarizing" => Ok(depolarizing(p)),
        "bit_flip" => Ok(bit_flip(p)),
        "phase_flip" => Ok(phase_flip(p)),
        "amplitude_damping" => Ok(amplitude_damping(p)),
        other => Err(Error::validation("noise", format!("unknown noise model {other:?}"))),
    }
}

/// Random trace-preserving Kraus set: `count` Ginibre matrices `G_k`
/// rescaled by `S^{-1/2}` with `S = Σ G_k†G_k`.
pub fn random_kraus<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Result<Vec<CMatrix>> {
    dense::check_dense(n)?;
    if count == 0 {
        return Err(Error::validation("count", "need at least one Kraus operator"));
    }
    let d = dense::dim(n);
    let raw: Vec<CMatrix> = (0..count)
        .map(|_| CMatrix::from_fn(d, d, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal))))
        .collect();
    let s = raw.iter().fold(CMatrix::zeros(d, d), |acc, a| acc + a.adjoint() * a);
    let e = s.symmetric_eigen();
    let inv_sqrt = &e.eigenvectors
        * CMatrix::from_diagonal(&e.eigenvalues.map(|v| c(1.0 / v.sqrt(), 0.0)))
        * e.eigenvectors.adjoint();
    Ok(raw.into_iter().map(|a| a * &inv_sqrt).collect())
}

/// χ of the transpose map `ρ ↦ ρᵀ` on `n` qubits.
///
/// For one qubit this is `diag(1/2, 1/2, -1/2, 1/2)`; the `n`-qubit map is the
/// tensor power, which is positive but not completely positive.
pub fn transpose_chi(n: usize) -> Result<ChiMatrix> {
    let single = [0.5, 0.5, -0.5, 0.5];
    let mut diag = vec![1.0];
    for _ in 0..n {
        diag = diag.iter().flat_map(|&a| single.iter().map(move |&b| a * b)).collect();
    }
    ChiMatrix::diagonal(n, &diag)
}
