//! Haar-random unitaries and the second-moment twirl identity.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dense::{self, c, CMatrix};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// QR of a complex Ginibre matrix with the phases of `diag(R)` folded into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `∫dU Tr[A₁U†B₁UA₂U†B₂U]` in closed form.
pub fn haar_moment_closed_form(a1: &CMatrix, a2: &CMatrix, b1: &CMatrix, b2: &CMatrix) -> Complex64 {
    let d = a1.nrows() as f64;
    let tr = dense::trace;
    let tr_a12 = tr(&(a1 * a2));
    let tr_b12 = tr(&(b1 * b2));
    let (ta1, ta2, tb1, tb2) = (tr(a1), tr(a2), tr(b1), tr(b2));
    let denom = d * d - 1.0;
    tr_a12 / denom * (tb1 * tb2 - tr_b12 / d) + ta1 * ta2 / denom * (tr_b12 - tb1 * tb2 / d)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarMomentEstimate {
    pub samples: usize,
    pub estimate: [f64; 2],
    pub stderr: [f64; 2],
    pub closed_form: [f64; 2],
}

impl HaarMomentEstimate {
    /// `|estimate - closed form|` in units of the combined standard error.
    pub fn z_score(&self) -> f64 {
        let dre = self.estimate[0] - self.closed_form[0];
        let dim = self.estimate[1] - self.closed_form[1];
        let se = (self.stderr[0].powi(2) + self.stderr[1].powi(2)).sqrt();
        if se == 0.0 {
            if dre.abs() + dim.abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (dre * dre + dim * dim).sqrt() / se
        }
    }

    pub fn relative_error(&self) -> f64 {
        let cf = c(self.closed_form[0], self.closed_form[1]);
        (c(self.estimate[0], self.estimate[1]) - cf).norm() / cf.norm().max(f64::MIN_POSITIVE)
    }
}

pub fn haar_twirl_moment<R: Rng + ?Sized>(
    a1: &CMatrix,
    a2: &CMatrix,
    b1: &CMatrix,
    b2: &CMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<HaarMomentEstimate> {
    let d = a1.nrows();
    for m in [a1, a2, b1, b2] {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.nrows() });
        }
    }
    if samples < 2 {
        return Err(Error::validation("samples", "need at least two samples"));
    }
    let (mut s_re, mut s_im, mut ss_re, mut ss_im) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let u = haar_unitary(d, rng);
        let ud = u.adjoint();
        let v = dense::trace(&(a1 * &ud * b1 * &u * a2 * &ud * b2 * &u));
        s_re += v.re;
        s_im += v.im;
        ss_re += v.re * v.re;
        ss_im += v.im * v.im;
    }
    let m = samples as f64;
    let (mean_re, mean_im) = (s_re / m, s_im / m);
    let var = |ss: f64, mean: f64| ((ss / m - mean * mean) * m / (m - 1.0)).max(0.0);
    let cf = haar_moment_closed_form(a1, a2, b1, b2);
    Ok(HaarMomentEstimate {
        samples,
        estimate: [mean_re, mean_im],
        stderr: [(var(ss_re, mean_re) / m).sqrt(), (var(ss_im, mean_im) / m).sqrt()],
        closed_form: [cf.re, cf.im],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{domain, substream};

    #[test]
    fn unitaries_are_unitary_with_uniform_first_moment() {
        let mut rng = substream(1, domain::HAAR, 0);
        let mut fourth = 0.0;
        let m = 20_000;
        for _ in 0..m {
            let u = haar_unitary(2, &mut rng);
            assert!(dense::max_abs_diff(&(u.adjoint() * &u), &CMatrix::identity(2, 2)) < 1e-12);
            fourth += u[(0, 0)].norm_sqr().powi(2);
        }
        // E|U₀₀|⁴ = 2/(D(D+1)) = 1/3 at D = 2
        assert!((fourth / m as f64 - 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn closed_form_examples() {
        let id = CMatrix::identity(2, 2);
        let v = haar_moment_closed_form(&id, &id, &id, &id);
        assert!((v - c(2.0, 0.0)).norm() < 1e-12);
        let z = crate::channel::noise::pauli_z();
        let x = crate::channel::noise::pauli_x();
        let v = haar_moment_closed_form(&z, &z, &x, &x);
        assert!((v - c(-2.0 / 3.0, 0.0)).norm() < 1e-12);
    }
}
