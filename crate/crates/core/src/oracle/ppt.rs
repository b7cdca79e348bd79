//! Separability from the symplectic spectrum of the partially transposed covariance.

use nalgebra::{Matrix4, Vector4};

use crate::ncs::symplectic_j;
use crate::separability::Verdict;
use crate::wigner::CovarianceMatrix;

/// Slack below `hbar / 2` still counted as separable.
pub const PPT_TOLERANCE: f64 = 1e-10;

/// Symplectic eigenvalues `|Im eig(J M)|`, ascending, one per mode.
pub fn symplectic_spectrum(m: &Matrix4<f64>) -> [f64; 2] {
    let mut mags: Vec<f64> = (symplectic_j() * m)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.im.abs())
        .collect();
    mags.sort_by(f64::total_cmp);
    // eigenvalues come in +-i nu pairs
    [0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])]
}

/// Minimum symplectic eigenvalue of `P V P` with `P = diag(1, 1, 1, -1)`, and the verdict.
pub fn ppt_symplectic_check(v: &CovarianceMatrix) -> (f64, Verdict) {
    let p = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
    let nu = symplectic_spectrum(&(p * v.v * p))[0];
    let verdict = if nu >= 0.5 * v.hbar - PPT_TOLERANCE {
        Verdict::Separable
    } else {
        Verdict::Entangled
    };
    (nu, verdict)
}

/// `(hbar/2) [[c I, s Z], [s Z, c I]]` with `c = cosh 2r`, `s = sinh 2r`, `Z = diag(1, -1)`.
pub fn two_mode_squeezed_covariance(r: f64, hbar: f64) -> CovarianceMatrix {
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    #[rustfmt::skip]
    let v = Matrix4::new(
        c,   0.0, s,   0.0,
        0.0, c,   0.0, -s,
        s,   0.0, c,   0.0,
        0.0, -s,  0.0, c,
    );
    CovarianceMatrix::new(v * (0.5 * hbar), hbar)
}
