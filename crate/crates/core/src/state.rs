//! Gaussian ground state `psi(x) = N0 exp(-x^T Lambda x / 2)` annihilated by both modes.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix2c;
use crate::modes::{BasisKind, ModeBasis};

/// Relative threshold for `|det U_p|`.
const SINGULAR_UP_TOL: f64 = 1e-13;

/// Width matrix of a two-mode Gaussian wavefunction.
///
/// Only the symmetrized off-diagonal `(Lambda12 + Lambda21) / 2` is kept since
/// nothing else enters `x^T Lambda x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianGroundState {
    pub lambda11: Complex64,
    pub lambda22: Complex64,
    pub lambda12: Complex64,
    pub hbar: f64,
}

impl GaussianGroundState {
    /// Validates that `Re Lambda` is positive definite.
    pub fn new(
        lambda11: Complex64,
        lambda22: Complex64,
        lambda12: Complex64,
        hbar: f64,
    ) -> Result<Self> {
        let s = Self {
            lambda11,
            lambda22,
            lambda12,
            hbar,
        };
        s.check_normalizable()?;
        Ok(s)
    }

    pub fn check_normalizable(&self) -> Result<()> {
        let r = self.lambda_r();
        let finite = [self.lambda11, self.lambda22, self.lambda12]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite || !(r[(0, 0)] > 0.0) || !(r.determinant() > 0.0) {
            return Err(Error::NotNormalizable(format!(
                "Re Lambda = [[{}, {}], [{}, {}]] is not positive definite",
                r[(0, 0)],
                r[(0, 1)],
                r[(1, 0)],
                r[(1, 1)]
            )));
        }
        Ok(())
    }

    pub fn lambda(&self) -> Matrix2c {
        Matrix2c::new(self.lambda11, self.lambda12, self.lambda12, self.lambda22)
    }

    /// Real part `Lambda_r`.
    pub fn lambda_r(&self) -> Matrix2<f64> {
        self.lambda().map(|z| z.re)
    }

    /// Imaginary part `Lambda_c`.
    pub fn lambda_c(&self) -> Matrix2<f64> {
        self.lambda().map(|z| z.im)
    }

    /// `Im` of the symmetrized off-diagonal entry.
    pub fn lambda12c(&self) -> f64 {
        self.lambda12.im
    }
}

/// `Lambda = (i / hbar) U_p^{-1} U_x`, symmetrized.
pub fn lambda_from_coefficients(ux: &Matrix2c, up: &Matrix2c, hbar: f64) -> Result<Matrix2c> {
    let det = up.determinant();
    let scale = up.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(2);
    if !(det.norm() > SINGULAR_UP_TOL * scale) {
        return Err(Error::SingularUp(det.norm()));
    }
    let inv = up.try_inverse().ok_or(Error::SingularUp(det.norm()))?;
    let l = inv * ux * Complex64::new(0.0, 1.0 / hbar);
    Ok((l + l.transpose()) * Complex64::new(0.5, 0.0))
}

/// The closed-form entries `(Lambda11, Lambda22, Lambda12c)` from mode coefficients.
///
/// Returns `None` when the common denominator vanishes.
pub fn closed_form_lambda(kappa: &[[f64; 4]; 2], hbar: f64) -> Option<(f64, f64, f64)> {
    let [[k11, k21, k31, k41], [k12, k22, k32, k42]] = *kappa;
    let den = hbar * (k21 * k42 - k22 * k41);
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    Some((
        (k41 * k12 - k42 * k11) / den,
        (k21 * k32 - k22 * k31) / den,
        (k42 * k31 - k41 * k32) / den,
    ))
}

/// Both printed expressions for `Lambda12c`; they coincide on exact eigenvectors.
pub fn lambda12c_forms(kappa: &[[f64; 4]; 2], hbar: f64) -> (f64, f64) {
    let [[k11, k21, k31, k41], [k12, k22, k32, k42]] = *kappa;
    let den = hbar * (k21 * k42 - k22 * k41);
    (
        (k42 * k31 - k41 * k32) / den,
        (k12 * k21 - k22 * k11) / den,
    )
}

/// Solves the two annihilation conditions for the ground-state width matrix.
pub fn ground_state(basis: &ModeBasis, hbar: f64) -> Result<GaussianGroundState> {
    match basis.kind {
        BasisKind::Coupled { kappa } => {
            // U_p = [[k21, i k41], [k22, i k42]] up to row scaling
            let scale = kappa
                .iter()
                .flat_map(|k| [k[1].abs(), k[3].abs()])
                .fold(0.0, f64::max)
                .powi(2);
            let det = kappa[0][1] * kappa[1][3] - kappa[1][1] * kappa[0][3];
            if !(det.abs() > SINGULAR_UP_TOL * scale) {
                return Err(Error::SingularUp(det.abs()));
            }
            let (l11, l22, l12c) =
                closed_form_lambda(&kappa, hbar).ok_or(Error::SingularUp(det.abs()))?;
            GaussianGroundState::new(
                Complex64::new(l11, 0.0),
                Complex64::new(l22, 0.0),
                Complex64::new(0.0, l12c),
                hbar,
            )
        }
        BasisKind::Decoupled => {
            let l = lambda_from_coefficients(&basis.ux(), &basis.up(), hbar)?;
            GaussianGroundState::new(l[(0, 0)], l[(1, 1)], l[(0, 1)], hbar)
        }
    }
}

/// `N0 = (det Lambda_r)^{1/4} / sqrt(pi)`, so that `|psi|^2` integrates to one.
pub fn normalization(state: &GaussianGroundState) -> Result<f64> {
    state.check_normalizable()?;
    Ok(state.lambda_r().determinant().powf(0.25) / PI.sqrt())
}

/// `psi(x1, x2)`, with the (arbitrary) global phase fixed to zero at the origin.
pub fn evaluate_psi(state: &GaussianGroundState, x1: f64, x2: f64) -> Complex64 {
    let n0 = state.lambda_r().determinant().powf(0.25) / PI.sqrt();
    let q = state.lambda11 * x1 * x1 + state.lambda22 * x2 * x2 + state.lambda12 * (2.0 * x1 * x2);
    (-0.5 * q).exp() * n0
}
