//! Wigner function and covariance (noise) matrix of a Gaussian ground state.
//!
//! The Wigner function is carried in the mixed ordering `(x1, x2, p1, p2)`,
//! where it reads `W = exp(-X^T Lambda_m X) / (pi hbar)^2`. Covariance
//! matrices handed to callers are always in `(x1, p1, x2, p2)` ordering.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::linalg::{min_eig_hermitian, symmetrize4};
use crate::ncs::{darboux_map, NcParams};
use crate::state::GaussianGroundState;

/// Permutation between `(x1, x2, p1, p2)` and `(x1, p1, x2, p2)`; it is its own inverse.
pub fn reorder_permutation() -> Matrix4<f64> {
    #[rustfmt::skip]
    let s = Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    );
    s
}

/// Re-expresses a quadratic form given in `(x1, x2, p1, p2)` in `(x1, p1, x2, p2)`.
pub fn mixed_to_canonical(m: &Matrix4<f64>) -> Matrix4<f64> {
    let s = reorder_permutation();
    s * m * s.transpose()
}

pub fn canonical_to_mixed(m: &Matrix4<f64>) -> Matrix4<f64> {
    let s = reorder_permutation();
    s.transpose() * m * s
}

/// Gaussian Wigner function `exp(-X^T Lambda_m X) / (pi hbar)^2` in mixed ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerGaussian {
    pub lambda_m: Matrix4<f64>,
    pub hbar: f64,
}

impl WignerGaussian {
    pub fn from_blocks(
        l1: &Matrix2<f64>,
        l12: &Matrix2<f64>,
        l2: &Matrix2<f64>,
        hbar: f64,
    ) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(l1);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(l12);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&l12.transpose());
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(l2);
        Self { lambda_m: m, hbar }
    }

    pub fn lambda1(&self) -> Matrix2<f64> {
        self.lambda_m.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn lambda12(&self) -> Matrix2<f64> {
        self.lambda_m.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn lambda2(&self) -> Matrix2<f64> {
        self.lambda_m.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn determinant(&self) -> f64 {
        self.lambda_m.determinant()
    }

    /// `W(X)` for a phase-space point in `(x1, x2, p1, p2)` ordering.
    pub fn density_mixed(&self, x: &Vector4<f64>) -> f64 {
        (-(x.transpose() * self.lambda_m * x)[(0, 0)]).exp() / (PI * self.hbar).powi(2)
    }

    /// `W(X)` for a phase-space point in `(x1, p1, x2, p2)` ordering.
    pub fn density(&self, x: &Vector4<f64>) -> f64 {
        self.density_mixed(&(reorder_permutation().transpose() * x))
    }
}

/// Builds `Lambda_m` from the wavefunction width matrix:
/// `Lambda_1 = Lambda_r + Lambda_c Lambda_r^-1 Lambda_c^T`,
/// `Lambda_2 = Lambda_r^-1 / hbar^2`, `Lambda_12 = Lambda_c Lambda_r^-1 / hbar`.
pub fn wigner_from_state(state: &GaussianGroundState) -> Result<WignerGaussian> {
    state.check_normalizable()?;
    let hbar = state.hbar;
    let lr = state.lambda_r();
    let lc = state.lambda_c();
    let lr_inv = lr
        .try_inverse()
        .ok_or_else(|| Error::NotNormalizable("Re Lambda is singular".into()))?;
    let l1 = lr + lc * lr_inv * lc.transpose();
    let l2 = lr_inv / (hbar * hbar);
    let l12 = lc * lr_inv / hbar;
    Ok(WignerGaussian::from_blocks(&l1, &l12, &l2, hbar))
}

/// Symmetrized second moments in `(x1, p1, x2, p2)` ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    pub v: Matrix4<f64>,
    pub hbar: f64,
}

impl CovarianceMatrix {
    pub fn new(v: Matrix4<f64>, hbar: f64) -> Self {
        Self {
            v: symmetrize4(&v),
            hbar,
        }
    }

    pub fn v11(&self) -> Matrix2<f64> {
        self.v.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn v12(&self) -> Matrix2<f64> {
        self.v.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn v22(&self) -> Matrix2<f64> {
        self.v.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Smallest eigenvalue of `V + (i hbar / 2) J`.
    pub fn rsup_min(&self) -> f64 {
        rsup_check(&self.v, self.hbar, &crate::ncs::symplectic_j())
    }

    /// Row-major entries, the layout used in reports.
    pub fn entries(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = self.v[(r, c)];
            }
        }
        out
    }
}

/// Covariance from the closed second moments of `N0 exp(-x^T Lambda x / 2)`:
/// `<x x^T> = Lambda_r^-1 / 2`, `<{x, p^T}>/2 = -(hbar/2) Lambda_r^-1 Lambda_c`,
/// `<p p^T> = (hbar^2/2)(Lambda_r + Lambda_c Lambda_r^-1 Lambda_c)`.
///
/// For real diagonal `Lambda_r` and off-diagonal `Lambda_c` these are the
/// familiar `sigma_11 = diag(1/(hbar L11), hbar D/L22)` forms with `V = (hbar/2) sigma`.
pub fn covariance(state: &GaussianGroundState) -> Result<CovarianceMatrix> {
    state.check_normalizable()?;
    let hbar = state.hbar;
    let lr = state.lambda_r();
    let lc = state.lambda_c();
    let lr_inv = lr
        .try_inverse()
        .ok_or_else(|| Error::NotNormalizable("Re Lambda is singular".into()))?;
    let xx = lr_inv * 0.5;
    let xp = lr_inv * lc * (-0.5 * hbar);
    let pp = (lr + lc * lr_inv * lc) * (0.5 * hbar * hbar);
    let mut mixed = Matrix4::zeros();
    mixed.fixed_view_mut::<2, 2>(0, 0).copy_from(&xx);
    mixed.fixed_view_mut::<2, 2>(0, 2).copy_from(&xp);
    mixed.fixed_view_mut::<2, 2>(2, 0).copy_from(&xp.transpose());
    mixed.fixed_view_mut::<2, 2>(2, 2).copy_from(&pp);
    Ok(CovarianceMatrix::new(mixed_to_canonical(&mixed), hbar))
}

/// `Upsilon V Upsilon^T`, the covariance of the deformed coordinates.
pub fn nc_covariance(v: &CovarianceMatrix, nc: &NcParams) -> Matrix4<f64> {
    let u = darboux_map(nc).upsilon;
    symmetrize4(&(u * v.v * u.transpose()))
}

/// Smallest eigenvalue of the Hermitian matrix `V + (i hbar / 2) J`.
pub fn rsup_check(v: &Matrix4<f64>, hbar: f64, j: &Matrix4<f64>) -> f64 {
    min_eig_hermitian(v, &(j * (0.5 * hbar)))
}
