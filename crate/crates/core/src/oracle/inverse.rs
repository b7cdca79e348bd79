//! Covariance by inverting the Wigner exponent, `V = Lambda_m^{-1} / 2`.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::wigner::{mixed_to_canonical, CovarianceMatrix, WignerGaussian};

fn assemble(a: &Matrix2<f64>, b: &Matrix2<f64>, c: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&b.transpose());
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(c);
    m
}

/// Partitioned inverse of `[[A, B], [B^T, C]]` through the Schur complement of `A`.
pub fn partitioned_inverse(m: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    let a = m.fixed_view::<2, 2>(0, 0).into_owned();
    let b = m.fixed_view::<2, 2>(0, 2).into_owned();
    let c = m.fixed_view::<2, 2>(2, 2).into_owned();
    let a_inv = a.try_inverse().ok_or(Error::SingularBlock)?;
    let s = c - b.transpose() * a_inv * b;
    let s_inv = s.try_inverse().ok_or(Error::SingularBlock)?;
    let off = -a_inv * b * s_inv;
    let top = a_inv + a_inv * b * s_inv * b.transpose() * a_inv;
    Ok(assemble(&top, &off, &s_inv))
}

/// `V` from the block-inverse of `Lambda_m`, reordered to `(x1, p1, x2, p2)`.
pub fn covariance_via_inverse(w: &WignerGaussian) -> Result<CovarianceMatrix> {
    let inv = partitioned_inverse(&w.lambda_m)?;
    Ok(CovarianceMatrix::new(mixed_to_canonical(&(inv * 0.5)), w.hbar))
}

/// The pure-state shortcut `Lambda_m^{-1} = hbar^2 [[Lambda_2, -Lambda_12^T], [-Lambda_12, Lambda_1]]`.
pub fn simplified_inverse(w: &WignerGaussian) -> Matrix4<f64> {
    let h2 = w.hbar * w.hbar;
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(w.lambda2() * h2));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(-w.lambda12().transpose() * h2));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(-w.lambda12() * h2));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(w.lambda1() * h2));
    m
}

pub fn covariance_via_simplified(w: &WignerGaussian) -> CovarianceMatrix {
    CovarianceMatrix::new(mixed_to_canonical(&(simplified_inverse(w) * 0.5)), w.hbar)
}
