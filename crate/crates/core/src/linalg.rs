//! Small fixed-size helpers shared across modules.

use nalgebra::{ComplexField, Dim, Matrix, Matrix2, Matrix4, RawStorage, SymmetricEigen};
use num_complex::Complex64;

pub type Matrix2c = Matrix2<Complex64>;
pub type Matrix4c = Matrix4<Complex64>;

/// Maximum absolute entry (the residual norm used throughout).
pub fn max_abs<T, R, C, S>(m: &Matrix<T, R, C, S>) -> f64
where
    T: ComplexField<RealField = f64>,
    R: Dim,
    C: Dim,
    S: RawStorage<T, R, C>,
{
    m.iter().map(|z| z.clone().modulus()).fold(0.0, f64::max)
}

/// Complex upcast of a real 4x4 matrix.
pub fn complexify4(m: &Matrix4<f64>) -> Matrix4c {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Smallest eigenvalue of the Hermitian matrix `v + i s`, where `v` is real
/// symmetric and `s` real antisymmetric.
pub fn min_eig_hermitian(v: &Matrix4<f64>, s: &Matrix4<f64>) -> f64 {
    let h = Matrix4c::from_fn(|r, c| Complex64::new(v[(r, c)], s[(r, c)]));
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric part `(m + m^T) / 2`.
pub fn symmetrize4(m: &Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}
