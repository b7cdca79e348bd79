//! Tensorized Gauss-Hermite quadrature over the principal axes of a Gaussian Wigner function.

use std::f64::consts::PI;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};

use crate::error::{Error, Result};
use crate::wigner::{mixed_to_canonical, reorder_permutation, CovarianceMatrix, WignerGaussian};

/// Nodes per axis.
pub const QUADRATURE_ORDER: usize = 32;

/// Nodes and weights for `int f(x) exp(-x^2) dx`, by Newton iteration on the
/// orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (j + 1) as f64).sqrt() * p2 - (j as f64 / (j + 1) as f64).sqrt() * p3;
            }
            pp = (2.0 * n as f64).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Zeroth, first and second moments of a Wigner function in `(x1, p1, x2, p2)` ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceMoments {
    pub mass: f64,
    pub mean: Vector4<f64>,
    pub second: Matrix4<f64>,
}

/// Integrates `W` and `X_a`, `X_a X_b` against it on a `QUADRATURE_ORDER^4` grid.
pub fn quadrature_moments(w: &WignerGaussian) -> Result<PhaseSpaceMoments> {
    let eig = SymmetricEigen::new(w.lambda_m);
    if !eig.eigenvalues.iter().all(|d| *d > 0.0) {
        return Err(Error::InvalidParameter("Lambda_m is not positive definite".into()));
    }
    // X_mixed = R diag(1/sqrt(d)) z, so X^T Lambda_m X = |z|^2
    let scale = Matrix4::from_diagonal(&eig.eigenvalues.map(|d| 1.0 / d.sqrt()));
    let to_canonical = reorder_permutation() * eig.eigenvectors * scale;
    let jac = eig.eigenvalues.iter().map(|d| 1.0 / d.sqrt()).product::<f64>();
    let pref = jac / (PI * w.hbar).powi(2);

    let (nodes, weights) = gauss_hermite(QUADRATURE_ORDER);
    let n = nodes.len();
    let mut mass = 0.0;
    let mut mean = Vector4::zeros();
    let mut second = Matrix4::zeros();
    for a in 0..n {
        for b in 0..n {
            let wab = weights[a] * weights[b];
            for c in 0..n {
                let wabc = wab * weights[c];
                for d in 0..n {
                    let wt = wabc * weights[d];
                    let z = Vector4::new(nodes[a], nodes[b], nodes[c], nodes[d]);
                    let x = to_canonical * z;
                    mass += wt;
                    mean += x * wt;
                    second += x * x.transpose() * wt;
                }
            }
        }
    }
    Ok(PhaseSpaceMoments {
        mass: mass * pref,
        mean: mean * pref,
        second: second * pref,
    })
}

/// `int X_alpha X_beta W d^4X`, indices in `(x1, p1, x2, p2)` ordering.
pub fn gauss_hermite_moments(w: &WignerGaussian, alpha: usize, beta: usize) -> Result<f64> {
    if alpha > 3 || beta > 3 {
        return Err(Error::InvalidParameter("phase-space index out of range".into()));
    }
    Ok(quadrature_moments(w)?.second[(alpha, beta)])
}

/// The analytic reference `Lambda_m^{-1} / 2`, reordered.
pub fn analytic_second_moments(w: &WignerGaussian) -> Option<CovarianceMatrix> {
    w.lambda_m
        .try_inverse()
        .map(|inv| CovarianceMatrix::new(mixed_to_canonical(&(inv * 0.5)), w.hbar))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_rule_matches_tables() {
        // n = 3: nodes 0, +-sqrt(3/2); weights 2 sqrt(pi)/3, sqrt(pi)/6
        let (x, w) = gauss_hermite(3);
        assert!((x[0] - 1.5f64.sqrt()).abs() < 1e-14);
        assert!(x[1].abs() < 1e-14);
        assert!((w[1] - 2.0 * PI.sqrt() / 3.0).abs() < 1e-14);
        assert!((w[0] - PI.sqrt() / 6.0).abs() < 1e-14);
    }

    #[test]
    fn rule_integrates_even_powers() {
        let (x, w) = gauss_hermite(QUADRATURE_ORDER);
        let total: f64 = w.iter().sum();
        assert!((total - PI.sqrt()).abs() < 1e-13);
        // int x^4 e^{-x^2} = 3 sqrt(pi) / 4
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn vacuum_moments() {
        let w = WignerGaussian {
            lambda_m: Matrix4::identity(),
            hbar: 1.0,
        };
        let m = quadrature_moments(&w).unwrap();
        assert!((m.mass - 1.0).abs() < 1e-12);
        for i in 0..4 {
            assert!((m.second[(i, i)] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_second_mode() {
        // Lambda = diag(1, 2): <x2^2> = 1/4, <p2^2> = 1
        let w = WignerGaussian {
            lambda_m: Matrix4::from_diagonal(&Vector4::new(1.0, 2.0, 1.0, 0.5)),
            hbar: 1.0,
        };
        assert!((gauss_hermite_moments(&w, 2, 2).unwrap() - 0.25).abs() < 1e-12);
        assert!((gauss_hermite_moments(&w, 3, 3).unwrap() - 1.0).abs() < 1e-12);
        assert!(gauss_hermite_moments(&w, 4, 0).is_err());
    }

    #[test]
    fn rejects_indefinite() {
        let w = WignerGaussian {
            lambda_m: Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, 1.0, 1.0)),
            hbar: 1.0,
        };
        assert!(quadrature_moments(&w).is_err());
    }
}
