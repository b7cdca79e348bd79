//! Phase-space conventions for the deformed (noncommutative) algebra.
//!
//! Coordinates are always ordered `(x1, p1, x2, p2)`. The canonical
//! commutator is `[X_a, X_b] = i hbar J_ab` with `J = diag(J2, J2)`, and the
//! deformed one is `i hbar_e J~_ab`. The Bopp shift `X~ = Upsilon X` maps the
//! canonical variables onto the deformed ones.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::linalg::max_abs;

/// Noncommutativity scales and the action unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcParams {
    /// Position-position scale.
    pub theta: f64,
    /// Momentum-momentum scale.
    pub eta: f64,
    pub hbar: f64,
}

impl NcParams {
    /// Validated constructor. Both scales must lie in `[0, hbar)`.
    pub fn new(theta: f64, eta: f64, hbar: f64) -> Result<Self> {
        let nc = Self { theta, eta, hbar };
        nc.validate()?;
        Ok(nc)
    }

    /// The commutative limit with the given action unit.
    pub fn commutative(hbar: f64) -> Result<Self> {
        Self::new(0.0, 0.0, hbar)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        for (name, v) in [("theta", self.theta), ("eta", self.eta)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
            if v >= self.hbar {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must stay below hbar = {}",
                    self.hbar
                )));
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        self.theta == 0.0 && self.eta == 0.0
    }
}

/// The 2x2 symplectic unit `[[0, 1], [-1, 0]]`.
pub fn j2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Block-diagonal symplectic form `diag(J2, J2)` in `(x1, p1, x2, p2)` ordering.
pub fn symplectic_j() -> Matrix4<f64> {
    let mut j = Matrix4::zeros();
    j[(0, 1)] = 1.0;
    j[(1, 0)] = -1.0;
    j[(2, 3)] = 1.0;
    j[(3, 2)] = -1.0;
    j
}

/// Canonical and deformed symplectic matrices for one set of NC scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticStructure {
    pub j: Matrix4<f64>,
    pub j_tilde: Matrix4<f64>,
}

impl SymplecticStructure {
    pub fn new(nc: &NcParams) -> Self {
        let hbar_e = effective_planck(nc);
        let mut j_tilde = symplectic_j();
        // off-diagonal blocks +Pi/hbar_e and -Pi/hbar_e with Pi = diag(theta, eta)
        j_tilde[(0, 2)] = nc.theta / hbar_e;
        j_tilde[(1, 3)] = nc.eta / hbar_e;
        j_tilde[(2, 0)] = -nc.theta / hbar_e;
        j_tilde[(3, 1)] = -nc.eta / hbar_e;
        Self {
            j: symplectic_j(),
            j_tilde,
        }
    }
}

/// Bopp-shift matrix taking canonical coordinates to deformed ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxMap {
    pub upsilon: Matrix4<f64>,
}

impl DarbouxMap {
    pub fn apply(&self, x: &nalgebra::Vector4<f64>) -> nalgebra::Vector4<f64> {
        self.upsilon * x
    }

    pub fn determinant(&self) -> f64 {
        self.upsilon.determinant()
    }
}

/// `hbar_e = hbar (1 + theta eta / 4 hbar^2)`.
pub fn effective_planck(nc: &NcParams) -> f64 {
    nc.hbar * (1.0 + nc.theta * nc.eta / (4.0 * nc.hbar * nc.hbar))
}

/// Builds the Bopp shift
/// `x1~ = x1 - (theta/2hbar) p2`, `p1~ = p1 + (eta/2hbar) x2`,
/// `x2~ = x2 + (theta/2hbar) p1`, `p2~ = p2 - (eta/2hbar) x1`.
pub fn darboux_map(nc: &NcParams) -> DarbouxMap {
    let s = nc.theta / (2.0 * nc.hbar);
    let r = nc.eta / (2.0 * nc.hbar);
    #[rustfmt::skip]
    let upsilon = Matrix4::new(
        1.0, 0.0, 0.0, -s,
        0.0, 1.0, r,   0.0,
        0.0, s,   1.0, 0.0,
        -r,  0.0, 0.0, 1.0,
    );
    DarbouxMap { upsilon }
}

/// Max-entry residual of `hbar_e J~ = hbar Upsilon J Upsilon^T`.
pub fn verify_symplectic_relation(nc: &NcParams) -> f64 {
    let s = SymplecticStructure::new(nc);
    let u = darboux_map(nc).upsilon;
    let lhs = s.j_tilde * effective_planck(nc);
    let rhs = u * s.j * u.transpose() * nc.hbar;
    max_abs(&(lhs - rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc(theta: f64, eta: f64) -> NcParams {
        NcParams::new(theta, eta, 1.0).unwrap()
    }

    #[test]
    fn effective_planck_examples() {
        assert_eq!(effective_planck(&nc(0.0, 0.0)), 1.0);
        assert!((effective_planck(&nc(0.2, 0.2)) - 1.01).abs() < 1e-15);
        assert!((effective_planck(&nc(0.1, 0.4)) - 1.01).abs() < 1e-15);
    }

    #[test]
    fn darboux_commutative_limit_is_identity() {
        assert_eq!(darboux_map(&nc(0.0, 0.0)).upsilon, Matrix4::identity());
    }

    #[test]
    fn darboux_position_shift_only() {
        let d = darboux_map(&nc(0.2, 0.0));
        let x = nalgebra::Vector4::new(1.0, 2.0, 3.0, 4.0);
        let y = d.apply(&x);
        assert!((y[0] - (1.0 - 0.1 * 4.0)).abs() < 1e-15);
        assert_eq!(y[1], 2.0);
        assert!((y[2] - (3.0 + 0.1 * 2.0)).abs() < 1e-15);
        assert_eq!(y[3], 4.0);
    }

    #[test]
    fn darboux_determinant_positive_on_grid() {
        // det = (1 - theta eta / 4 hbar^2)^2 in closed form; checked numerically here
        for i in 0..10 {
            for k in 0..10 {
                let p = nc(0.099 * i as f64, 0.099 * k as f64);
                assert!(darboux_map(&p).determinant() > 0.0);
            }
        }
    }

    #[test]
    fn symplectic_relation_examples() {
        assert_eq!(verify_symplectic_relation(&nc(0.0, 0.0)), 0.0);
        assert!(verify_symplectic_relation(&nc(0.3, 0.1)) < 1e-12);
        assert!(verify_symplectic_relation(&nc(0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn structure_properties() {
        let s = SymplecticStructure::new(&nc(0.4, 0.7));
        assert_eq!(s.j * s.j, -Matrix4::identity());
        assert_eq!(s.j.transpose(), -s.j);
        assert_eq!(s.j_tilde.transpose(), -s.j_tilde);
        assert_eq!(s.j_tilde.fixed_view::<2, 2>(0, 0).into_owned(), j2());
        assert_eq!(s.j_tilde.fixed_view::<2, 2>(2, 2).into_owned(), j2());
    }

    #[test]
    fn rejects_out_of_regime() {
        assert!(NcParams::new(-0.1, 0.0, 1.0).is_err());
        assert!(NcParams::new(0.0, 1.0, 1.0).is_err());
        assert!(NcParams::new(0.0, 0.0, 0.0).is_err());
        assert!(NcParams::new(f64::NAN, 0.0, 1.0).is_err());
    }
}
