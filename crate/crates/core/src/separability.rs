//! Local symplectic invariants and Simon's separability functional.

use std::fmt;

use nalgebra::{Matrix2, Matrix4};

use crate::error::Result;
use crate::hamiltonian::{to_commutative, CommHamiltonian, NcOscillatorSpec};
use crate::modes::{mode_basis_auto, ModeSpectrum};
use crate::ncs::{j2, NcParams};
use crate::state::{ground_state, GaussianGroundState};
use crate::wigner::{covariance, CovarianceMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    Entangled,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Invariants of `V` under local `Sp(2, R) x Sp(2, R)` congruences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    pub delta1: f64,
    pub delta2: f64,
    pub delta12: f64,
    pub tau_v: f64,
}

pub fn local_invariants(v: &CovarianceMatrix) -> LocalInvariants {
    let j = j2();
    let (a, b, c) = (v.v11(), v.v22(), v.v12());
    LocalInvariants {
        delta1: a.determinant(),
        delta2: b.determinant(),
        delta12: c.determinant(),
        tau_v: (a * j * c * j * b * j * c.transpose() * j).trace(),
    }
}

/// `Ps = D1 D2 + (hbar^2/4 - |D12|)^2 - tau_v - hbar^2 (D1 + D2) / 4`.
pub fn simon_ps(v: &CovarianceMatrix) -> f64 {
    ps_from_invariants(&local_invariants(v), v.hbar)
}

pub fn ps_from_invariants(inv: &LocalInvariants, hbar: f64) -> f64 {
    let q = hbar * hbar / 4.0;
    inv.delta1 * inv.delta2 + (q - inv.delta12.abs()).powi(2)
        - inv.tau_v
        - q * (inv.delta1 + inv.delta2)
}

/// Width of the band around `Ps = 0` still counted as separable.
pub fn separability_tolerance(inv: &LocalInvariants) -> f64 {
    1e-10 * (inv.delta1 * inv.delta2).max(1.0)
}

/// Partial transpose: `p2 -> -p2`.
pub fn mirror_reflect(v: &CovarianceMatrix) -> CovarianceMatrix {
    let p = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    CovarianceMatrix::new(p * v.v * p, v.hbar)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityReport {
    pub invariants: LocalInvariants,
    pub ps: f64,
    pub lambda12c: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
}

/// Simon verdict for an already computed state and covariance.
pub fn report(state: &GaussianGroundState, v: &CovarianceMatrix) -> SeparabilityReport {
    let invariants = local_invariants(v);
    let ps = ps_from_invariants(&invariants, v.hbar);
    let tolerance = separability_tolerance(&invariants);
    SeparabilityReport {
        invariants,
        ps,
        lambda12c: state.lambda12c(),
        verdict: if ps >= -tolerance {
            Verdict::Separable
        } else {
            Verdict::Entangled
        },
        tolerance,
    }
}

/// `LHS - RHS` of the separable-surface condition in the original NC parameters,
/// with `m12 = m1 m2`:
/// `(4h^2/m12 + w1^2 th^2)(eta/m12 + w2^2 th)^2 (eta^2/m12 + 4h^2 w1^2)`
/// `= (4h^2/m12 + w2^2 th^2)(eta/m12 + w1^2 th)^2 (eta^2/m12 + 4h^2 w2^2)`.
pub fn sep1_residual(spec: &NcOscillatorSpec) -> f64 {
    let NcParams { theta, eta, hbar } = spec.nc;
    let m12 = spec.m1 * spec.m2;
    let h4 = 4.0 * hbar * hbar;
    let (w1s, w2s) = (spec.w1t * spec.w1t, spec.w2t * spec.w2t);
    let side = |wa: f64, wb: f64| {
        (h4 / m12 + wa * theta * theta)
            * (eta / m12 + wb * theta).powi(2)
            * (eta * eta / m12 + h4 * wa)
    };
    side(w1s, w2s) - side(w2s, w1s)
}

/// Everything the pipeline produces for one oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Analysis {
    pub spec: NcOscillatorSpec,
    pub hamiltonian: CommHamiltonian,
    pub spectrum: ModeSpectrum,
    pub state: GaussianGroundState,
    pub covariance: CovarianceMatrix,
    pub report: SeparabilityReport,
    pub rsup_min: f64,
    pub sep1_residual: f64,
}

/// Map, diagonalize, build the ground state and its covariance, then apply Simon's test.
pub fn analyze(spec: &NcOscillatorSpec) -> Result<Analysis> {
    let hamiltonian = to_commutative(spec)?;
    let basis = mode_basis_auto(&hamiltonian)?;
    let state = ground_state(&basis, spec.nc.hbar)?;
    let cov = covariance(&state)?;
    Ok(Analysis {
        spec: *spec,
        hamiltonian,
        spectrum: basis.spectrum,
        state,
        covariance: cov,
        report: report(&state, &cov),
        rsup_min: cov.rsup_min(),
        sep1_residual: sep1_residual(spec),
    })
}

pub fn classify(spec: &NcOscillatorSpec) -> Result<SeparabilityReport> {
    analyze(spec).map(|a| a.report)
}

/// Random element of `Sp(2, R) = SL(2, R)` built from a rotation, a squeeze and a shear.
pub fn sp2_from_params(angle: f64, squeeze: f64, shear: f64) -> Matrix2<f64> {
    let (s, c) = angle.sin_cos();
    let rot = Matrix2::new(c, -s, s, c);
    let sq = Matrix2::new(squeeze.exp(), 0.0, 0.0, (-squeeze).exp());
    let sh = Matrix2::new(1.0, shear, 0.0, 1.0);
    rot * sq * sh
}

/// `V11 -> S1 V11 S1^T`, `V22 -> S2 V22 S2^T`, `V12 -> S1 V12 S2^T`.
pub fn local_congruence(v: &CovarianceMatrix, s1: &Matrix2<f64>, s2: &Matrix2<f64>) -> CovarianceMatrix {
    let mut s = Matrix4::zeros();
    s.fixed_view_mut::<2, 2>(0, 0).copy_from(s1);
    s.fixed_view_mut::<2, 2>(2, 2).copy_from(s2);
    CovarianceMatrix::new(s * v.v * s.transpose(), v.hbar)
}
