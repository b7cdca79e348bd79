//! Commutative-space equivalent of the noncommutative anisotropic oscillator.
//!
//! Substituting the Bopp shift into
//! `p1~^2/2m1 + p2~^2/2m2 + m1 w1~^2 x1~^2/2 + m2 w2~^2 x2~^2/2`
//! gives
//! `p1^2/2mu1 + p2^2/2mu2 + alpha1 x1^2/2 + alpha2 x2^2/2 + nu1 {x2, p1} - nu2 {x1, p2}`.

use crate::error::{Error, Result};
use crate::ncs::NcParams;
use crate::timefn::TimeFn;

/// Masses and NC-space frequencies of the two oscillators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcOscillatorSpec {
    pub m1: f64,
    pub m2: f64,
    /// NC-space frequency of the first oscillator.
    pub w1t: f64,
    /// NC-space frequency of the second oscillator.
    pub w2t: f64,
    pub nc: NcParams,
}

impl NcOscillatorSpec {
    pub fn new(m1: f64, m2: f64, w1t: f64, w2t: f64, nc: NcParams) -> Result<Self> {
        let spec = Self { m1, m2, w1t, w2t, nc };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.nc.validate()?;
        for (name, m) in [("m1", self.m1), ("m2", self.m2)] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {m}")));
            }
        }
        for (name, w) in [("omega1t", self.w1t), ("omega2t", self.w2t)] {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be non-negative, got {w}"
                )));
            }
        }
        if self.w1t == 0.0 && self.w2t == 0.0 {
            return Err(Error::InvalidParameter("both frequencies are zero".into()));
        }
        Ok(())
    }

    pub fn is_isotropic(&self) -> bool {
        self.m1 == self.m2 && self.w1t == self.w2t
    }
}

/// Parameters of the equivalent commutative quadratic Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommHamiltonian {
    pub mu1: f64,
    pub mu2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub hbar: f64,
}

impl CommHamiltonian {
    /// Direct construction, mostly for decoupled or hand-built cases.
    pub fn new(
        mu: [f64; 2],
        alpha: [f64; 2],
        nu: [f64; 2],
        hbar: f64,
    ) -> Result<Self> {
        let h = Self {
            mu1: mu[0],
            mu2: mu[1],
            alpha1: alpha[0],
            alpha2: alpha[1],
            nu1: nu[0],
            nu2: nu[1],
            hbar,
        };
        if !(h.mu1 > 0.0 && h.mu2 > 0.0 && h.mu1.is_finite() && h.mu2.is_finite()) {
            return Err(Error::InvalidParameter("effective masses must be positive".into()));
        }
        if !(h.alpha1 >= 0.0 && h.alpha2 >= 0.0) {
            return Err(Error::InvalidParameter("stiffnesses must be non-negative".into()));
        }
        if !(h.nu1.is_finite() && h.nu2.is_finite()) {
            return Err(Error::InvalidParameter("coupling rates must be finite".into()));
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter("hbar must be positive".into()));
        }
        Ok(h)
    }

    /// `omega1 = sqrt(alpha1 / mu1)`.
    pub fn omega1(&self) -> f64 {
        (self.alpha1 / self.mu1).sqrt()
    }

    pub fn omega2(&self) -> f64 {
        (self.alpha2 / self.mu2).sqrt()
    }

    pub fn is_decoupled(&self) -> bool {
        self.nu1 == 0.0 && self.nu2 == 0.0
    }
}

/// Maps the NC oscillator onto commutative-space parameters.
pub fn to_commutative(spec: &NcOscillatorSpec) -> Result<CommHamiltonian> {
    spec.validate()?;
    let NcOscillatorSpec { m1, m2, w1t, w2t, nc } = *spec;
    let NcParams { theta, eta, hbar } = nc;
    let h2 = 4.0 * hbar * hbar;
    let w1s = w1t * w1t;
    let w2s = w2t * w2t;
    Ok(CommHamiltonian {
        mu1: 1.0 / (1.0 / m1 + m2 * w2s * theta * theta / h2),
        mu2: 1.0 / (1.0 / m2 + m1 * w1s * theta * theta / h2),
        alpha1: m1 * w1s + eta * eta / (h2 * m2),
        alpha2: m2 * w2s + eta * eta / (h2 * m1),
        nu1: (eta + m1 * m2 * w2s * theta) / (4.0 * m1 * hbar),
        nu2: (eta + m1 * m2 * w1s * theta) / (4.0 * m2 * hbar),
        hbar,
    })
}

/// Effective mass, stiffness and rotation rate of an isotropic NC oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicComm {
    pub mu0: f64,
    pub alpha: f64,
    pub nu: f64,
}

/// Isotropic oscillator of mass `m` and spring constant `k`.
pub fn isotropic_commutative(m: f64, k: f64, nc: &NcParams) -> Result<IsotropicComm> {
    nc.validate()?;
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidParameter(format!("mass must be positive, got {m}")));
    }
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "spring constant must be non-negative, got {k}"
        )));
    }
    let NcParams { theta, eta, hbar } = *nc;
    Ok(IsotropicComm {
        mu0: 1.0 / (1.0 / m + k * theta * theta / (4.0 * hbar * hbar)),
        alpha: k + eta * eta / (4.0 * m * hbar * hbar),
        nu: eta / (4.0 * m * hbar) + k * theta / (4.0 * hbar),
    })
}

/// Oscillator whose masses, frequencies and NC scales vary in time.
#[derive(Debug, Clone)]
pub struct NcOscillatorSchedule {
    pub m1: TimeFn,
    pub m2: TimeFn,
    pub w1t: TimeFn,
    pub w2t: TimeFn,
    pub theta: TimeFn,
    pub eta: TimeFn,
    pub hbar: f64,
}

impl NcOscillatorSchedule {
    pub fn constant(spec: &NcOscillatorSpec) -> Self {
        Self {
            m1: TimeFn::constant(spec.m1),
            m2: TimeFn::constant(spec.m2),
            w1t: TimeFn::constant(spec.w1t),
            w2t: TimeFn::constant(spec.w2t),
            theta: TimeFn::constant(spec.nc.theta),
            eta: TimeFn::constant(spec.nc.eta),
            hbar: spec.nc.hbar,
        }
    }

    /// Snapshot of the oscillator at time `t`.
    pub fn at(&self, t: f64) -> Result<NcOscillatorSpec> {
        let nc = NcParams::new(self.theta.at(t), self.eta.at(t), self.hbar)?;
        NcOscillatorSpec::new(self.m1.at(t), self.m2.at(t), self.w1t.at(t), self.w2t.at(t), nc)
    }
}
