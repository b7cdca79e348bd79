//! Seeded parameter samplers, bracketing root finder and the closed-form Pinney solution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::NcOscillatorSpec;
use crate::ncs::NcParams;
use crate::separability::{analyze, Analysis};

/// Seed used by the self-test and the acceptance suite unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_611;

/// Which family of oscillators to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Any valid parameters, NC scales possibly zero.
    Generic,
    /// Distinct NC-space frequencies and non-zero NC scales, kept away from the separable surface.
    AnisotropicNc,
}

/// Deterministic stream of valid oscillator specs (and their analyses).
pub struct ParamSampler {
    rng: ChaCha8Rng,
    family: Family,
}

impl ParamSampler {
    pub fn new(seed: u64, family: Family) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            family,
        }
    }

    fn draw(&mut self) -> Result<NcOscillatorSpec> {
        let r = &mut self.rng;
        let hbar: f64 = r.gen_range(0.5..2.0);
        let m1 = r.gen_range(0.5..2.0);
        let m2 = r.gen_range(0.5..2.0);
        let w1: f64 = r.gen_range(0.5..3.0);
        let w2: f64 = r.gen_range(0.5..3.0);
        let (theta, eta) = match self.family {
            Family::Generic => (r.gen_range(0.0..0.9) * hbar, r.gen_range(0.0..0.9) * hbar),
            Family::AnisotropicNc => (r.gen_range(0.05..0.6) * hbar, r.gen_range(0.05..0.6) * hbar),
        };
        if self.family == Family::AnisotropicNc && (w1 - w2).abs() < 0.2 {
            return Err(Error::InvalidParameter("frequencies too close".into()));
        }
        NcOscillatorSpec::new(m1, m2, w1, w2, NcParams::new(theta, eta, hbar)?)
    }

    /// Next accepted sample; rejected draws are skipped.
    pub fn next_analysis(&mut self) -> Analysis {
        loop {
            let Ok(spec) = self.draw() else { continue };
            let Ok(a) = analyze(&spec) else { continue };
            if self.family == Family::AnisotropicNc {
                let l = a.state.lambda11.re.min(a.state.lambda22.re);
                if a.state.lambda12c().abs() < 1e-3 * l {
                    continue;
                }
            }
            return a;
        }
    }

    pub fn take(&mut self, n: usize) -> Vec<Analysis> {
        (0..n).map(|_| self.next_analysis()).collect()
    }
}

/// Bisection on a sign-changing bracket `[a, b]` down to `|b - a| <= tol`.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::InvalidParameter("bracket does not change sign".into()));
    }
    const MAX_ITER: usize = 200;
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::NonConvergence(MAX_ITER))
}

/// Exact `(sigma, sigma')` of `mu0 sigma'' + alpha sigma = kappa^2 / (mu0 sigma^3)` for constant
/// `mu0`, `alpha`:
/// `sigma^2 = s0^2 cos^2 + 2 s0 v0 sin cos / w + (v0^2 + k / s0^2) sin^2 / w^2`, `k = kappa^2 / mu0^2`.
pub fn pinney_closed_form(mu0: f64, alpha: f64, kappa: f64, sigma0: f64, v0: f64, t: f64) -> (f64, f64) {
    let w = (alpha / mu0).sqrt();
    let k = kappa * kappa / (mu0 * mu0);
    let (s, c) = (w * t).sin_cos();
    let a = sigma0 * sigma0;
    let b = sigma0 * v0 / w;
    let d = (v0 * v0 + k / a) / (w * w);
    let sq = a * c * c + 2.0 * b * s * c + d * s * s;
    let dsq = w * (2.0 * (d - a) * s * c + 2.0 * b * (c * c - s * s));
    let sigma = sq.sqrt();
    (sigma, dsq / (2.0 * sigma))
}
