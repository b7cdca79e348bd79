//! Time-dependent isotropic oscillator through a quadratic Lewis-Riesenfeld invariant.
//!
//! The invariant `I = a11 p^2 + b11 x^2 + c11 A_xp + 2 l L` stays invariant when
//! `a11' = -2 c11 / mu0`, `b11' = 2 alpha c11`, `c11' = alpha a11 - b11 / mu0`,
//! with `c11^2 - a11 b11 = -kappa^2`. Writing `a11 = sigma^2` reduces this to the
//! Ermakov-Pinney equation
//! `sigma'' + (mu0'/mu0) sigma' + (alpha/mu0) sigma = kappa^2 / (mu0^2 sigma^3)`,
//! which is integrated here in the first-order form
//! `sigma' = pi / mu0`, `pi' = -alpha sigma + kappa^2 / (mu0 sigma^3)`
//! so that no derivative of `mu0` is needed.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::CommHamiltonian;
use crate::ncs::{j2, symplectic_j};
use crate::state::{evaluate_psi, GaussianGroundState};
use crate::timefn::{ParameterTable, TimeFn};

/// Parameters of the isotropic commutative-space Hamiltonian and of the invariant.
#[derive(Debug, Clone)]
pub struct IsotropicTdParams {
    pub mu0: TimeFn,
    pub alpha: TimeFn,
    pub nu: TimeFn,
    /// Constant of motion `sqrt(a11 b11 - c11^2)`.
    pub kappa: f64,
    /// Weight of the angular momentum in the invariant.
    pub l: f64,
    pub hbar: f64,
}

impl IsotropicTdParams {
    pub fn new(mu0: TimeFn, alpha: TimeFn, nu: TimeFn, kappa: f64, l: f64, hbar: f64) -> Result<Self> {
        let p = Self {
            mu0,
            alpha,
            nu,
            kappa,
            l,
            hbar,
        };
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
        }
        if !(l.is_finite() && l.abs() < kappa) {
            return Err(Error::InvalidParameter(format!(
                "|l| = {} must stay below kappa = {kappa}",
                l.abs()
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter("hbar must be positive".into()));
        }
        Ok(p)
    }

    pub fn constant(mu0: f64, alpha: f64, nu: f64, kappa: f64, l: f64, hbar: f64) -> Result<Self> {
        Self::new(
            TimeFn::constant(mu0),
            TimeFn::constant(alpha),
            TimeFn::constant(nu),
            kappa,
            l,
            hbar,
        )
    }

    /// Reads `mu0`, `alpha` and `nu` columns against a uniform `t` column.
    pub fn from_table(table: &ParameterTable, kappa: f64, l: f64, hbar: f64) -> Result<Self> {
        Self::new(
            TimeFn::new(table.column("mu0")?),
            TimeFn::new(table.column("alpha")?),
            TimeFn::new(table.column("nu")?),
            kappa,
            l,
            hbar,
        )
    }

    /// Fixed point `sigma^4 = kappa^2 / (mu0 alpha)` of the Ermakov-Pinney equation at time `t`.
    pub fn equilibrium_sigma(&self, t: f64) -> f64 {
        (self.kappa * self.kappa / (self.mu0.at(t) * self.alpha.at(t))).powf(0.25)
    }

    /// The instantaneous Hamiltonian as a two-mode commutative Hamiltonian.
    pub fn hamiltonian_at(&self, t: f64) -> Result<CommHamiltonian> {
        let (mu, alpha, nu) = (self.mu0.at(t), self.alpha.at(t), self.nu.at(t));
        CommHamiltonian::new([mu, mu], [alpha, alpha], [nu, nu], self.hbar)
    }
}

/// Local error tolerance of the step-doubling control, relative to `max(1, |y|)`.
pub const STEP_TOLERANCE: f64 = 1e-7;
const MAX_SUBDIVISION_DEPTH: u32 = 10;
const SIGMA_FLOOR: f64 = 1e-12;

/// One sampled point of the Ermakov-Pinney solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpNode {
    pub t: f64,
    pub sigma: f64,
    pub sigmadot: f64,
    pub mu0: f64,
}

impl EpNode {
    pub fn a11(&self) -> f64 {
        self.sigma * self.sigma
    }

    pub fn c11(&self) -> f64 {
        -self.mu0 * self.sigma * self.sigmadot
    }

    /// Closed from the constraint `c11^2 - a11 b11 = -kappa^2`.
    pub fn b11(&self, kappa: f64) -> f64 {
        let c = self.c11();
        (c * c + kappa * kappa) / self.a11()
    }
}

/// Uniformly sampled Ermakov-Pinney trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct EpTrajectory {
    pub nodes: Vec<EpNode>,
    /// `b11` propagated through `b11' = 2 alpha c11` alongside `sigma`.
    pub b11_integrated: Vec<f64>,
    pub kappa: f64,
    /// Number of steps that had to be subdivided by the error control.
    pub subdivisions: usize,
}

impl EpTrajectory {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `|a11 b11 - c11^2 - kappa^2|` with the propagated `b11`.
    pub fn kappa_drift(&self, k: usize) -> f64 {
        let n = &self.nodes[k];
        (n.a11() * self.b11_integrated[k] - n.c11().powi(2) - self.kappa * self.kappa).abs()
    }

    pub fn max_kappa_drift(&self) -> f64 {
        (0..self.len()).map(|k| self.kappa_drift(k)).fold(0.0, f64::max)
    }

    /// `c11^2 - a11 b11 + kappa^2` with the algebraic `b11`; zero up to rounding.
    pub fn constraint_residual(&self, k: usize) -> f64 {
        let n = &self.nodes[k];
        n.c11().powi(2) - n.a11() * n.b11(self.kappa) + self.kappa * self.kappa
    }
}

type State = [f64; 3];

fn rhs(p: &IsotropicTdParams, t: f64, y: &State) -> State {
    let (mu, alpha) = (p.mu0.at(t), p.alpha.at(t));
    let (sigma, pi) = (y[0], y[1]);
    let k2 = p.kappa * p.kappa;
    [
        pi / mu,
        -alpha * sigma + k2 / (mu * sigma.powi(3)),
        -2.0 * alpha * sigma * pi,
    ]
}

fn rk4(p: &IsotropicTdParams, t: f64, y: &State, h: f64) -> Result<State> {
    let add = |a: &State, b: &State, s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    let guard = |y: &State| {
        if y[0] > SIGMA_FLOOR && y.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::SigmaCollapse { t })
        }
    };
    let k1 = rhs(p, t, y);
    let y2 = add(y, &k1, h / 2.0);
    guard(&y2)?;
    let k2 = rhs(p, t + h / 2.0, &y2);
    let y3 = add(y, &k2, h / 2.0);
    guard(&y3)?;
    let k3 = rhs(p, t + h / 2.0, &y3);
    let y4 = add(y, &k3, h);
    guard(&y4)?;
    let k4 = rhs(p, t + h, &y4);
    let out = [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        y[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ];
    guard(&out)?;
    Ok(out)
}

/// Advances by `h` as two half steps, checked against one full step.
fn controlled_step(
    p: &IsotropicTdParams,
    t: f64,
    y: &State,
    h: f64,
    depth: u32,
    subdivisions: &mut usize,
) -> Result<State> {
    let full = rk4(p, t, y, h)?;
    let mid = rk4(p, t, y, h / 2.0)?;
    let half = rk4(p, t + h / 2.0, &mid, h / 2.0)?;
    let estimate = (0..3)
        .map(|i| (half[i] - full[i]).abs() / 15.0 / half[i].abs().max(1.0))
        .fold(0.0, f64::max);
    if estimate <= STEP_TOLERANCE {
        return Ok(half);
    }
    if depth >= MAX_SUBDIVISION_DEPTH {
        return Err(Error::StepRejection { t, estimate });
    }
    if depth == 0 {
        *subdivisions += 1;
    }
    let mid = controlled_step(p, t, y, h / 2.0, depth + 1, subdivisions)?;
    controlled_step(p, t + h / 2.0, &mid, h / 2.0, depth + 1, subdivisions)
}

/// Integrates the Ermakov-Pinney equation on the grid `0, dt, 2 dt, ...` up to `t_end`.
///
/// On [`Error::SigmaCollapse`] the reported time is the start of the failing step.
pub fn integrate_ep(
    params: &IsotropicTdParams,
    sigma0: f64,
    sigmadot0: f64,
    t_end: f64,
    dt: f64,
) -> Result<EpTrajectory> {
    if !(sigma0.is_finite() && sigma0 > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma0 must be positive, got {sigma0}")));
    }
    if !(dt.is_finite() && dt > 0.0) || !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidParameter("need dt > 0 and t_end >= 0".into()));
    }
    let steps = (t_end / dt - 1e-9).ceil().max(0.0) as usize;
    let mu_at = |t: f64| params.mu0.at(t);
    let mut y: State = [sigma0, mu_at(0.0) * sigmadot0, 0.0];
    let first = EpNode {
        t: 0.0,
        sigma: sigma0,
        sigmadot: sigmadot0,
        mu0: mu_at(0.0),
    };
    y[2] = first.b11(params.kappa);
    let mut nodes = Vec::with_capacity(steps + 1);
    let mut b_int = Vec::with_capacity(steps + 1);
    nodes.push(first);
    b_int.push(y[2]);
    let mut subdivisions = 0;
    for k in 0..steps {
        let t = k as f64 * dt;
        let t_next = ((k + 1) as f64 * dt).min(t_end);
        y = controlled_step(params, t, &y, t_next - t, 0, &mut subdivisions)?;
        let mu = mu_at(t_next);
        nodes.push(EpNode {
            t: t_next,
            sigma: y[0],
            sigmadot: y[1] / mu,
            mu0: mu,
        });
        b_int.push(y[2]);
    }
    Ok(EpTrajectory {
        nodes,
        b11_integrated: b_int,
        kappa: params.kappa,
        subdivisions,
    })
}

/// Time series of the invariant coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCoeffs {
    pub t: Vec<f64>,
    pub a11: Vec<f64>,
    pub b11: Vec<f64>,
    pub c11: Vec<f64>,
}

pub fn invariant_coeffs(traj: &EpTrajectory) -> InvariantCoeffs {
    let k = traj.kappa;
    InvariantCoeffs {
        t: traj.nodes.iter().map(|n| n.t).collect(),
        a11: traj.nodes.iter().map(EpNode::a11).collect(),
        b11: traj.nodes.iter().map(|n| n.b11(k)).collect(),
        c11: traj.nodes.iter().map(EpNode::c11).collect(),
    }
}

/// Maximum centered-difference residuals of the three consistency equations
/// `(a11' + 2 c11/mu0, b11' - 2 alpha c11, c11' - alpha a11 + b11/mu0)` over interior nodes.
pub fn consistency_residuals(coeffs: &InvariantCoeffs, params: &IsotropicTdParams) -> [f64; 3] {
    let mut out = [0.0f64; 3];
    let n = coeffs.t.len();
    for i in 1..n.saturating_sub(1) {
        let h = coeffs.t[i + 1] - coeffs.t[i - 1];
        if (coeffs.t[i + 1] - coeffs.t[i] - (coeffs.t[i] - coeffs.t[i - 1])).abs() > 1e-12 {
            continue;
        }
        let t = coeffs.t[i];
        let (mu, alpha) = (params.mu0.at(t), params.alpha.at(t));
        let d = |v: &[f64]| (v[i + 1] - v[i - 1]) / h;
        let r = [
            d(&coeffs.a11) + 2.0 * coeffs.c11[i] / mu,
            d(&coeffs.b11) - 2.0 * alpha * coeffs.c11[i],
            d(&coeffs.c11) - alpha * coeffs.a11[i] + coeffs.b11[i] / mu,
        ];
        for (o, v) in out.iter_mut().zip(r) {
            *o = o.max(v.abs());
        }
    }
    out
}

/// Ground state of the invariant: `Lambda11 = Lambda22 = (kappa - i mu0 sigma sigma') / (hbar sigma^2)`,
/// no cross term.
pub fn td_ground_state(node: &EpNode, kappa: f64, hbar: f64) -> Result<GaussianGroundState> {
    if !(node.sigma.is_finite() && node.sigma > SIGMA_FLOOR) {
        return Err(Error::SigmaCollapse { t: node.t });
    }
    let l = Complex64::new(kappa, -node.mu0 * node.sigma * node.sigmadot)
        / (hbar * node.sigma * node.sigma);
    GaussianGroundState::new(l, l, Complex64::new(0.0, 0.0), hbar)
}

/// `(kappa - l, kappa + l)`.
pub fn invariant_spectrum(kappa: f64, l: f64) -> Result<(f64, f64)> {
    if !(kappa > l.abs()) {
        return Err(Error::InvalidParameter(format!(
            "need kappa > |l|, got kappa = {kappa}, l = {l}"
        )));
    }
    Ok((kappa - l, kappa + l))
}

/// `H_inv` with `I = X^T H_inv X`: diagonal blocks `[[b11, c11], [c11, a11]]`,
/// off-diagonal blocks `L = i l sigma_y = l J2` and `L^T`.
pub fn invariant_matrix(a11: f64, b11: f64, c11: f64, l: f64) -> Matrix4<f64> {
    let mut h = Matrix4::zeros();
    let m = nalgebra::Matrix2::new(b11, c11, c11, a11);
    let lb = j2() * l;
    h.fixed_view_mut::<2, 2>(0, 0).copy_from(&m);
    h.fixed_view_mut::<2, 2>(2, 2).copy_from(&m);
    h.fixed_view_mut::<2, 2>(2, 0).copy_from(&lb);
    h.fixed_view_mut::<2, 2>(0, 2).copy_from(&lb.transpose());
    h
}

/// `Omega_inv = J H_inv`.
pub fn invariant_omega(a11: f64, b11: f64, c11: f64, l: f64) -> Matrix4<f64> {
    symplectic_j() * invariant_matrix(a11, b11, c11, l)
}

/// Square grid `[-half_width, half_width]^2` with `n` points per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareGrid {
    pub half_width: f64,
    pub n: usize,
}

impl SquareGrid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = 2.0 * self.half_width / (self.n.max(2) - 1) as f64;
        (0..self.n).map(move |i| -self.half_width + step * i as f64)
    }
}

/// `max |psi(x1, x2) - psi0(x1) psi0(x2)|` with `psi0(x) = (Re L11/pi)^{1/4} exp(-L11 x^2/2)`.
pub fn factorization_check(state: &GaussianGroundState, grid: &SquareGrid) -> f64 {
    let l = state.lambda11;
    let n1 = (l.re / std::f64::consts::PI).powf(0.25);
    let single = |x: f64| (-0.5 * l * x * x).exp() * n1;
    let mut worst = 0.0f64;
    for x1 in grid.points() {
        for x2 in grid.points() {
            let d = evaluate_psi(state, x1, x2) - single(x1) * single(x2);
            worst = worst.max(d.norm());
        }
    }
    worst
}
