//! Normal modes of the two-dimensional quadratic Hamiltonian.
//!
//! `H = X^T H X / 2` with `X = (x1, p1, x2, p2)`. The symplectic spectrum is
//! read off `Omega = J H`, whose characteristic polynomial is the biquadratic
//! `lambda^4 + Delta lambda^2 + det Omega`. Left eigenvectors of `Omega` for
//! `-i lambda_j` have the closed form `k_j (i k1, k2, k3, i k4)` and define
//! the annihilation operators `a_j = chi_j X / sqrt(hbar)`.

use nalgebra::{Matrix2, Matrix4, RowVector4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::CommHamiltonian;
use crate::linalg::{complexify4, max_abs, Matrix2c, Matrix4c};
use crate::ncs::{j2, symplectic_j};

/// Relative discriminant below which the spectrum counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// The Hessian of the Hamiltonian in `(x1, p1, x2, p2)` ordering (no 1/2 factor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub h: Matrix4<f64>,
}

impl QuadraticForm {
    pub fn new(c: &CommHamiltonian) -> Self {
        let mut h = Matrix4::zeros();
        h[(0, 0)] = c.alpha1;
        h[(1, 1)] = 1.0 / c.mu1;
        h[(2, 2)] = c.alpha2;
        h[(3, 3)] = 1.0 / c.mu2;
        // C = 2 [[0, -nu2], [nu1, 0]] couples (x1, p1) with (x2, p2)
        h[(0, 3)] = -2.0 * c.nu2;
        h[(1, 2)] = 2.0 * c.nu1;
        h[(3, 0)] = h[(0, 3)];
        h[(2, 1)] = h[(1, 2)];
        Self { h }
    }

    fn block(&self, r: usize, c: usize) -> Matrix2<f64> {
        self.h.fixed_view::<2, 2>(r, c).into_owned()
    }
}

/// `Omega = J H`.
pub fn build_omega(c: &CommHamiltonian) -> Matrix4<f64> {
    symplectic_j() * QuadraticForm::new(c).h
}

/// Symplectic spectrum with the invariants it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpectrum {
    pub lambda1: f64,
    pub lambda2: f64,
    /// `det A_I + det B_I + 2 det C_I` of the blocks of `Omega`.
    pub delta: f64,
    /// `det Omega`.
    pub delta_omega: f64,
    /// `sqrt(delta^2 - 4 delta_omega)`.
    pub discriminant: f64,
}

fn spectrum_invariants(c: &CommHamiltonian) -> (f64, f64, f64) {
    let q = QuadraticForm::new(c);
    let j = j2();
    let delta = (j * q.block(0, 0)).determinant()
        + (j * q.block(2, 2)).determinant()
        + 2.0 * (j * q.block(0, 2)).determinant();
    let delta_omega = build_omega(c).determinant();
    (delta, delta_omega, delta * delta - 4.0 * delta_omega)
}

/// Closed-form modal frequencies `lambda_{1,2} = sqrt((Delta -+ D) / 2)`.
pub fn symplectic_eigenvalues(c: &CommHamiltonian) -> Result<ModeSpectrum> {
    let (delta, delta_omega, d2) = spectrum_invariants(c);
    let discriminant = d2.max(0.0).sqrt();
    let tolerance = DEGENERACY_TOL * delta.abs();
    if !(discriminant > tolerance) {
        return Err(Error::DegenerateSpectrum {
            discriminant,
            tolerance,
        });
    }
    let low = 0.5 * (delta - discriminant);
    if !(low > 0.0) {
        return Err(Error::NotNormalizable(format!(
            "lowest mode has lambda^2 = {low:e}"
        )));
    }
    Ok(ModeSpectrum {
        lambda1: low.sqrt(),
        lambda2: (0.5 * (delta + discriminant)).sqrt(),
        delta,
        delta_omega,
        discriminant,
    })
}

/// The expanded discriminant exactly as it is usually printed,
/// `(w1^2 - w2^2)^2 + 16 nu1 nu2 (w1 - w2)^2 + 16 (sqrt(mu1/mu2) w1 nu1 + sqrt(mu2/mu1) w2 nu2)^2`.
///
/// Only used for diagnostics; the spectrum is always computed from matrix invariants.
pub fn printed_discriminant_squared(c: &CommHamiltonian) -> f64 {
    let (w1, w2) = (c.omega1(), c.omega2());
    let r = (c.mu1 / c.mu2).sqrt();
    let cross = r * w1 * c.nu1 + w2 * c.nu2 / r;
    (w1 * w1 - w2 * w2).powi(2) + 16.0 * c.nu1 * c.nu2 * (w1 - w2).powi(2) + 16.0 * cross * cross
}

/// Relative gap between the printed expansion and `Delta^2 - 4 det Omega`.
pub fn discriminant_expansion_gap(c: &CommHamiltonian) -> f64 {
    let (_, _, d2) = spectrum_invariants(c);
    (printed_discriminant_squared(c) - d2).abs() / d2.abs().max(f64::MIN_POSITIVE)
}

/// Which construction produced a [`ModeBasis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    /// Closed-form coefficients; `kappa[j][i]` is `kappa_{i+1, j+1}`.
    Coupled { kappa: [[f64; 4]; 2] },
    /// Independent single-mode ladders (no coupling).
    Decoupled,
}

/// Diagonalizing transformation of `Omega`.
///
/// Rows of `q_inv` are `(chi_1, chi_1^*, chi_2, chi_2^*)`; columns of `q` are the
/// matching right eigenvectors, so `q_inv * q = I` and
/// `q_inv * Omega * q = diag(-i l1, i l1, -i l2, i l2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBasis {
    pub spectrum: ModeSpectrum,
    pub kind: BasisKind,
    /// Positive normalizers `k_j`.
    pub norms: [f64; 2],
    pub q: Matrix4c,
    pub q_inv: Matrix4c,
}

impl ModeBasis {
    /// Coefficient of `x` in the two annihilation conditions.
    pub fn ux(&self) -> Matrix2c {
        Matrix2c::new(
            self.q_inv[(0, 0)],
            self.q_inv[(0, 2)],
            self.q_inv[(2, 0)],
            self.q_inv[(2, 2)],
        )
    }

    /// Coefficient of `p` in the two annihilation conditions.
    pub fn up(&self) -> Matrix2c {
        Matrix2c::new(
            self.q_inv[(0, 1)],
            self.q_inv[(0, 3)],
            self.q_inv[(2, 1)],
            self.q_inv[(2, 3)],
        )
    }

    /// Left eigenvector for `-i lambda_j` (`j` is 0 or 1).
    pub fn left(&self, j: usize) -> RowVector4<Complex64> {
        self.q_inv.row(2 * j).into_owned()
    }

    pub fn right(&self, j: usize) -> Vector4<Complex64> {
        self.q.column(2 * j).into_owned()
    }

    /// Expected diagonal of the similarity transform.
    pub fn diagonal(&self) -> [Complex64; 4] {
        let (l1, l2) = (self.spectrum.lambda1, self.spectrum.lambda2);
        [
            Complex64::new(0.0, -l1),
            Complex64::new(0.0, l1),
            Complex64::new(0.0, -l2),
            Complex64::new(0.0, l2),
        ]
    }

    /// `max |Q^{-1} Omega Q - diag(...)|`.
    pub fn similarity_residual(&self, omega: &Matrix4<f64>) -> f64 {
        let d = self.q_inv * complexify4(omega) * self.q;
        let target = Matrix4c::from_diagonal(&Vector4::from(self.diagonal()));
        max_abs(&(d - target))
    }

    /// `max |Q^{-1} Q - I|`, equivalently `u_i v_j = delta_ij`.
    pub fn orthonormality_residual(&self) -> f64 {
        max_abs(&(self.q_inv * self.q - Matrix4c::identity()))
    }
}

/// `-Sigma_y chi^dagger` with `Sigma_y = diag(sigma_y, sigma_y)`.
fn right_from_left(chi: &RowVector4<Complex64>) -> Vector4<Complex64> {
    let i = Complex64::i();
    let c: Vec<Complex64> = chi.iter().map(|z| z.conj()).collect();
    // sigma_y (a, b) = (-i b, i a)
    -Vector4::new(-i * c[1], i * c[0], -i * c[3], i * c[2])
}

fn assemble(
    spectrum: ModeSpectrum,
    kind: BasisKind,
    norms: [f64; 2],
    lefts: [RowVector4<Complex64>; 2],
) -> ModeBasis {
    let mut q_inv = Matrix4c::zeros();
    let mut q = Matrix4c::zeros();
    for (j, chi) in lefts.iter().enumerate() {
        let r = right_from_left(chi);
        q_inv.set_row(2 * j, chi);
        q_inv.set_row(2 * j + 1, &chi.map(|z| z.conj()));
        q.set_column(2 * j, &r);
        q.set_column(2 * j + 1, &r.map(|z| z.conj()));
    }
    ModeBasis {
        spectrum,
        kind,
        norms,
        q,
        q_inv,
    }
}

/// The real coefficients `(k1j, k2j, k3j, k4j)` of the left eigenvector for `-i lambda`.
pub fn kappa_coefficients(c: &CommHamiltonian, lambda: f64) -> [f64; 4] {
    let (mu1, mu2, nu1, nu2) = (c.mu1, c.mu2, c.nu1, c.nu2);
    let w1s = c.alpha1 / mu1;
    let w2s = c.alpha2 / mu2;
    let l2 = lambda * lambda;
    [
        -2.0 * mu1 * lambda * (mu1 * nu1 * w1s + mu2 * nu2 * w2s),
        2.0 * (mu2 * nu2 * w2s - 4.0 * mu1 * nu1 * nu1 * nu2 + mu1 * nu1 * l2),
        mu1 * (4.0 * mu1 * nu1 * nu1 * w1s - mu2 * w1s * w2s + mu2 * w2s * l2),
        -mu1 * lambda * (w1s + 4.0 * nu1 * nu2 - l2),
    ]
}

/// Closed-form mode basis of a coupled Hamiltonian.
pub fn mode_basis(c: &CommHamiltonian, s: &ModeSpectrum) -> Result<ModeBasis> {
    if c.is_decoupled() {
        return Err(Error::DecoupledFallback);
    }
    let i = Complex64::i();
    let mut kappa = [[0.0; 4]; 2];
    let mut norms = [0.0; 2];
    let mut lefts = [RowVector4::zeros(); 2];
    for (j, lambda) in [s.lambda1, s.lambda2].into_iter().enumerate() {
        let k = kappa_coefficients(c, lambda);
        let arg = k[2] * k[3] - k[0] * k[1];
        if !(arg > 0.0 && arg.is_finite()) {
            return Err(Error::NormalizationFailure {
                mode: j + 1,
                value: arg,
            });
        }
        let norm = 1.0 / (2.0 * arg).sqrt();
        kappa[j] = k;
        norms[j] = norm;
        lefts[j] = RowVector4::new(i * k[0], k[1].into(), k[2].into(), i * k[3]) * Complex64::new(norm, 0.0);
    }
    Ok(assemble(*s, BasisKind::Coupled { kappa }, norms, lefts))
}

/// Single-mode ladders `a_j ~ sqrt(mu w / 2 hbar) x_j + i p_j / sqrt(2 hbar mu w)`.
pub fn decoupled_basis(c: &CommHamiltonian) -> Result<ModeBasis> {
    if !c.is_decoupled() {
        return Err(Error::InvalidParameter(
            "decoupled basis requested for a coupled Hamiltonian".into(),
        ));
    }
    let (w1, w2) = (c.omega1(), c.omega2());
    if !(w1 > 0.0 && w2 > 0.0) {
        return Err(Error::NotNormalizable("zero-frequency mode".into()));
    }
    let ladder = |mu: f64, w: f64, offset: usize| {
        let mut chi = RowVector4::zeros();
        chi[offset] = Complex64::new((mu * w / 2.0).sqrt(), 0.0);
        chi[offset + 1] = Complex64::new(0.0, 1.0 / (2.0 * mu * w).sqrt());
        chi
    };
    let a = ladder(c.mu1, w1, 0);
    let b = ladder(c.mu2, w2, 2);
    let (delta, delta_omega, d2) = spectrum_invariants(c);
    let spectrum = ModeSpectrum {
        lambda1: w1.min(w2),
        lambda2: w1.max(w2),
        delta,
        delta_omega,
        discriminant: d2.max(0.0).sqrt(),
    };
    let lefts = if w1 <= w2 { [a, b] } else { [b, a] };
    Ok(assemble(spectrum, BasisKind::Decoupled, [1.0, 1.0], lefts))
}

/// [`mode_basis`] with the decoupled basis substituted when both couplings vanish.
pub fn mode_basis_auto(c: &CommHamiltonian) -> Result<ModeBasis> {
    if c.is_decoupled() {
        let b = decoupled_basis(c)?;
        let s = b.spectrum;
        if !(s.discriminant > DEGENERACY_TOL * s.delta.abs()) {
            return Err(Error::DegenerateSpectrum {
                discriminant: s.discriminant,
                tolerance: DEGENERACY_TOL * s.delta.abs(),
            });
        }
        return Ok(b);
    }
    let s = symplectic_eigenvalues(c)?;
    mode_basis(c, &s)
}
