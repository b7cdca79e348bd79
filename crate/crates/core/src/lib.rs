//! Gaussian ground states of coupled oscillators in noncommutative phase space.
//!
//! The pipeline maps an anisotropic NC oscillator onto an equivalent
//! commutative Hamiltonian ([`hamiltonian`]), diagonalizes it ([`modes`]),
//! builds the Gaussian ground state ([`state`]), its Wigner function and
//! covariance ([`wigner`]), and applies Simon's separability test
//! ([`separability`]). [`td`] handles the time-dependent isotropic case and
//! [`oracle`] holds independent brute-force checks of every closed form.
//!
//! ```
//! use ncphase::{analyze, NcOscillatorSpec, NcParams, Verdict};
//!
//! let nc = NcParams::new(0.1, 0.1, 1.0).unwrap();
//! let spec = NcOscillatorSpec::new(1.0, 1.0, 1.0, 2.0, nc).unwrap();
//! let a = analyze(&spec).unwrap();
//! assert_eq!(a.report.verdict, Verdict::Entangled);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod modes;
pub mod ncs;
pub mod oracle;
pub mod selftest;
pub mod separability;
pub mod state;
pub mod td;
pub mod timefn;
pub mod wigner;

pub use error::{Error, Result};
pub use hamiltonian::{to_commutative, CommHamiltonian, NcOscillatorSpec};
pub use modes::{mode_basis_auto, ModeBasis, ModeSpectrum};
pub use ncs::{darboux_map, effective_planck, NcParams};
pub use separability::{analyze, sep1_residual, Analysis, LocalInvariants, Verdict};
pub use state::GaussianGroundState;
pub use td::{integrate_ep, IsotropicTdParams};
pub use timefn::{ParameterTable, TimeFn};
pub use wigner::{covariance, wigner_from_state, CovarianceMatrix, WignerGaussian};
