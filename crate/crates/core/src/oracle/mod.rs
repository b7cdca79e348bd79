//! Brute-force verification paths, independent of the closed forms they check.

pub mod annihilation;
pub mod inverse;
pub mod ppt;
pub mod quadrature;
pub mod quartic;
pub mod sampling;

pub use annihilation::{grid_annihilation_residual, AnnihilationGrid, Stencil};
pub use inverse::{covariance_via_inverse, covariance_via_simplified, partitioned_inverse};
pub use ppt::{ppt_symplectic_check, symplectic_spectrum, two_mode_squeezed_covariance};
pub use quadrature::{gauss_hermite, gauss_hermite_moments, quadrature_moments, PhaseSpaceMoments};
pub use quartic::{imaginary_frequencies, quartic_roots, QuarticPoly};
pub use sampling::{bisect, pinney_closed_form, Family, ParamSampler, DEFAULT_SEED};
