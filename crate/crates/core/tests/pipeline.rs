use ncphase::hamiltonian::isotropic_commutative;
use ncphase::linalg::max_abs;
use ncphase::oracle::{
    bisect, gauss_hermite_moments, ppt_symplectic_check, two_mode_squeezed_covariance,
};
use ncphase::separability::{mirror_reflect, simon_ps};
use ncphase::{
    analyze, sep1_residual, wigner_from_state, Error, NcOscillatorSpec, NcParams, Verdict,
};

fn spec(w1: f64, w2: f64, theta: f64, eta: f64) -> NcOscillatorSpec {
    NcOscillatorSpec::new(1.0, 1.0, w1, w2, NcParams::new(theta, eta, 1.0).unwrap()).unwrap()
}

#[test]
fn reference_anisotropic_point() {
    let a = analyze(&spec(1.0, 2.0, 0.1, 0.1)).unwrap();
    assert_eq!(a.report.verdict, Verdict::Entangled);
    assert!(a.report.ps < 0.0);
    assert!(a.state.lambda12c().abs() > 1e-3);
    assert!(a.rsup_min > -1e-12);
    // the quadrature oracle agrees entry by entry
    let w = wigner_from_state(&a.state).unwrap();
    for i in 0..4 {
        for k in 0..4 {
            let q = gauss_hermite_moments(&w, i, k).unwrap();
            assert!((q - a.covariance.v[(i, k)]).abs() < 1e-6);
        }
    }
}

#[test]
fn isotropic_point_is_separable_with_split_frequencies() {
    let nc = NcParams::new(0.1, 0.1, 1.0).unwrap();
    let a = analyze(&spec(1.0, 1.0, 0.1, 0.1)).unwrap();
    let ic = isotropic_commutative(1.0, 1.0, &nc).unwrap();
    let w = (ic.alpha / ic.mu0).sqrt();
    assert!((a.spectrum.lambda1 - (w - 2.0 * ic.nu)).abs() < 1e-12);
    assert!((a.spectrum.lambda2 - (w + 2.0 * ic.nu)).abs() < 1e-12);
    assert_eq!(a.report.verdict, Verdict::Separable);
}

#[test]
fn commutative_isotropic_is_degenerate() {
    assert!(matches!(
        analyze(&spec(1.0, 1.0, 0.0, 0.0)),
        Err(Error::DegenerateSpectrum { .. })
    ));
}

#[test]
fn separable_surface_root() {
    // with unit masses and hbar, theta = eta puts the nontrivial root at 1 / w1
    let f = |w2: f64| sep1_residual(&spec(2.0, w2, 0.1, 0.1));
    let root = bisect(f, 0.3, 0.8, 1e-15).unwrap();
    assert!((root - 0.5).abs() < 1e-12);
    let a = analyze(&spec(2.0, root, 0.1, 0.1)).unwrap();
    assert!(a.state.lambda12c().abs() < 1e-8);
    assert!(a.report.ps >= -1e-8);
}

#[test]
fn simon_and_ppt_on_squeezed_pair() {
    for r in [0.1, 0.5, 1.0] {
        let v = two_mode_squeezed_covariance(r, 1.0);
        assert!(simon_ps(&v) < 0.0);
        assert_eq!(ppt_symplectic_check(&v).1, Verdict::Entangled);
        // mirror reflection of a mirror reflection is the identity
        assert!(max_abs(&(mirror_reflect(&mirror_reflect(&v)).v - v.v)) == 0.0);
    }
}
