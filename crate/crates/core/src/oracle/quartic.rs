//! Simultaneous (Durand-Kerner) iteration for all four roots of a real quartic.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

/// `c[0] + c[1] z + c[2] z^2 + c[3] z^3 + c[4] z^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPoly {
    pub c: [f64; 5],
}

impl QuarticPoly {
    pub fn new(c: [f64; 5]) -> Result<Self> {
        if c[4] == 0.0 || !c.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("leading coefficient must be nonzero".into()));
        }
        Ok(Self { c })
    }

    /// `z^4 + delta z^2 + delta_omega`.
    pub fn biquadratic(delta: f64, delta_omega: f64) -> Self {
        Self {
            c: [delta_omega, 0.0, delta, 0.0, 1.0],
        }
    }

    /// Characteristic polynomial `det(z I - M)` of a real 4x4 matrix, by Faddeev-LeVerrier.
    pub fn characteristic(m: &nalgebra::Matrix4<f64>) -> Self {
        let mut c = [0.0; 5];
        c[4] = 1.0;
        let mut mk = nalgebra::Matrix4::<f64>::zeros();
        let id = nalgebra::Matrix4::<f64>::identity();
        for k in 1..=4 {
            mk = m * (mk + id * c[5 - k]);
            c[4 - k] = -mk.trace() / k as f64;
        }
        Self { c }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        (1..5)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| acc * z + self.c[k] * k as f64)
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// All four roots, polished with a few Newton steps.
pub fn quartic_roots(p: &QuarticPoly) -> Result<[Complex64; 4]> {
    let lead = p.c[4];
    let monic = QuarticPoly {
        c: p.c.map(|v| v / lead),
    };
    // Cauchy bound for the initial circle
    let radius = 1.0 + monic.c[..4].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: [Complex64; 4] = std::array::from_fn(|k| seed.powu(k as u32) * (radius / 2.0));
    let tol = 1e-15;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut delta: f64 = 0.0;
        for i in 0..4 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = monic.eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        let worst = z.iter().map(|r| monic.eval(*r).norm()).fold(0.0, f64::max);
        if worst > 1e-10 * monic.norm() {
            return Err(Error::NonConvergence(MAX_ITER));
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = monic.deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            let next = *r - monic.eval(*r) / d;
            if monic.eval(next).norm() < monic.eval(*r).norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    Ok(z)
}

/// Positive imaginary parts of the roots, ascending; for a biquadratic with
/// purely imaginary roots these are the modal frequencies.
pub fn imaginary_frequencies(roots: &[Complex64; 4]) -> Vec<f64> {
    let mut v: Vec<f64> = roots.iter().filter(|r| r.im > 0.0).map(|r| r.im).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut r: [Complex64; 4]) -> [Complex64; 4] {
        r.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        r
    }

    #[test]
    fn factorable_biquadratic() {
        let r = sorted(quartic_roots(&QuarticPoly::biquadratic(5.0, 4.0)).unwrap());
        let expect = [-2.0, -1.0, 1.0, 2.0];
        for (z, e) in r.iter().zip(expect) {
            assert!(z.re.abs() < 1e-12 && (z.im - e).abs() < 1e-12, "{z}");
        }
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = QuarticPoly::new([-1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = quartic_roots(&p).unwrap();
        for target in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ] {
            assert!(r.iter().any(|z| (z - target).norm() < 1e-12));
        }
    }

    #[test]
    fn residuals_small_for_generic_quartic() {
        let p = QuarticPoly::new([3.0, -2.0, 0.5, 7.0, 2.0]).unwrap();
        for z in quartic_roots(&p).unwrap() {
            assert!(p.eval(z).norm() < 1e-10 * p.norm());
        }
    }

    #[test]
    fn characteristic_polynomial_of_diagonal() {
        let m = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 2.0, 3.0, 4.0));
        let p = QuarticPoly::characteristic(&m);
        // (z-1)(z-2)(z-3)(z-4) = z^4 - 10 z^3 + 35 z^2 - 50 z + 24
        assert_eq!(p.c, [24.0, -50.0, 35.0, -10.0, 1.0]);
    }

    #[test]
    fn rejects_degree_drop() {
        assert!(QuarticPoly::new([1.0, 0.0, 1.0, 0.0, 0.0]).is_err());
    }
}
