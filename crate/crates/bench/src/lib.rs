//! Fixed inputs shared by the benchmarks.

use ncphase::{NcOscillatorSpec, NcParams};

/// The anisotropic reference oscillator: unit masses, frequencies (1, 2), theta = eta = 0.1.
pub fn anisotropic_spec() -> NcOscillatorSpec {
    let nc = NcParams::new(0.1, 0.1, 1.0).expect("valid NC scales");
    NcOscillatorSpec::new(1.0, 1.0, 1.0, 2.0, nc).expect("valid oscillator")
}

/// A row-major `n x n` grid of (omega2t, theta) values, as a sweep would visit them.
pub fn sweep_grid(n: usize) -> Vec<NcOscillatorSpec> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let w2 = 0.3 + 2.5 * i as f64 / (n - 1) as f64;
            let theta = 0.4 * k as f64 / (n - 1) as f64;
            let nc = NcParams::new(theta, 0.1, 1.0).expect("valid NC scales");
            out.push(NcOscillatorSpec::new(1.0, 1.0, 1.0, w2, nc).expect("valid oscillator"));
        }
    }
    out
}
