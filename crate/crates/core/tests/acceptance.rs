//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncphase::hamiltonian::isotropic_commutative;
use ncphase::linalg::max_abs;
use ncphase::modes::build_omega;
use ncphase::ncs::{verify_symplectic_relation, SymplecticStructure};
use ncphase::oracle::{
    bisect, covariance_via_inverse, pinney_closed_form, covariance_via_simplified, grid_annihilation_residual,
    imaginary_frequencies, ppt_symplectic_check, quadrature_moments, quartic_roots,
    AnnihilationGrid, Family, ParamSampler, QuarticPoly, Stencil, DEFAULT_SEED,
};
use ncphase::separability::{
    local_congruence, local_invariants, mirror_reflect, simon_ps, sp2_from_params,
};
use ncphase::state::lambda_from_coefficients;
use ncphase::td::{integrate_ep, td_ground_state};
use ncphase::wigner::{nc_covariance, rsup_check};
use ncphase::{
    analyze, covariance, effective_planck, mode_basis_auto, wigner_from_state,
    Analysis, IsotropicTdParams, NcOscillatorSpec, NcParams, TimeFn, Verdict,
};

struct Line {
    id: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Report {
    lines: Vec<Line>,
}

impl Report {
    fn check(&mut self, id: &'static str, name: &'static str, passed: bool, detail: String) {
        self.lines.push(Line {
            id,
            name,
            passed,
            detail,
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// RSUP minima in canonical and deformed form, over every state passed in.
fn rsup_minima(states: &[Analysis]) -> (f64, f64) {
    let mut c = f64::INFINITY;
    let mut nc = f64::INFINITY;
    for a in states {
        c = c.min(a.covariance.rsup_min());
        let s = SymplecticStructure::new(&a.spec.nc);
        let v = nc_covariance(&a.covariance, &a.spec.nc);
        nc = nc.min(rsup_check(&v, effective_planck(&a.spec.nc), &s.j_tilde));
    }
    (c, nc)
}

fn criterion_1(r: &mut Report) {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for hbar in [1.0, 2.0] {
        for i in 0..10 {
            for k in 0..10 {
                let theta = 0.9 * hbar * (i as f64 + 0.5) / 10.0;
                let eta = 0.9 * hbar * (k as f64 + 0.5) / 10.0;
                let nc = NcParams::new(theta, eta, hbar).unwrap();
                worst = worst.max(verify_symplectic_relation(&nc));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    r.check(
        "1",
        "symplectic relation",
        worst <= 1e-12 && secs < 1.0,
        format!("max residual {worst:.3e} (tol 1e-12) over 2x100 grid, {secs:.2}s"),
    );
}

fn criterion_2(r: &mut Report, all: &mut Vec<Analysis>) {
    let t0 = Instant::now();
    let sets = ParamSampler::new(DEFAULT_SEED, Family::Generic).take(200);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for a in &sets {
        let p = QuarticPoly::characteristic(&build_omega(&a.hamiltonian));
        match quartic_roots(&p) {
            Ok(roots) => {
                let f = imaginary_frequencies(&roots);
                if f.len() != 2 {
                    failures += 1;
                    continue;
                }
                worst = worst
                    .max(rel(a.spectrum.lambda1, f[0]))
                    .max(rel(a.spectrum.lambda2, f[1]));
            }
            Err(_) => failures += 1,
        }
    }
    // isotropic subset: lambda = omega -+ 2 nu
    let mut iso = 0.0f64;
    for (m, k, th, et) in [(1.0f64, 1.0f64, 0.1, 0.1), (0.7, 2.0, 0.3, 0.05), (1.5, 0.5, 0.02, 0.4)] {
        let nc = NcParams::new(th, et, 1.0).unwrap();
        let w = (k / m).sqrt();
        let a = analyze(&NcOscillatorSpec::new(m, m, w, w, nc).unwrap()).unwrap();
        let ic = isotropic_commutative(m, k, &nc).unwrap();
        let omega = (ic.alpha / ic.mu0).sqrt();
        iso = iso
            .max(rel(a.spectrum.lambda1, omega - 2.0 * ic.nu))
            .max(rel(a.spectrum.lambda2, omega + 2.0 * ic.nu));
    }
    let secs = t0.elapsed().as_secs_f64();
    all.extend(sets);
    r.check(
        "2",
        "eigenvalue closed forms",
        failures == 0 && worst <= 1e-10 && iso <= 1e-10 && secs < 5.0,
        format!(
            "max rel err vs quartic roots {worst:.3e} on 200 sets (seed {DEFAULT_SEED}, {failures} oracle failures), \
             isotropic {iso:.3e} (tol 1e-10), {secs:.2}s"
        ),
    );
}

fn criterion_3_4(r: &mut Report, all: &mut Vec<Analysis>) {
    let t0 = Instant::now();
    let sets = ParamSampler::new(DEFAULT_SEED + 1, Family::AnisotropicNc).take(20);
    let mut annih = 0.0f64;
    let mut structure = 0.0f64;
    for a in &sets {
        let basis = mode_basis_auto(&a.hamiltonian).unwrap();
        let grid = AnnihilationGrid::covering(&a.state, 5.0, 128, Stencil::Eighth).unwrap();
        annih = annih.max(grid_annihilation_residual(&a.state, &basis, &grid));
        let l = lambda_from_coefficients(&basis.ux(), &basis.up(), a.spec.nc.hbar).unwrap();
        let scale = l.iter().map(|z| z.norm()).fold(0.0, f64::max);
        structure = structure
            .max(l[(0, 0)].im.abs() / scale)
            .max(l[(1, 1)].im.abs() / scale)
            .max(l[(0, 1)].re.abs() / scale);
    }
    let secs3 = t0.elapsed().as_secs_f64();
    r.check(
        "3",
        "ground-state annihilation",
        annih < 1e-6 && structure <= 1e-10 && secs3 < 30.0,
        format!(
            "grid residual {annih:.3e} (tol 1e-6, 128^2, +-5 sigma, 20 sets), \
             Im L11/L22 and Re L12 {structure:.3e} (tol 1e-10), {secs3:.2}s"
        ),
    );

    let t0 = Instant::now();
    let mut det = 0.0f64;
    let mut quad = 0.0f64;
    let mut inv = 0.0f64;
    for a in &sets {
        let w = wigner_from_state(&a.state).unwrap();
        det = det.max((w.determinant() * a.spec.nc.hbar.powi(4) - 1.0).abs());
        let scale = max_abs(&a.covariance.v);
        let m = quadrature_moments(&w).unwrap();
        quad = quad.max(max_abs(&(m.second - a.covariance.v)) / scale);
        let vi = covariance_via_inverse(&w).unwrap();
        let vs = covariance_via_simplified(&w);
        inv = inv
            .max(max_abs(&(vi.v - a.covariance.v)) / scale)
            .max(max_abs(&(vs.v - a.covariance.v)) / scale);
    }
    let secs4 = t0.elapsed().as_secs_f64();
    all.extend(sets);
    r.check(
        "4",
        "Wigner / covariance consistency",
        det <= 1e-10 && quad <= 1e-6 && inv <= 1e-10 && secs4 < 60.0,
        format!(
            "|det*hbar^4 - 1| {det:.3e} (tol 1e-10), quadrature {quad:.3e} (tol 1e-6), \
             inverse paths {inv:.3e} (tol 1e-10), {secs4:.2}s"
        ),
    );
}

fn isotropic_grid() -> Vec<Analysis> {
    let mut out = Vec::new();
    for m in [0.7f64, 1.5] {
        for k in [0.5, 1.0, 2.0, 3.0, 4.0] {
            for (th, et) in [(0.05, 0.1), (0.2, 0.3), (0.4, 0.1), (0.1, 0.5), (0.3, 0.3)] {
                let w = (k / m).sqrt();
                let nc = NcParams::new(th, et, 1.0).unwrap();
                out.push(analyze(&NcOscillatorSpec::new(m, m, w, w, nc).unwrap()).unwrap());
            }
        }
    }
    out
}

fn commutative_sets(n: usize) -> Vec<Analysis> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 2);
    let mut out = Vec::new();
    while out.len() < n {
        let hbar = rng.gen_range(0.5..2.0);
        let spec = NcOscillatorSpec::new(
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..3.0),
            rng.gen_range(0.5..3.0),
            NcParams::commutative(hbar).unwrap(),
        )
        .unwrap();
        if let Ok(a) = analyze(&spec) {
            out.push(a);
        }
    }
    out
}

/// Roots of `sep1_residual` in the second frequency, away from the trivial root.
fn sep1_roots() -> Vec<(NcOscillatorSpec, f64)> {
    let mut out = Vec::new();
    let cases = [
        (1.0, 1.0, 2.0, 0.1, 0.1, 1.0),
        (1.0, 1.0, 1.5, 0.2, 0.2, 1.0),
        (1.0, 1.0, 3.0, 0.05, 0.05, 1.0),
        (1.3, 0.8, 1.7, 0.15, 0.3, 1.0),
        (0.9, 1.2, 2.5, 0.3, 0.1, 1.4),
    ];
    for (m1, m2, w1, th, et, hbar) in cases {
        let nc = NcParams::new(th, et, hbar).unwrap();
        let spec_at = |w2: f64| NcOscillatorSpec::new(m1, m2, w1, w2, nc).unwrap();
        let f = |w2: f64| ncphase::sep1_residual(&spec_at(w2));
        let grid: Vec<f64> = (0..=400).map(|i| 0.05 + 5.0 * i as f64 / 400.0).collect();
        for pair in grid.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            // skip the trivial root w2 = w1
            if (a - w1).abs() < 0.05 || (b - w1).abs() < 0.05 {
                continue;
            }
            if f(a).signum() != f(b).signum() {
                let root = bisect(f, a, b, 1e-15).unwrap();
                out.push((spec_at(root), root));
            }
        }
    }
    out
}

fn criterion_6(r: &mut Report, all: &mut Vec<Analysis>) {
    let t0 = Instant::now();
    let iso = isotropic_grid();
    let iso_min = iso.iter().map(|a| a.report.ps).fold(f64::INFINITY, f64::min);
    let iso_ok = iso_min >= -1e-10 && iso.iter().all(|a| a.report.verdict == Verdict::Separable);
    r.check(
        "6a",
        "isotropic NC states separable",
        iso_ok,
        format!("min Ps {iso_min:.3e} over {} grid points (tol -1e-10)", iso.len()),
    );

    let comm = commutative_sets(50);
    let comm_min = comm.iter().map(|a| a.report.ps).fold(f64::INFINITY, f64::min);
    r.check(
        "6b",
        "commutative anisotropic separable",
        comm_min >= -1e-10,
        format!("min Ps {comm_min:.3e} over {} random sets (tol -1e-10)", comm.len()),
    );

    let ent = ParamSampler::new(DEFAULT_SEED + 3, Family::AnisotropicNc).take(200);
    let entangled = ent.iter().filter(|a| a.report.ps < 0.0).count();
    let agree = ent
        .iter()
        .filter(|a| ppt_symplectic_check(&a.covariance).1 == a.report.verdict)
        .count();
    r.check(
        "6c",
        "anisotropic NC entangled, PPT agreement",
        entangled == ent.len() && agree == ent.len(),
        format!("{entangled}/200 with Ps < 0, PPT verdict agreement {agree}/200"),
    );

    let roots = sep1_roots();
    let mut l12c = 0.0f64;
    let mut ps_min = f64::INFINITY;
    for (spec, _) in &roots {
        let a = analyze(spec).unwrap();
        l12c = l12c.max(a.state.lambda12c().abs());
        ps_min = ps_min.min(a.report.ps);
        all.push(a);
    }
    let secs = t0.elapsed().as_secs_f64();
    r.check(
        "6d",
        "separable surface",
        roots.len() >= 5 && l12c < 1e-8 && ps_min >= -1e-8 && secs < 60.0,
        format!(
            "{} bisected roots, max |L12c| {l12c:.3e} (tol 1e-8), min Ps {ps_min:.3e} (tol -1e-8), {secs:.2}s",
            roots.len()
        ),
    );
    all.extend(iso);
    all.extend(comm);
    all.extend(ent);
}

fn criterion_7(r: &mut Report) {
    let t0 = Instant::now();
    let (mu0, alpha0, kappa, hbar) = (1.0f64, 2.0f64, 1.0, 1.0);
    let period = 2.0 * PI / (alpha0 / mu0).sqrt();
    let driven = |eps: f64| {
        IsotropicTdParams::new(
            TimeFn::constant(mu0),
            TimeFn::new(move |t: f64| alpha0 * (1.0 + eps * (1.3 * t).sin())),
            TimeFn::constant(0.05),
            kappa,
            0.2,
            hbar,
        )
        .unwrap()
    };
    let p = driven(0.3);
    let t_end = 10.0 * period;
    let tr = integrate_ep(&p, 0.8, 0.1, t_end, 1e-3).unwrap();
    let drift = tr.max_kappa_drift();

    // order check on the trajectory against the exact Pinney solution; the kappa drift
    // itself converges faster than fourth order on periodic orbits and is reported only
    let cp = IsotropicTdParams::constant(mu0, alpha0, 0.05, kappa, 0.2, hbar).unwrap();
    let (exact, _) = pinney_closed_form(mu0, alpha0, kappa, 0.8, 0.1, t_end);
    let run = |dt: f64| integrate_ep(&cp, 0.8, 0.1, t_end, dt).unwrap();
    let (coarse, fine) = (run(0.02), run(0.01));
    let err = |tr: &ncphase::td::EpTrajectory| (tr.nodes.last().unwrap().sigma - exact).abs();
    let ratio = err(&coarse) / err(&fine);
    let drift_ratio = coarse.max_kappa_drift() / fine.max_kappa_drift();
    let unrefined = coarse.subdivisions == 0 && fine.subdivisions == 0;

    let mut ps = 0.0f64;
    for n in &tr.nodes {
        let s = td_ground_state(n, kappa, hbar).unwrap();
        ps = ps.max(simon_ps(&covariance(&s).unwrap()).abs());
    }

    // static limit: equilibrium width against the time-independent isotropic pipeline
    let (m, k) = (1.0f64, 2.0f64);
    let nc = NcParams::new(0.2, 0.1, hbar).unwrap();
    let ic = isotropic_commutative(m, k, &nc).unwrap();
    let w = (k / m).sqrt();
    let a = analyze(&NcOscillatorSpec::new(m, m, w, w, nc).unwrap()).unwrap();
    let sp = IsotropicTdParams::constant(ic.mu0, ic.alpha, ic.nu, kappa, 0.2, hbar).unwrap();
    let s_eq = sp.equilibrium_sigma(0.0);
    let st = integrate_ep(&sp, s_eq, 0.0, 5.0, 1e-2).unwrap();
    let mut vdiff = 0.0f64;
    for n in &st.nodes {
        let v = covariance(&td_ground_state(n, kappa, hbar).unwrap()).unwrap();
        vdiff = vdiff.max(max_abs(&(v.v - a.covariance.v)));
    }
    let secs = t0.elapsed().as_secs_f64();
    r.check(
        "7",
        "time-dependent isotropic",
        drift <= 1e-8
            && (12.0..=20.0).contains(&ratio)
            && unrefined
            && ps <= 1e-8
            && vdiff <= 1e-8
            && secs < 30.0,
        format!(
            "kappa drift {drift:.3e} over 10 periods at dt=1e-3 (tol 1e-8), \
             sigma error ratio dt=0.02/0.01 {ratio:.2} (16 +- 4; drift ratio {drift_ratio:.1}), max |Ps| {ps:.3e} (tol 1e-8), \
             static V diff {vdiff:.3e} (tol 1e-8), {secs:.2}s"
        ),
    );
}

fn criterion_8(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 4);
    let states = ParamSampler::new(DEFAULT_SEED + 5, Family::AnisotropicNc).take(5);
    let mut worst = 0.0f64;
    let mut mirror_ok = true;
    for a in &states {
        let v = a.covariance;
        let q = (0.5 * v.hbar).powi(2);
        let base = local_invariants(&v);
        for _ in 0..10 {
            let mut draw = || {
                sp2_from_params(
                    rng.gen_range(0.0..2.0 * PI),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            };
            let (s1, s2) = (draw(), draw());
            let moved = local_invariants(&local_congruence(&v, &s1, &s2));
            worst = worst
                .max((moved.delta1 - base.delta1).abs() / base.delta1.abs().max(q))
                .max((moved.delta2 - base.delta2).abs() / base.delta2.abs().max(q))
                .max((moved.delta12 - base.delta12).abs() / base.delta12.abs().max(q))
                .max((moved.tau_v - base.tau_v).abs() / base.tau_v.abs().max(q * q));
        }
        let m = local_invariants(&mirror_reflect(&v));
        mirror_ok &= m.delta1 == base.delta1
            && m.delta2 == base.delta2
            && m.tau_v == base.tau_v
            && m.delta12 == -base.delta12
            && base.delta12 != 0.0;
    }
    r.check(
        "8",
        "local-invariant invariance",
        worst <= 1e-10 && mirror_ok,
        format!(
            "max rel change {worst:.3e} under 50 congruences (tol 1e-10), mirror negates only Delta12: {mirror_ok}"
        ),
    );
}

fn main() -> ExitCode {
    let mut report = Report::default();
    let mut all = Vec::new();
    criterion_1(&mut report);
    criterion_2(&mut report, &mut all);
    criterion_3_4(&mut report, &mut all);
    criterion_6(&mut report, &mut all);
    let (c, nc) = rsup_minima(&all);
    let disagree = all
        .iter()
        .filter(|a| ppt_symplectic_check(&a.covariance).1 != a.report.verdict)
        .count();
    report.check(
        "5",
        "RSUP",
        c >= -1e-10 && nc >= -1e-10 && disagree == 0,
        format!(
            "min eig V + i hbar J/2 {c:.3e}, NC form {nc:.3e} (tol -1e-10) over {} states; \
             PPT/Simon disagreements {disagree}",
            all.len()
        ),
    );
    criterion_7(&mut report);
    criterion_8(&mut report);

    let mut lines = std::mem::take(&mut report.lines);
    lines.sort_by(|a, b| a.id.cmp(b.id));
    let mut ok = true;
    for l in &lines {
        ok &= l.passed;
        println!(
            "criterion {:<3} {} {:<38} {}",
            l.id,
            if l.passed { "PASS" } else { "FAIL" },
            l.name,
            l.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
