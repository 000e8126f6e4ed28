//! Built-in verification suites: machine-checkable consistency report over
//! the propagator identities, the dual Wigner routes and (at full level)
//! the Fock-space oracle.

use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ppnc_core::fock::{evolve_state, oracle_wigner, FockConfig};
use ppnc_core::propagator::{
    coeffs, coeffs_degenerate, coeffs_ode, commutator_defects, default_ode_step, CouplingConfig,
    PropagatorCoeffs,
};
use ppnc_core::states::{CaseLabel, TwoModeInput};
use ppnc_core::wigner::{
    wigner_gaussian_sum_path, wigner_transform_path, Mode, PhaseSpaceGrid,
};

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn check(name: &'static str, f: impl FnOnce() -> (bool, String)) -> Check {
    let t0 = Instant::now();
    let (pass, detail) = f();
    Check { name, pass, detail, seconds: t0.elapsed().as_secs_f64() }
}

fn max_coeff_diff(a: &PropagatorCoeffs, b: &PropagatorCoeffs) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array().iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn sup_diff(a: &ppnc_core::wigner::WignerField, b: &ppnc_core::wigner::WignerField) -> f64 {
    a.values
        .iter()
        .zip(b.values.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn run(full: bool) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9b2c_55d1);
    let mut checks = Vec::new();

    checks.push(check("identity-at-zero", || {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let gamma = rng.random_range(0.0..1.5);
            let phi2 = rng.random_range(0.0..std::f64::consts::TAU);
            let p = coeffs(&CouplingConfig::new(0.0, gamma, phi2).unwrap());
            worst = worst.max(max_coeff_diff(&p, &PropagatorCoeffs::identity()));
        }
        (worst < 1e-12, format!("max |coeff - identity| = {worst:.2e}"))
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(0x1f83_d9ab);
    checks.push(check("commutator-preservation", || {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let zeta = rng.random_range(0.0..2.0);
            let gamma = rng.random_range(0.0..0.99);
            let phi2 = rng.random_range(0.0..std::f64::consts::TAU);
            let p = coeffs(&CouplingConfig::new(zeta, gamma, phi2).unwrap());
            worst = worst.max(commutator_defects(&p).max_abs());
        }
        (worst < 1e-10, format!("max defect = {worst:.2e}"))
    }));

    checks.push(check("decoupled-limit", || {
        let mut worst = 0.0f64;
        for k in 1..=8 {
            let zeta = 0.25 * k as f64;
            let p = coeffs(&CouplingConfig::new(zeta, 0.0, 0.0).unwrap());
            worst = worst.max((p.k1 - C64::new((2.0 * zeta).cosh(), 0.0)).norm());
            worst = worst.max((p.k2 - C64::new(0.0, -(2.0 * zeta).sinh())).norm());
        }
        (worst < 1e-10, format!("max |coeff - closed form| = {worst:.2e}"))
    }));

    checks.push(check("closed-form-vs-ode", || {
        let mut worst = 0.0f64;
        for zeta in [0.1, 0.5, 0.9, 1.5, 2.0] {
            for gamma in [0.0, 0.3, 0.5, 0.9, 0.99] {
                for phi2 in [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::PI] {
                    let c = CouplingConfig::new(zeta, gamma, phi2).unwrap();
                    let a = coeffs(&c);
                    let b = coeffs_ode(&c, default_ode_step(zeta)).unwrap();
                    let scale = a.as_array().iter().map(|z| z.norm()).fold(1.0, f64::max);
                    worst = worst.max(max_coeff_diff(&a, &b) / scale);
                }
            }
        }
        (worst < 1e-8, format!("max rel diff = {worst:.2e}"))
    }));

    checks.push(check("confluent-branch-continuity", || {
        let mut worst = 0.0f64;
        for zeta in [0.5, 1.0, 1.5] {
            let lo = coeffs(&CouplingConfig::new(zeta, 1.0 - 1e-6, 0.2).unwrap());
            let hi = coeffs(&CouplingConfig::new(zeta, 1.0 + 1e-6, 0.2).unwrap());
            let mid = coeffs_degenerate(&CouplingConfig::new(zeta, 1.0, 0.2).unwrap());
            worst = worst.max(max_coeff_diff(&lo, &mid)).max(max_coeff_diff(&hi, &mid));
        }
        (worst < 1e-5, format!("max jump across gamma = 1: {worst:.2e}"))
    }));

    checks.push(check("dual-path-agreement", || {
        let p = coeffs(&CouplingConfig::new(0.9, 0.9, 0.0).unwrap());
        let grid = PhaseSpaceGrid::square(4.0, 96).unwrap();
        let a = C64::from_polar(2.0_f64.sqrt(), std::f64::consts::FRAC_PI_4);
        let mut worst = 0.0f64;
        for case in [CaseLabel::IV, CaseLabel::V] {
            let input = TwoModeInput::from_case(case, a, C64::new(0.0, 0.0));
            for mode in [Mode::Mode1, Mode::Mode3] {
                let g = match wigner_gaussian_sum_path(mode, &grid, &p, &input) {
                    Ok(g) => g,
                    Err(e) => return (false, format!("gaussian path failed: {e}")),
                };
                let t = match wigner_transform_path(mode, &grid, &p, &input, 45.0) {
                    Ok(t) => t,
                    Err(e) => return (false, format!("transform path failed: {e}")),
                };
                worst = worst.max(sup_diff(&g, &t));
            }
        }
        (worst < 1e-6, format!("max sup-norm difference = {worst:.2e}"))
    }));

    checks.push(check("normalization-and-cat-center", || {
        let a = C64::from_polar(12.0_f64.sqrt(), std::f64::consts::FRAC_PI_3);
        let grid = PhaseSpaceGrid::square(6.0, 257).unwrap();
        let input = TwoModeInput::from_case(CaseLabel::V, a, C64::new(0.0, 0.0));
        let w = match wigner_gaussian_sum_path(
            Mode::Mode1,
            &grid,
            &PropagatorCoeffs::identity(),
            &input,
        ) {
            Ok(w) => w,
            Err(e) => return (false, format!("gaussian path failed: {e}")),
        };
        let center = w.sample(0.0, 0.0);
        let defect = w.normalization_defect;
        let center_err = (center - std::f64::consts::FRAC_2_PI).abs();
        (
            defect < 1e-3 && center_err < 1e-9,
            format!("defect = {defect:.2e}, |W(0) - 2/pi| = {center_err:.2e}"),
        )
    }));

    if full {
        checks.push(check("fock-oracle-agreement", || {
            let alpha = C64::from_polar(2.0_f64.sqrt(), std::f64::consts::FRAC_PI_4);
            let input = TwoModeInput::from_case(CaseLabel::V, alpha, C64::new(0.0, 0.0));
            let (zeta, gamma) = (0.6, 0.9);
            let p = coeffs(&CouplingConfig::new(zeta, gamma, 0.0).unwrap());
            let cfg = match FockConfig::new(180, 64, zeta, gamma, 0.0) {
                Ok(c) => c,
                Err(e) => return (false, e.to_string()),
            };
            let state = match evolve_state(&input, &cfg) {
                Ok(s) => s,
                Err(e) => return (false, format!("evolution failed: {e}")),
            };
            let grid = PhaseSpaceGrid::square(3.5, 64).unwrap();
            let mut worst = 0.0f64;
            for mode in [Mode::Mode1, Mode::Mode3] {
                let w_o = oracle_wigner(&state, mode, &grid);
                let w_g = match wigner_gaussian_sum_path(mode, &grid, &p, &input) {
                    Ok(w) => w,
                    Err(e) => return (false, format!("gaussian path failed: {e}")),
                };
                worst = worst.max(sup_diff(&w_o, &w_g));
            }
            (
                worst < 1e-4,
                format!("max sup-norm vs Fock oracle = {worst:.2e} (drift {:.1e})", state.norm_drift),
            )
        }));
    }

    checks
}

/// Prints the report; returns process exit code (0 pass, 2 any failure).
pub fn report(checks: &[Check]) -> i32 {
    let mut failed = 0;
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {:<32} {:>7.2}s  {}", c.name, c.seconds, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    let total: f64 = checks.iter().map(|c| c.seconds).sum();
    println!(
        "{} checks, {} failed, {:.1}s total",
        checks.len(),
        failed,
        total
    );
    if failed == 0 {
        0
    } else {
        2
    }
}
