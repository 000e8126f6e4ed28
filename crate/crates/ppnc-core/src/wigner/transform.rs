//! Numeric route: sample the reduced characteristic function on a uniform
//! beta-grid and apply the 2D discrete Fourier transform
//!
//! ```text
//!   W(x, p) = (1/pi^2) Int chi(u + iv) exp(2i (u p - v x)) du dv
//! ```
//!
//! using the kernel identity `beta* alpha - beta alpha* = 2i (u p - v x)`.
//! The transform is separable, so it runs as two passes of 1D sums with
//! precomputed kernel tables. The sampling density is chosen from an upper
//! bound on the integrand's oscillation rate; samples where every dyadic
//! pair's Gaussian envelope is below 1e-18 of its peak are skipped (they
//! cannot move the result at the 1e-12 level).

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::propagator::PropagatorCoeffs;
use crate::states::{DyadicTerm, TwoModeInput};
use crate::{Error, Result};

use super::gaussian::BetaQuadratic;
use super::{check_propagator, lambda_args, mode_row, Mode, PhaseSpaceGrid, WignerField};

/// Decay required of |chi| at the beta-box boundary.
const BOUNDARY_TOL: f64 = 1e-12;
/// ln of the relative envelope level below which samples are skipped.
const SKIP_LOG: f64 = -41.45; // ln 1e-18

struct Sampler<'a> {
    row: (C64, C64, C64, C64),
    d1: Vec<DyadicTerm>,
    d3: Vec<DyadicTerm>,
    input: &'a TwoModeInput,
}

impl Sampler<'_> {
    fn chi(&self, beta: C64) -> C64 {
        let (l1, l3) = lambda_args(self.row, beta);
        let one_mode = |terms: &[DyadicTerm], l: C64| -> C64 {
            terms
                .iter()
                .map(|t| t.weight * crate::states::dyadic_characteristic(t.left, t.right, l))
                .sum()
        };
        one_mode(&self.d1, l1) * one_mode(&self.d3, l3)
    }
}

/// Samples per axis from the oscillation bound: constant per-pair fringe
/// frequency (linear exponent), Fourier kernel frequency on the output
/// window, and the spectral width of the sharpest Gaussian factor.
fn choose_samples(
    beta_extent: f64,
    grid: &PhaseSpaceGrid,
    sampler: &Sampler,
) -> usize {
    let (c1, c2, c3, c4) = sampler.row;
    let p1 = (c1.conj() - c2).norm();
    let r1 = (c1.conj() + c2).norm();
    let p3 = (c3.conj() - c4).norm();
    let r3 = (c3.conj() + c4).norm();

    let a1 = sampler.input.mode1.max_amplitude();
    let a3 = sampler.input.mode3.max_amplitude();
    let osc = (2.0 * (p1 * a1 + p3 * a3)).max(2.0 * (r1 * a1 + r3 * a3));
    let kernel = 2.0
        * grid
            .x_min
            .abs()
            .max(grid.x_max.abs())
            .max(grid.p_min.abs())
            .max(grid.p_max.abs());
    let width = 8.0 * (p1 * p1 + r1 * r1 + p3 * p3 + r3 * r3).sqrt();

    let du = std::f64::consts::PI / (osc + kernel + width);
    let m = (2.0 * beta_extent / du).ceil() as usize + 1;
    let m = m.clamp(129, 6145);
    if m.is_multiple_of(2) {
        m + 1
    } else {
        m
    }
}

/// Largest |chi| on the boundary of the beta box: direct samples plus, when
/// available, the analytic per-pair envelope maxima along each edge.
fn boundary_max(sampler: &Sampler, quad: Option<&BetaQuadratic>, b: f64, m: usize) -> f64 {
    let step = 2.0 * b / (m - 1) as f64;
    let mut max = 0.0f64;
    for i in 0..m {
        let t = -b + i as f64 * step;
        for beta in [
            C64::new(t, -b),
            C64::new(t, b),
            C64::new(-b, t),
            C64::new(b, t),
        ] {
            max = max.max(sampler.chi(beta).norm());
        }
    }
    if let Some(q) = quad {
        // per edge, the envelope log is quadratic in the free coordinate:
        // check endpoints and interior vertex
        for pair in &q.pairs {
            let edge = |fixed_u: Option<f64>, fixed_v: Option<f64>| {
                let eval = |u: f64, v: f64| q.envelope_log(pair, u, v);
                match (fixed_u, fixed_v) {
                    (Some(u), None) => {
                        // d/dv = -q12 u - q22 v + b0v.re = 0
                        let v = (pair.b0v.re - q.q12 * u) / q.q22;
                        let mut best = eval(u, -b).max(eval(u, b));
                        if v.abs() <= b {
                            best = best.max(eval(u, v));
                        }
                        best
                    }
                    (None, Some(v)) => {
                        let u = (pair.b0u.re - q.q12 * v) / q.q11;
                        let mut best = eval(-b, v).max(eval(b, v));
                        if u.abs() <= b {
                            best = best.max(eval(u, v));
                        }
                        best
                    }
                    _ => unreachable!(),
                }
            };
            let worst = edge(Some(-b), None)
                .max(edge(Some(b), None))
                .max(edge(None, Some(-b)))
                .max(edge(None, Some(b)));
            max = max.max(worst.exp());
        }
    }
    max
}

/// Reduced Wigner field by the sampled-transform route.
///
/// `beta_extent` is the half-width of the square beta integration box; it
/// must be large enough that |chi| has fallen below 1e-12 on its boundary.
pub fn wigner_transform_path(
    mode: Mode,
    grid: &PhaseSpaceGrid,
    p: &PropagatorCoeffs,
    input: &TwoModeInput,
    beta_extent: f64,
) -> Result<WignerField> {
    check_propagator(p)?;
    input.validate()?;
    if !(beta_extent.is_finite() && beta_extent > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "beta_extent must be positive, got {beta_extent}"
        )));
    }
    let sampler = Sampler {
        row: mode_row(mode, p),
        d1: input.mode1.dyadics(),
        d3: input.mode3.dyadics(),
        input,
    };
    // The quadratic form is only used for sample skipping and the analytic
    // half of the boundary check; the transform itself never needs it.
    let quad = BetaQuadratic::build(mode, p, input).ok();

    let b = beta_extent;
    let m = choose_samples(b, grid, &sampler);
    let du = 2.0 * b / (m - 1) as f64;

    let max_boundary = boundary_max(&sampler, quad.as_ref(), b, m.min(1025));
    if max_boundary >= BOUNDARY_TOL {
        return Err(Error::InsufficientBetaExtent {
            extent: b,
            max_boundary,
        });
    }

    // Per-row u-intervals where at least one pair envelope is above the skip
    // threshold. Without the quadratic form, every sample is evaluated.
    let peak = quad.as_ref().map(|q| {
        q.pairs
            .iter()
            .map(|t| q.envelope_peak(t))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    let support = |v: f64| -> Option<(f64, f64)> {
        let (q, peak) = match (&quad, peak) {
            (Some(q), Some(pk)) => (q, pk),
            _ => return Some((-b, b)),
        };
        let thresh = peak + SKIP_LOG;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for pair in &q.pairs {
            // -1/2 q11 u^2 + (bru - q12 v) u + (c(v) - thresh) >= 0
            let lin = pair.b0u.re - q.q12 * v;
            let c = -0.5 * q.q22 * v * v
                + pair.b0v.re * v
                + pair.c0.re
                + pair.weight.norm().max(f64::MIN_POSITIVE).ln()
                - thresh;
            let disc = lin * lin + 2.0 * q.q11 * c;
            if disc >= 0.0 {
                let s = disc.sqrt();
                lo = lo.min((lin - s) / q.q11);
                hi = hi.max((lin + s) / q.q11);
            }
        }
        if lo > hi {
            None
        } else {
            Some((lo.max(-b), hi.min(b)))
        }
    };

    let us: Vec<f64> = (0..m).map(|i| -b + i as f64 * du).collect();
    let vs = us.clone();
    let ps = grid.ps();
    let xs = grid.xs();
    let ny = grid.ny;
    let nx = grid.nx;

    // kernel tables: e1[iu][ip] = exp(2i u p), e2[iv][ix] = exp(-2i v x)
    let e1: Vec<Vec<C64>> = us
        .par_iter()
        .map(|&u| ps.iter().map(|&pp| C64::from_polar(1.0, 2.0 * u * pp)).collect())
        .collect();
    let e2: Vec<Vec<C64>> = vs
        .par_iter()
        .map(|&v| xs.iter().map(|&x| C64::from_polar(1.0, -2.0 * v * x)).collect())
        .collect();

    // stage 1: per beta-row, transform over u -> p
    let t_rows: Vec<Option<Vec<C64>>> = vs
        .par_iter()
        .map(|&v| {
            let (ulo, uhi) = support(v)?;
            let ilo = ((ulo + b) / du).floor().max(0.0) as usize;
            let ihi = (((uhi + b) / du).ceil() as usize).min(m - 1);
            let mut row = vec![C64::new(0.0, 0.0); ny];
            for iu in ilo..=ihi {
                let chi = sampler.chi(C64::new(us[iu], v));
                let kernel = &e1[iu];
                for (acc, k) in row.iter_mut().zip(kernel.iter()) {
                    *acc += chi * k;
                }
            }
            Some(row)
        })
        .collect();

    // stage 2: transform over v -> x
    let active: Vec<usize> = t_rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().map(|_| i))
        .collect();
    let scale = du * du / (std::f64::consts::PI * std::f64::consts::PI);
    let mut raw = Array2::<C64>::zeros((nx, ny));
    raw.axis_iter_mut(ndarray::Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(ix, mut out_row)| {
            let mut acc = vec![C64::new(0.0, 0.0); ny];
            for &iv in &active {
                let t_row = t_rows[iv].as_ref().unwrap();
                let k = e2[iv][ix];
                for (a, t) in acc.iter_mut().zip(t_row.iter()) {
                    *a += k * t;
                }
            }
            for (o, a) in out_row.iter_mut().zip(acc.iter()) {
                *o = a * scale;
            }
        });

    WignerField::from_complex(*grid, raw, mode)
}
