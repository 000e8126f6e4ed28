//! Closed-form route: per dyadic pair the beta-integrand of the Wigner
//! transform is `exp(quadratic in (Re beta, Im beta))`, so each pair's 2D
//! integral is an explicit Gaussian integral. The field is the weighted sum
//! over pairs, evaluated pointwise from precomputed quadratic polynomials
//! in (x, p).

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::propagator::PropagatorCoeffs;
use crate::states::{DyadicTerm, TwoModeInput};
use crate::{Error, Result};

use super::{check_propagator, mode_row, Mode, PhaseSpaceGrid, WignerField};

/// Writing `beta = u + i v` and `lambda = u P + v R` per input mode, the
/// envelope exponent is `-1/2 q^T Q q + b0 . q + c0` with `q = (u, v)`.
/// Q is real symmetric and shared by every pair; only (b0, c0) vary.
#[derive(Debug, Clone)]
pub(crate) struct BetaQuadratic {
    pub q11: f64,
    pub q12: f64,
    pub q22: f64,
    /// det Q
    pub det: f64,
    /// Q^-1 entries
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub pairs: Vec<PairTerm>,
}

/// Linear/constant exponent data of one dyadic pair (mode-1 term x mode-3
/// term), before the Fourier kernel is added.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PairTerm {
    pub weight: C64,
    pub b0u: C64,
    pub b0v: C64,
    pub c0: C64,
}

impl BetaQuadratic {
    pub(crate) fn build(
        mode: Mode,
        p: &PropagatorCoeffs,
        input: &TwoModeInput,
    ) -> Result<Self> {
        let (c1, c2, c3, c4) = mode_row(mode, p);
        // lambda_j = u P_j + v R_j
        let p1 = c1.conj() - c2;
        let r1 = C64::i() * (c1.conj() + c2);
        let p3 = c3.conj() - c4;
        let r3 = C64::i() * (c3.conj() + c4);

        let q11 = p1.norm_sqr() + p3.norm_sqr();
        let q22 = r1.norm_sqr() + r3.norm_sqr();
        let q12 = (p1 * r1.conj()).re + (p3 * r3.conj()).re;
        let det = q11 * q22 - q12 * q12;
        if det <= 1e-12 * q11.abs().max(q22.abs()).max(1.0).powi(2) || q11 <= 0.0 {
            return Err(Error::NonPositiveDefiniteForm(det));
        }
        let a11 = q22 / det;
        let a22 = q11 / det;
        let a12 = -q12 / det;

        let d1 = input.mode1.dyadics();
        let d3 = input.mode3.dyadics();
        let mut pairs = Vec::with_capacity(d1.len() * d3.len());
        let lin = |pp: C64, rr: C64, t: &DyadicTerm| {
            (
                pp * t.right.conj() - pp.conj() * t.left,
                rr * t.right.conj() - rr.conj() * t.left,
            )
        };
        let cst = |t: &DyadicTerm| {
            t.right.conj() * t.left - 0.5 * (t.left.norm_sqr() + t.right.norm_sqr())
        };
        for t1 in &d1 {
            let (bu1, bv1) = lin(p1, r1, t1);
            let c1c = cst(t1);
            for t3 in &d3 {
                let (bu3, bv3) = lin(p3, r3, t3);
                pairs.push(PairTerm {
                    weight: t1.weight * t3.weight,
                    b0u: bu1 + bu3,
                    b0v: bv1 + bv3,
                    c0: c1c + cst(t3),
                });
            }
        }
        Ok(Self { q11, q12, q22, det, a11, a12, a22, pairs })
    }

    /// Real part of a pair's exponent at (u, v): the log of that term's
    /// contribution to |chi|.
    pub(crate) fn envelope_log(&self, pair: &PairTerm, u: f64, v: f64) -> f64 {
        -0.5 * (self.q11 * u * u + 2.0 * self.q12 * u * v + self.q22 * v * v)
            + pair.b0u.re * u
            + pair.b0v.re * v
            + pair.c0.re
            + pair.weight.norm().max(f64::MIN_POSITIVE).ln()
    }

    /// Peak of a pair's envelope log over the beta plane.
    pub(crate) fn envelope_peak(&self, pair: &PairTerm) -> f64 {
        let bu = pair.b0u.re;
        let bv = pair.b0v.re;
        // max of -1/2 q^T Q q + br . q is 1/2 br^T Q^-1 br
        0.5 * (self.a11 * bu * bu + 2.0 * self.a12 * bu * bv + self.a22 * bv * bv)
            + pair.c0.re
            + pair.weight.norm().max(f64::MIN_POSITIVE).ln()
    }
}

/// One pair's exponent as a quadratic polynomial in the output point (x, p),
/// after the closed-form Gaussian integral over beta.
struct PairPolynomial {
    pref: C64,
    c: C64,
    cx: C64,
    cp: C64,
    cxx: f64,
    cpp: f64,
    cxp: f64,
}

/// Reduced Wigner field by the closed-form Gaussian-sum route.
pub fn wigner_gaussian_sum_path(
    mode: Mode,
    grid: &PhaseSpaceGrid,
    p: &PropagatorCoeffs,
    input: &TwoModeInput,
) -> Result<WignerField> {
    check_propagator(p)?;
    input.validate()?;
    let quad = BetaQuadratic::build(mode, p, input)?;

    // Fourier kernel beta* alpha - beta alpha* = 2i(u p - v x) contributes
    // b += (2i p, -2i x); with A = Q^-1 the integral of each pair is
    // (2 pi / sqrt det) exp(c0 + 1/2 b^T A b), a quadratic polynomial in
    // (x, p) with constant coefficients.
    let norm = 2.0 / (std::f64::consts::PI * quad.det.sqrt());
    let polys: Vec<PairPolynomial> = quad
        .pairs
        .iter()
        .map(|t| {
            let (a11, a12, a22) = (quad.a11, quad.a12, quad.a22);
            let ab_u = a11 * t.b0u + a12 * t.b0v;
            let ab_v = a12 * t.b0u + a22 * t.b0v;
            PairPolynomial {
                pref: t.weight * norm,
                c: t.c0 + 0.5 * (t.b0u * ab_u + t.b0v * ab_v),
                cx: -2.0 * C64::i() * ab_v,
                cp: 2.0 * C64::i() * ab_u,
                cxx: -2.0 * a22,
                cpp: -2.0 * a11,
                cxp: 4.0 * a12,
            }
        })
        .collect();

    let xs = grid.xs();
    let ps = grid.ps();
    let mut raw = Array2::<C64>::zeros((grid.nx, grid.ny));
    raw.axis_iter_mut(ndarray::Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(ix, mut row)| {
            let x = xs[ix];
            for (ip, out) in row.iter_mut().enumerate() {
                let pp = ps[ip];
                let mut acc = C64::new(0.0, 0.0);
                for poly in &polys {
                    let e = poly.c
                        + poly.cx * x
                        + poly.cp * pp
                        + C64::new(
                            poly.cxx * x * x + poly.cpp * pp * pp + poly.cxp * x * pp,
                            0.0,
                        );
                    acc += poly.pref * e.exp();
                }
                *out = acc;
            }
        });

    WignerField::from_complex(*grid, raw, mode)
}
