//! Brute-force reference: Schroedinger-picture evolution in a truncated
//! two-mode Fock space under the quadratic generator whose Heisenberg
//! equations reproduce the pump-linearized system, with Wigner evaluation by
//! displaced parity on the reduced density operator.
//!
//! This route shares no phase-space algebra with the `wigner` module: states
//! are number-basis vectors, evolution is direct integration of
//! `d psi/d zeta = -i H psi`, and `W(alpha) = (2/pi) Tr[rho D(2 alpha) Pi]`
//! with displacement matrix elements from associated Laguerre recurrences.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::states::{StateKind, TwoModeInput};
use crate::wigner::{Mode, PhaseSpaceGrid, WignerField};
use crate::{Error, Result};

/// Truncated-space configuration. States occupy `|0..cutoff-1>` per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub cutoff1: usize,
    pub cutoff3: usize,
    pub zeta: f64,
    pub gamma: f64,
    pub phi2: f64,
    /// RK4 substeps for the evolution.
    pub steps: usize,
}

impl FockConfig {
    /// Substep count for the Krylov propagator: one substep per ~16 units of
    /// `|H| zeta`, with `|H| <= 2 c1 + 2 gamma sqrt(c1 c3)`. At Krylov
    /// dimension 40 this keeps the per-substep truncation error below 1e-11.
    pub fn auto_steps(zeta: f64, cutoff1: usize, cutoff3: usize, gamma: f64) -> usize {
        let norm_bound =
            2.0 * cutoff1 as f64 + 2.0 * gamma * ((cutoff1 * cutoff3) as f64).sqrt();
        ((zeta.abs() * norm_bound / 16.0).ceil() as usize).max(1)
    }

    pub fn new(cutoff1: usize, cutoff3: usize, zeta: f64, gamma: f64, phi2: f64) -> Result<Self> {
        if cutoff1 < 2 || cutoff3 < 2 {
            return Err(Error::InvalidFockConfig(format!(
                "cutoffs must be >= 2, got {cutoff1} x {cutoff3}"
            )));
        }
        if !zeta.is_finite() || !gamma.is_finite() || !phi2.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidFockConfig("bad coupling parameters".into()));
        }
        Ok(Self {
            cutoff1,
            cutoff3,
            zeta,
            gamma,
            phi2,
            steps: Self::auto_steps(zeta, cutoff1, cutoff3, gamma),
        })
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidFockConfig("steps must be positive".into()));
        }
        self.steps = steps;
        Ok(self)
    }
}

/// Cutoff adequate for amplitude |alpha|^2 = nbar: `nbar + 6 sqrt(nbar) + 10`.
pub fn required_cutoff(nbar: f64) -> usize {
    (nbar + 6.0 * nbar.sqrt() + 10.0).ceil() as usize
}

/// Sparse Hermitian generator in the two-mode number basis, CSR layout.
/// Index convention: `idx = n1 * cutoff3 + n3`.
#[derive(Debug, Clone)]
pub struct Generator {
    pub cutoff1: usize,
    pub cutoff3: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<C64>,
}

impl Generator {
    /// `H = e^{i phi} (a1+)^2 + e^{-i phi} a1^2
    ///      + gamma (e^{-i phi} a1+ a3 + e^{i phi} a1 a3+)`,
    /// the unique Hermitian quadratic form whose Heisenberg equations
    /// `da/d zeta = -i [a, H]` reproduce the linear system.
    pub fn build(gamma: f64, phi2: f64, cutoff1: usize, cutoff3: usize) -> Self {
        let p = C64::from_polar(1.0, phi2);
        let dim = cutoff1 * cutoff3;
        let idx = |n1: usize, n3: usize| n1 * cutoff3 + n3;

        let mut triplets: Vec<(usize, u32, C64)> = Vec::new();
        for n1 in 0..cutoff1 {
            for n3 in 0..cutoff3 {
                let col = idx(n1, n3) as u32;
                // (a1+)^2 |n1> = sqrt((n1+1)(n1+2)) |n1+2>
                if n1 + 2 < cutoff1 {
                    let s = (((n1 + 1) * (n1 + 2)) as f64).sqrt();
                    triplets.push((idx(n1 + 2, n3), col, p * s));
                }
                // a1^2 |n1> = sqrt(n1 (n1-1)) |n1-2>
                if n1 >= 2 {
                    let s = ((n1 * (n1 - 1)) as f64).sqrt();
                    triplets.push((idx(n1 - 2, n3), col, p.conj() * s));
                }
                // a1+ a3 |n1, n3> = sqrt((n1+1) n3) |n1+1, n3-1>
                if gamma != 0.0 && n1 + 1 < cutoff1 && n3 >= 1 {
                    let s = (((n1 + 1) * n3) as f64).sqrt();
                    triplets.push((idx(n1 + 1, n3 - 1), col, gamma * p.conj() * s));
                }
                // a1 a3+ |n1, n3> = sqrt(n1 (n3+1)) |n1-1, n3+1>
                if gamma != 0.0 && n1 >= 1 && n3 + 1 < cutoff3 {
                    let s = ((n1 * (n3 + 1)) as f64).sqrt();
                    triplets.push((idx(n1 - 1, n3 + 1), col, gamma * p * s));
                }
            }
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            row_ptr[r + 1] += 1;
            cols.push(c);
            vals.push(v);
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self { cutoff1, cutoff3, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.cutoff1 * self.cutoff3
    }

    /// y = H x
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            *out = acc;
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let dim = self.dim();
        let mut h = Array2::<C64>::zeros((dim, dim));
        for r in 0..dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                h[[r, self.cols[k] as usize]] = self.vals[k];
            }
        }
        h
    }
}

/// Dense Hermitian generator matrix, for inspection and tests.
pub fn effective_generator(gamma: f64, phi2: f64, cutoff1: usize, cutoff3: usize) -> Array2<C64> {
    Generator::build(gamma, phi2, cutoff1, cutoff3).to_dense()
}

/// Evolved two-mode state as weighted coherent branches; the physical state
/// vector is the weighted sum. Branches are kept separate so unitarity can
/// be checked per branch.
#[derive(Debug, Clone)]
pub struct FockState {
    pub cutoff1: usize,
    pub cutoff3: usize,
    pub branches: Vec<(C64, Vec<C64>)>,
    /// Largest per-branch |norm(zeta) - norm(0)| observed.
    pub norm_drift: f64,
    /// Largest population seen within 3 levels of either cutoff.
    pub leakage: f64,
}

fn coherent_column(alpha: C64, cutoff: usize) -> Vec<C64> {
    // |alpha> = e^{-|a|^2/2} sum alpha^n / sqrt(n!) |n>
    let mut v = Vec::with_capacity(cutoff);
    let mut amp = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..cutoff {
        v.push(amp);
        amp *= alpha / ((n + 1) as f64).sqrt();
    }
    v
}

fn branch_list(kind: StateKind, alpha: C64) -> Vec<(C64, C64)> {
    match kind {
        StateKind::Vacuum => vec![(C64::new(1.0, 0.0), C64::new(0.0, 0.0))],
        StateKind::Coherent => vec![(C64::new(1.0, 0.0), alpha)],
        StateKind::CatPlus => {
            let w = C64::new(1.0 / crate::states::cat_norm(alpha).sqrt(), 0.0);
            vec![(w, alpha), (w, -alpha)]
        }
    }
}

fn edge_population(v: &[C64], cutoff1: usize, cutoff3: usize) -> f64 {
    let mut pop = 0.0;
    for n1 in 0..cutoff1 {
        for n3 in 0..cutoff3 {
            if n1 + 3 >= cutoff1 || n3 + 3 >= cutoff3 {
                pop += v[n1 * cutoff3 + n3].norm_sqr();
            }
        }
    }
    pop
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Evolves a product input through `exp(-i H zeta)`, one coherent branch at
/// a time (<= 4 branches; linearity). Fails with [`Error::CutoffTooSmall`]
/// if a cutoff is inadequate for an input amplitude, and with
/// [`Error::CutoffLeakage`] if population reaches the truncation edge
/// during the run.
pub fn evolve_state(input: &TwoModeInput, cfg: &FockConfig) -> Result<FockState> {
    input.validate()?;
    for (nbar, cutoff) in [
        (input.mode1.max_amplitude().powi(2), cfg.cutoff1),
        (input.mode3.max_amplitude().powi(2), cfg.cutoff3),
    ] {
        let needed = required_cutoff(nbar);
        if cutoff < needed {
            return Err(Error::CutoffTooSmall { cutoff, nbar, needed });
        }
    }

    let gen = Generator::build(cfg.gamma, cfg.phi2, cfg.cutoff1, cfg.cutoff3);
    let dim = gen.dim();
    let b1 = branch_list(input.mode1.kind, input.mode1.amplitude);
    let b3 = branch_list(input.mode3.kind, input.mode3.amplitude);
    let specs: Vec<(C64, C64, C64)> = b1
        .iter()
        .flat_map(|&(w1, a1)| b3.iter().map(move |&(w3, a3)| (w1 * w3, a1, a3)))
        .collect();

    type BranchOutcome = (C64, Vec<C64>, f64, f64);
    let results: Vec<Result<BranchOutcome>> = specs
        .par_iter()
        .map(|&(w, a1, a3)| {
            let col1 = coherent_column(a1, cfg.cutoff1);
            let col3 = coherent_column(a3, cfg.cutoff3);
            let mut psi: Vec<C64> = Vec::with_capacity(dim);
            for c1 in &col1 {
                for c3 in &col3 {
                    psi.push(c1 * c3);
                }
            }
            let norm0 = norm(&psi);
            let mut leakage = 0.0f64;
            if cfg.zeta != 0.0 {
                krylov_evolve(&gen, &mut psi, cfg.zeta, cfg.steps, &mut leakage)?;
            }
            leakage = leakage.max(edge_population(&psi, cfg.cutoff1, cfg.cutoff3));
            if leakage >= 1e-8 {
                return Err(Error::CutoffLeakage { leakage });
            }
            let drift = (norm(&psi) - norm0).abs();
            Ok((w, psi, leakage, drift))
        })
        .collect();

    let mut branches = Vec::new();
    let mut norm_drift = 0.0f64;
    let mut leakage = 0.0f64;
    for r in results {
        let (w, psi, leak, drift) = r?;
        leakage = leakage.max(leak);
        norm_drift = norm_drift.max(drift);
        branches.push((w, psi));
    }
    Ok(FockState {
        cutoff1: cfg.cutoff1,
        cutoff3: cfg.cutoff3,
        branches,
        norm_drift,
        leakage,
    })
}

/// Krylov subspace dimension for the short-time exponentials. With
/// `|H| dt ~ 8` per substep the Lanczos truncation error is far below
/// 1e-10.
const KRYLOV_DIM: usize = 40;

/// Substep exponentiation of `d psi/d zeta = -i H psi`: each substep applies
/// `exp(-i H dt)` through a Lanczos subspace with full reorthogonalization,
/// monitoring truncation-edge population along the way.
fn krylov_evolve(
    gen: &Generator,
    psi: &mut [C64],
    zeta: f64,
    steps: usize,
    leakage: &mut f64,
) -> Result<()> {
    let dt = zeta / steps as f64;
    for step in 0..steps {
        lanczos_expm_step(gen, psi, dt);
        let pop = edge_population(psi, gen.cutoff1, gen.cutoff3);
        if std::env::var_os("PPNC_DEBUG_LEAK").is_some() && pop > *leakage {
            eprintln!(
                "leak {pop:.3e} at substep {}/{steps} (zeta' = {:.4})",
                step + 1,
                (step + 1) as f64 * dt
            );
        }
        *leakage = leakage.max(pop);
        if pop >= 1e-8 {
            return Err(Error::CutoffLeakage { leakage: pop });
        }
    }
    Ok(())
}

/// `psi <- exp(-i H dt) psi` in a Krylov subspace. Hermiticity of H makes
/// the projected operator a real symmetric tridiagonal, exponentiated by
/// dense Jacobi diagonalization.
fn lanczos_expm_step(gen: &Generator, psi: &mut [C64], dt: f64) {
    let dim = psi.len();
    let m = KRYLOV_DIM.min(dim);
    let beta0 = norm(psi);
    if beta0 == 0.0 {
        return;
    }

    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(m);
    basis.push(psi.iter().map(|z| z / beta0).collect());
    let mut alphas: Vec<f64> = Vec::with_capacity(m);
    let mut betas: Vec<f64> = Vec::with_capacity(m);
    let mut w = vec![C64::new(0.0, 0.0); dim];

    // short-burst Lanczos; a small reorthogonalization window over the
    // trailing basis vectors is enough at m = 40 (expokit-style)
    const REORTH_WINDOW: usize = 4;
    for j in 0..m {
        gen.apply(&basis[j], &mut w);
        let alpha = inner(&basis[j], &w).re;
        alphas.push(alpha);
        for (wi, vj) in w.iter_mut().zip(basis[j].iter()) {
            *wi -= alpha * vj;
        }
        if j > 0 {
            let b = betas[j - 1];
            for (wi, vp) in w.iter_mut().zip(basis[j - 1].iter()) {
                *wi -= b * vp;
            }
        }
        for v in basis.iter().rev().take(REORTH_WINDOW) {
            let c = inner(v, &w);
            if c.norm() > 0.0 {
                for (wi, vi) in w.iter_mut().zip(v.iter()) {
                    *wi -= c * vi;
                }
            }
        }
        let beta = norm(&w);
        if j + 1 == m || beta < 1e-13 {
            break; // happy breakdown: subspace is invariant
        }
        betas.push(beta);
        basis.push(w.iter().map(|z| z / beta).collect());
    }

    let k = alphas.len();
    // projected propagator: y = exp(-i T dt) e1
    let mut t = vec![vec![0.0f64; k]; k];
    for (j, &a) in alphas.iter().enumerate() {
        t[j][j] = a;
        if j + 1 < k {
            t[j][j + 1] = betas[j];
            t[j + 1][j] = betas[j];
        }
    }
    let (evals, evecs) = jacobi_eigen(t);
    let mut y = vec![C64::new(0.0, 0.0); k];
    for (l, &lambda) in evals.iter().enumerate() {
        let phase = C64::from_polar(1.0, -lambda * dt);
        // (U exp(-i L dt) U^T e1)_j = sum_l U[j][l] e^{-i l dt} U[0][l]
        let w0 = evecs[0][l];
        for (j, yj) in y.iter_mut().enumerate() {
            *yj += evecs[j][l] * phase * w0;
        }
    }

    for p in psi.iter_mut() {
        *p = C64::new(0.0, 0.0);
    }
    for (j, v) in basis.iter().enumerate() {
        let c = beta0 * y[j];
        for (p, vi) in psi.iter_mut().zip(v.iter()) {
            *p += c * vi;
        }
    }
}

/// Cyclic Jacobi eigendecomposition of a small real symmetric matrix;
/// returns eigenvalues and the orthogonal matrix of eigenvectors (columns).
#[allow(clippy::needless_range_loop)]
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj - s * aqj;
                    a[q][j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }
    let evals = (0..n).map(|i| a[i][i]).collect();
    (evals, v)
}

impl FockState {
    /// The physical state vector (weighted branch sum).
    pub fn total_vector(&self) -> Vec<C64> {
        let dim = self.cutoff1 * self.cutoff3;
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for (w, psi) in &self.branches {
            for (o, s) in v.iter_mut().zip(psi.iter()) {
                *o += w * s;
            }
        }
        v
    }

    /// Reduced density operator of one mode by partial trace.
    pub fn reduced_density(&self, mode: Mode) -> Array2<C64> {
        let psi = self.total_vector();
        let (c1, c3) = (self.cutoff1, self.cutoff3);
        match mode {
            Mode::Mode1 => {
                let mut rho = Array2::<C64>::zeros((c1, c1));
                for n in 0..c1 {
                    for m in 0..c1 {
                        let mut acc = C64::new(0.0, 0.0);
                        for t in 0..c3 {
                            acc += psi[n * c3 + t] * psi[m * c3 + t].conj();
                        }
                        rho[[n, m]] = acc;
                    }
                }
                rho
            }
            Mode::Mode3 => {
                let mut rho = Array2::<C64>::zeros((c3, c3));
                for n in 0..c3 {
                    for m in 0..c3 {
                        let mut acc = C64::new(0.0, 0.0);
                        for t in 0..c1 {
                            acc += psi[t * c3 + n] * psi[t * c3 + m].conj();
                        }
                        rho[[n, m]] = acc;
                    }
                }
                rho
            }
        }
    }
}

/// `W(alpha) = (2/pi) Tr[rho D(2 alpha) Pi]` for one grid point.
///
/// With `rho` Hermitian the double sum collapses onto diagonals
/// `d = m - n >= 0` with `2 Re` weights; displacement matrix elements come
/// from the associated-Laguerre recurrence
/// `(n+1) L_{n+1}^d = (2n + d + 1 - x) L_n^d - (n + d) L_{n-1}^d`
/// and log-space prefactors `sqrt(n!/(n+d)!) |beta|^d e^{-x/2}`.
fn displaced_parity_point(rho: &Array2<C64>, alpha: C64, half_ln_fact: &[f64]) -> f64 {
    let n = rho.nrows();
    let beta = 2.0 * alpha;
    let x = beta.norm_sqr();
    let mut total = 0.0;

    for d in 0..n {
        let (ld, phase) = if d == 0 {
            (-0.5 * x, C64::new(1.0, 0.0))
        } else if beta.norm() == 0.0 {
            continue; // D(0) is diagonal
        } else {
            (
                d as f64 * beta.norm().ln() - 0.5 * x - half_ln_fact[d],
                (beta / beta.norm()).powu(d as u32),
            )
        };
        let mut pref = ld.exp();

        let mut l_prev = 0.0f64; // L_{-1}
        let mut l_cur = 1.0f64; // L_0^d
        let mut sum = 0.0f64;
        for k in 0..n - d {
            // element <k+d| D(beta) |k> = phase * pref(k) * L_k^d(x)
            let elem = phase * (pref * l_cur);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            if d == 0 {
                sum += sign * (rho[[k, k]] * elem).re;
            } else {
                sum += sign * 2.0 * (rho[[k, k + d]] * elem).re;
            }
            let kf = k as f64;
            let l_next = ((2.0 * kf + d as f64 + 1.0 - x) * l_cur
                - (kf + d as f64) * l_prev)
                / (kf + 1.0);
            l_prev = l_cur;
            l_cur = l_next;
            pref *= ((kf + 1.0) / (kf + 1.0 + d as f64)).sqrt();
        }
        total += sum;
    }
    std::f64::consts::FRAC_2_PI * total
}

/// Reduced Wigner field of one mode by displaced parity on the partial
/// trace; fully independent of the characteristic-function routes.
pub fn oracle_wigner(state: &FockState, mode: Mode, grid: &PhaseSpaceGrid) -> WignerField {
    let rho = state.reduced_density(mode);
    let n = rho.nrows();
    let mut half_ln_fact = vec![0.0f64; n + 1];
    for k in 1..=n {
        half_ln_fact[k] = half_ln_fact[k - 1] + 0.5 * (k as f64).ln();
    }
    let xs = grid.xs();
    let ps = grid.ps();
    let mut values = Array2::<f64>::zeros((grid.nx, grid.ny));
    values
        .axis_iter_mut(ndarray::Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(ix, mut row)| {
            for (ip, out) in row.iter_mut().enumerate() {
                *out = displaced_parity_point(&rho, C64::new(xs[ix], ps[ip]), &half_ln_fact);
            }
        });
    let integral = values.sum() * grid.dx() * grid.dp();
    WignerField {
        grid: *grid,
        values,
        mode_label: mode,
        normalization_defect: (1.0 - integral).abs(),
    }
}

/// First and second moments of both modes measured on the state.
#[derive(Debug, Clone, Copy)]
pub struct FockMoments {
    pub a1: C64,
    pub a3: C64,
    pub n1: f64,
    pub n3: f64,
    pub a1_sq: C64,
    pub a3_sq: C64,
}

fn apply_lowering(psi: &[C64], c1: usize, c3: usize, mode: Mode) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); psi.len()];
    match mode {
        Mode::Mode1 => {
            for n1 in 0..c1 - 1 {
                let s = ((n1 + 1) as f64).sqrt();
                for n3 in 0..c3 {
                    out[n1 * c3 + n3] = s * psi[(n1 + 1) * c3 + n3];
                }
            }
        }
        Mode::Mode3 => {
            for n1 in 0..c1 {
                for n3 in 0..c3 - 1 {
                    out[n1 * c3 + n3] = ((n3 + 1) as f64).sqrt() * psi[n1 * c3 + n3 + 1];
                }
            }
        }
    }
    out
}

fn apply_raising(psi: &[C64], c1: usize, c3: usize, mode: Mode) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); psi.len()];
    match mode {
        Mode::Mode1 => {
            for n1 in 1..c1 {
                let s = (n1 as f64).sqrt();
                for n3 in 0..c3 {
                    out[n1 * c3 + n3] = s * psi[(n1 - 1) * c3 + n3];
                }
            }
        }
        Mode::Mode3 => {
            for n1 in 0..c1 {
                for n3 in 1..c3 {
                    out[n1 * c3 + n3] = (n3 as f64).sqrt() * psi[n1 * c3 + n3 - 1];
                }
            }
        }
    }
    out
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn oracle_moments(state: &FockState) -> FockMoments {
    let psi = state.total_vector();
    let (c1, c3) = (state.cutoff1, state.cutoff3);
    let a1psi = apply_lowering(&psi, c1, c3, Mode::Mode1);
    let a3psi = apply_lowering(&psi, c1, c3, Mode::Mode3);
    let a1a1 = apply_lowering(&a1psi, c1, c3, Mode::Mode1);
    let a3a3 = apply_lowering(&a3psi, c1, c3, Mode::Mode3);
    FockMoments {
        a1: inner(&psi, &a1psi),
        a3: inner(&psi, &a3psi),
        n1: inner(&a1psi, &a1psi).re,
        n3: inner(&a3psi, &a3psi).re,
        a1_sq: inner(&psi, &a1a1),
        a3_sq: inner(&psi, &a3a3),
    }
}

/// All 16 second moments `<v_i v_j>` with `v = (a1, a1+, a3, a3+)`,
/// measured directly on the state (operator order preserved). Used to
/// validate moment transport through the Bogoliubov coefficients.
pub fn second_moment_matrix(state: &FockState) -> [[C64; 4]; 4] {
    let psi = state.total_vector();
    let (c1, c3) = (state.cutoff1, state.cutoff3);
    let ops: [Vec<C64>; 4] = [
        apply_lowering(&psi, c1, c3, Mode::Mode1),
        apply_raising(&psi, c1, c3, Mode::Mode1),
        apply_lowering(&psi, c1, c3, Mode::Mode3),
        apply_raising(&psi, c1, c3, Mode::Mode3),
    ];
    // <v_i v_j> = <(v_i)+ psi | v_j psi>; the adjoint of v_i swaps
    // lowering <-> raising, i.e. index i ^ 1.
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        let left = &ops[i ^ 1];
        for (j, right) in ops.iter().enumerate() {
            m[i][j] = inner(left, right);
        }
    }
    m
}

/// First moments `<v_i>`.
pub fn first_moment_vector(state: &FockState) -> [C64; 4] {
    let mom = oracle_moments(state);
    [mom.a1, mom.a1.conj(), mom.a3, mom.a3.conj()]
}
