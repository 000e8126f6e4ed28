//! Shared brute-force oracles for integration tests.
//!
//! Everything here goes through dense matrix exponentials in a truncated
//! number basis, deliberately avoiding the displacement algebra, Laguerre
//! recurrences and closed forms used by the library.

#![allow(dead_code)]

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

/// Dense matrix exponential by scaling-and-squaring with a Taylor series.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| a[[i, j]].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let x = a.mapv(|z| z / 2f64.powi(s as i32));

    let mut sum = Array2::<C64>::eye(n);
    let mut term = Array2::<C64>::eye(n);
    for k in 1..=40 {
        term = term.dot(&x).mapv(|z| z / k as f64);
        let tnorm: f64 = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        sum += &term;
        if tnorm < 1e-18 {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}

/// Truncated annihilation operator.
pub fn ladder(n: usize) -> Array2<C64> {
    let mut a = Array2::<C64>::zeros((n, n));
    for k in 1..n {
        a[[k - 1, k]] = C64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Displacement operator `D(lambda) = expm(lambda a+ - lambda* a)`.
pub fn displacement(lambda: C64, n: usize) -> Array2<C64> {
    let a = ladder(n);
    let adag = a.t().mapv(|z| z.conj());
    let gen = adag.mapv(|z| z * lambda) - a.mapv(|z| z * lambda.conj());
    expm(&gen)
}

/// Truncated coherent state column.
pub fn coherent_vec(alpha: C64, n: usize) -> Array1<C64> {
    let mut v = Array1::<C64>::zeros(n);
    let mut amp = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for k in 0..n {
        v[k] = amp;
        amp *= alpha / ((k + 1) as f64).sqrt();
    }
    v
}

/// Normalized even cat column.
pub fn cat_plus_vec(alpha: C64, n: usize) -> Array1<C64> {
    let norm = (2.0 + 2.0 * (-2.0 * alpha.norm_sqr()).exp()).sqrt();
    let v = coherent_vec(alpha, n) + coherent_vec(-alpha, n);
    v.mapv(|z| z / norm)
}

/// Density matrix of a pure state.
pub fn pure_density(psi: &Array1<C64>) -> Array2<C64> {
    let n = psi.len();
    let mut rho = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            rho[[i, j]] = psi[i] * psi[j].conj();
        }
    }
    rho
}

pub fn trace(m: &Array2<C64>) -> C64 {
    m.diag().sum()
}

/// Symmetric-order characteristic function `Tr[rho D(lambda)]` by matrix
/// exponential.
pub fn characteristic_oracle(rho: &Array2<C64>, lambda: C64) -> C64 {
    trace(&rho.dot(&displacement(lambda, rho.nrows())))
}

/// `W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(-alpha)]` by matrix exponential.
pub fn wigner_point_oracle(rho: &Array2<C64>, alpha: C64) -> f64 {
    let n = rho.nrows();
    let d = displacement(alpha, n);
    let ddag = d.t().mapv(|z| z.conj()).to_owned();
    let mut parity = Array2::<C64>::zeros((n, n));
    for k in 0..n {
        parity[[k, k]] = C64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    let t = d.dot(&parity).dot(&ddag);
    std::f64::consts::FRAC_2_PI * trace(&rho.dot(&t)).re
}
