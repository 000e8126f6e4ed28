//! Linear (Bogoliubov) input-output map of the pump-linearized cascade.
//!
//! With the pump replaced by the c-number `A2 exp(i phi2)` the Heisenberg
//! equations close on the vector `v = (a1, a1+, a3, a3+)`:
//!
//! ```text
//!   d a1 / d zeta = -2i e^{ i phi2} a1+  -  i gamma e^{-i phi2} a3
//!   d a3 / d zeta = -i gamma e^{ i phi2} a1
//! ```
//!
//! (plus Hermitian conjugates), i.e. `dv/d zeta = G v` with a constant 4x4
//! generator. The output operators are
//!
//! ```text
//!   a1(zeta) = k1 a1 + k2 a1+ + k3 a3 + k4 a3+
//!   a3(zeta) = m1 a1 + m2 a1+ + m3 a3 + m4 a3+
//! ```
//!
//! The closed form below is re-derived from the generator via its minimal
//! polynomial (eigenvalues +-x1, +-x2 with `x12 = 1 +- sqrt(1 - gamma^2)`),
//! not copied from any printed table. All denominators reduce to
//! `x1^2 - x2^2 = 4 sqrt(1 - gamma^2)`, so the only numerically delicate
//! regime is gamma -> 1, handled by the confluent branch which is analytic
//! in `1 - gamma^2`. gamma > 1 works through complex exponents (oscillatory
//! regime).

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Switch to the confluent branch when |x1^2 - x2^2| falls below this;
/// keeps relative cancellation error in the 1/(x1^2 - x2^2) prefactors
/// below ~1e-9 in double precision.
pub const DEGENERACY_THRESHOLD: f64 = 1e-6;

/// Normalized interaction parameters.
///
/// `zeta = z A2 g1` is the normalized length (pump amplitude absorbed),
/// `gamma = g2/g1` the coupling ratio, `phi2` the pump phase in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    pub zeta: f64,
    pub gamma: f64,
    pub phi2: f64,
}

impl CouplingConfig {
    pub fn new(zeta: f64, gamma: f64, phi2: f64) -> Result<Self> {
        if !zeta.is_finite() || !gamma.is_finite() || !phi2.is_finite() {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        if gamma < 0.0 {
            return Err(Error::InvalidConfig(format!("gamma must be >= 0, got {gamma}")));
        }
        Ok(Self { zeta, gamma, phi2 })
    }
}

/// Characteristic exponents `x1,2 = 1 +- sqrt(1 - gamma^2)`.
///
/// Satisfy `x1 + x2 = 2` and `x1 x2 = gamma^2`; complex (principal root)
/// for gamma > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    pub x1: C64,
    pub x2: C64,
}

pub fn exponents(gamma: f64) -> Exponents {
    let s = C64::new(1.0 - gamma * gamma, 0.0).sqrt();
    Exponents {
        x1: C64::new(1.0, 0.0) + s,
        x2: C64::new(1.0, 0.0) - s,
    }
}

/// The eight Bogoliubov coefficients at a given (zeta, gamma, phi2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorCoeffs {
    pub k1: C64,
    pub k2: C64,
    pub k3: C64,
    pub k4: C64,
    pub m1: C64,
    pub m2: C64,
    pub m3: C64,
    pub m4: C64,
}

/// Commutator-preservation defects of a coefficient set.
///
/// `d11` and `d33` are the signed deviations of [a1, a1+] and [a3, a3+]
/// from 1; `d13` and `e13` are the moduli of [a1(zeta), a3+(zeta)] and
/// [a1(zeta), a3(zeta)], which must vanish. The last two are required by
/// symplecticity even though no printed identity lists them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorDefects {
    pub d11: f64,
    pub d33: f64,
    pub d13: f64,
    pub e13: f64,
}

impl CommutatorDefects {
    pub fn max_abs(&self) -> f64 {
        self.d11.abs().max(self.d33.abs()).max(self.d13).max(self.e13)
    }
}

impl PropagatorCoeffs {
    /// Identity map (zeta = 0).
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self {
            k1: one,
            k2: zero,
            k3: zero,
            k4: zero,
            m1: zero,
            m2: zero,
            m3: one,
            m4: zero,
        }
    }

    /// Full 4x4 transfer matrix on (a1, a1+, a3, a3+); rows 2 and 4 follow
    /// from Hermitian conjugation of rows 1 and 3.
    pub fn matrix(&self) -> [[C64; 4]; 4] {
        [
            [self.k1, self.k2, self.k3, self.k4],
            [self.k2.conj(), self.k1.conj(), self.k4.conj(), self.k3.conj()],
            [self.m1, self.m2, self.m3, self.m4],
            [self.m2.conj(), self.m1.conj(), self.m4.conj(), self.m3.conj()],
        ]
    }

    /// Extracts rows 1 and 3 of a transfer matrix.
    pub fn from_matrix(m: &[[C64; 4]; 4]) -> Self {
        Self {
            k1: m[0][0],
            k2: m[0][1],
            k3: m[0][2],
            k4: m[0][3],
            m1: m[2][0],
            m2: m[2][1],
            m3: m[2][2],
            m4: m[2][3],
        }
    }

    /// Map for `zeta_a + zeta_b` given the maps for each leg (constant
    /// generator, so the family is a semigroup under matrix product).
    pub fn compose(after: &Self, before: &Self) -> Self {
        let a = after.matrix();
        let b = before.matrix();
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in a.iter().enumerate() {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for (l, alv) in row.iter().enumerate() {
                    acc += alv * b[l][j];
                }
                out[i][j] = acc;
            }
        }
        Self::from_matrix(&out)
    }

    pub fn as_array(&self) -> [C64; 8] {
        [self.k1, self.k2, self.k3, self.k4, self.m1, self.m2, self.m3, self.m4]
    }
}

/// The constant 4x4 generator G with dv/d zeta = G v.
pub fn generator(gamma: f64, phi2: f64) -> [[C64; 4]; 4] {
    let i = C64::i();
    let p = C64::from_polar(1.0, phi2);
    let z = C64::new(0.0, 0.0);
    let g = gamma;
    [
        [z, -2.0 * i * p, -i * g * p.conj(), z],
        [2.0 * i * p.conj(), z, z, i * g * p],
        [-i * g * p, z, z, z],
        [z, i * g * p.conj(), z, z],
    ]
}

/// sinh(w)/w, series for small |w|.
fn sinhc(w: C64) -> C64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        C64::new(1.0, 0.0) + w2 / 6.0 * (C64::new(1.0, 0.0) + w2 / 20.0)
    } else {
        w.sinh() / w
    }
}

/// Closed-form coefficients away from the confluent point.
///
/// Requires |x1^2 - x2^2| above [`DEGENERACY_THRESHOLD`]; the identity
/// `x1 x2 = gamma^2` has been used to clear every other denominator, so the
/// expressions below are regular at gamma = 0.
pub fn coeffs_closed_form(c: &CouplingConfig) -> Result<PropagatorCoeffs> {
    let Exponents { x1, x2 } = exponents(c.gamma);
    let d = x1 * x1 - x2 * x2;
    if d.norm() <= DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateExponents(d.norm()));
    }
    let g = C64::new(c.gamma, 0.0);
    let g2 = g * g;
    let i = C64::i();
    let p = C64::from_polar(1.0, c.phi2);
    let zeta = C64::new(c.zeta, 0.0);

    let ch1 = (x1 * zeta).cosh();
    let ch2 = (x2 * zeta).cosh();
    let sh1 = (x1 * zeta).sinh();
    let sh2 = (x2 * zeta).sinh();

    let k1 = ((x1 * x1 + g2) * ch1 - (x2 * x2 + g2) * ch2) / d;
    let k2 = -2.0 * i * p * (x1 * sh1 - x2 * sh2) / d;
    let k3 = -2.0 * i * g * p.conj() * (sh1 - sh2) / d;
    let k4 = 2.0 * g * p * p * (ch1 - ch2) / d;
    let m1 = -2.0 * i * g * p * (sh1 - sh2) / d;
    let m2 = -2.0 * g * p * p * (ch1 - ch2) / d;
    let m3 = ((x1 * x1 + g2) * ch2 - (x2 * x2 + g2) * ch1) / d;
    let m4 = -2.0 * i * p * p * p * (x2 * sh1 - x1 * sh2) / d;

    Ok(PropagatorCoeffs { k1, k2, k3, k4, m1, m2, m3, m4 })
}

/// Confluent (gamma -> 1) form of the coefficients.
///
/// Writing `eps = sqrt(1 - gamma^2)`, every coefficient reduces to a
/// combination of `cosh zeta`, `sinh zeta`, `cosh(eps zeta)` and
/// `sinh(eps zeta)/eps`, all analytic in `eps^2`, so this branch is stable
/// arbitrarily close to (and at) the confluent point. At eps = 0 the
/// familiar secular `(a + b zeta) e^{+-zeta}` terms emerge.
pub fn coeffs_degenerate(c: &CouplingConfig) -> PropagatorCoeffs {
    let eps = C64::new(1.0 - c.gamma * c.gamma, 0.0).sqrt();
    let g = C64::new(c.gamma, 0.0);
    let i = C64::i();
    let p = C64::from_polar(1.0, c.phi2);
    let zeta = c.zeta;

    let ch = C64::new(zeta.cosh(), 0.0);
    let sh = C64::new(zeta.sinh(), 0.0);
    let ce = (eps * zeta).cosh();
    // sinh(eps zeta)/eps = zeta * sinhc(eps zeta)
    let sc = zeta * sinhc(eps * zeta);

    PropagatorCoeffs {
        k1: ch * ce + sh * sc,
        k2: -i * p * (sh * ce + ch * sc),
        k3: -i * g * p.conj() * ch * sc,
        k4: g * p * p * sh * sc,
        m1: -i * g * p * ch * sc,
        m2: -g * p * p * sh * sc,
        m3: ch * ce - sh * sc,
        m4: -i * p * p * p * (ch * sc - sh * ce),
    }
}

/// Coefficients at arbitrary (zeta, gamma, phi2), dispatching between the
/// closed form and the confluent branch.
pub fn coeffs(c: &CouplingConfig) -> PropagatorCoeffs {
    match coeffs_closed_form(c) {
        Ok(p) => p,
        Err(_) => coeffs_degenerate(c),
    }
}

/// In-repo oracle: integrates the 4x4 fundamental system `d Phi/d zeta = G Phi`,
/// `Phi(0) = 1`, with the classical fourth-order Runge-Kutta scheme at fixed
/// step. Global error O(step^4).
pub fn coeffs_ode(c: &CouplingConfig, step: f64) -> Result<PropagatorCoeffs> {
    if !(step.is_finite() && step > 0.0) || (c.zeta > 0.0 && step > c.zeta) {
        return Err(Error::InvalidStep { step, zeta: c.zeta });
    }
    let gen = generator(c.gamma, c.phi2);

    let mat_mul = |a: &[[C64; 4]; 4], b: &[[C64; 4]; 4]| -> [[C64; 4]; 4] {
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for (l, bl) in b.iter().enumerate() {
                    acc += a[i][l] * bl[j];
                }
                out[i][j] = acc;
            }
        }
        out
    };
    let axpy = |y: &mut [[C64; 4]; 4], a: f64, x: &[[C64; 4]; 4]| {
        for i in 0..4 {
            for j in 0..4 {
                y[i][j] += a * x[i][j];
            }
        }
    };

    let mut phi = [[C64::new(0.0, 0.0); 4]; 4];
    for (i, row) in phi.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }

    if c.zeta == 0.0 {
        return Ok(PropagatorCoeffs::from_matrix(&phi));
    }

    let n_steps = (c.zeta / step).ceil() as usize;
    let h = c.zeta / n_steps as f64;
    for _ in 0..n_steps {
        let k1 = mat_mul(&gen, &phi);
        let mut t = phi;
        axpy(&mut t, h / 2.0, &k1);
        let k2 = mat_mul(&gen, &t);
        let mut t = phi;
        axpy(&mut t, h / 2.0, &k2);
        let k3 = mat_mul(&gen, &t);
        let mut t = phi;
        axpy(&mut t, h, &k3);
        let k4 = mat_mul(&gen, &t);
        axpy(&mut phi, h / 6.0, &k1);
        axpy(&mut phi, h / 3.0, &k2);
        axpy(&mut phi, h / 3.0, &k3);
        axpy(&mut phi, h / 6.0, &k4);
    }
    Ok(PropagatorCoeffs::from_matrix(&phi))
}

/// Default ODE-oracle step: `zeta / ceil(zeta / 1e-3)`, i.e. ~1e-3, giving
/// global error around 1e-12 at desk scale.
pub fn default_ode_step(zeta: f64) -> f64 {
    if zeta <= 0.0 {
        1e-3
    } else {
        zeta / (zeta / 1e-3).ceil()
    }
}

/// Commutator defects of a coefficient set; see [`CommutatorDefects`].
pub fn commutator_defects(p: &PropagatorCoeffs) -> CommutatorDefects {
    let n = |z: C64| z.norm_sqr();
    let d11 = n(p.k1) - n(p.k2) + n(p.k3) - n(p.k4) - 1.0;
    let d33 = n(p.m1) - n(p.m2) + n(p.m3) - n(p.m4) - 1.0;
    let d13 = (p.k1 * p.m1.conj() - p.k2 * p.m2.conj() + p.k3 * p.m3.conj()
        - p.k4 * p.m4.conj())
    .norm();
    let e13 =
        (p.k1 * p.m2 - p.k2 * p.m1 + p.k3 * p.m4 - p.k4 * p.m3).norm();
    CommutatorDefects { d11, d33, d13, e13 }
}
