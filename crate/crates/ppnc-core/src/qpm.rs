//! Quasi-phase-matching bookkeeping: residual mismatches of the two cascaded
//! processes and the effective couplings entering the averaged Hamiltonian.
//!
//! Everything here is dimensionless except wave numbers (rad/m) and the
//! grating period (m). Conversion of the bare coupling to physical units
//! (pump amplitude, d_eff) is the caller's responsibility; the propagator
//! depends only on the normalized quantities (zeta, gamma, phi2).

use crate::{Error, Result};

/// One quasi-phase-matched nonlinear interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearProcess {
    /// Bulk phase mismatch Delta k of the process, rad/m.
    pub delta_k_bulk: f64,
    /// Modulus of the grating vector, G = 2 pi / period, rad/m.
    pub grating_modulus: f64,
    /// Poling period Lambda, m.
    pub period: f64,
    /// Quasi-phase-matching order m = +-1, +-3, ...
    pub order: i32,
    /// Bare nonlinear coupling xi, normalized units.
    pub bare_coupling: f64,
}

impl NonlinearProcess {
    /// Builds a process from its period; the grating modulus is derived.
    pub fn from_period(delta_k_bulk: f64, period: f64, order: i32, bare_coupling: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidProcess(format!("period must be positive, got {period}")));
        }
        let p = Self {
            delta_k_bulk,
            grating_modulus: 2.0 * std::f64::consts::PI / period,
            period,
            order,
            bare_coupling,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks the type invariants.
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order % 2 == 0 {
            return Err(Error::EvenOrder(self.order));
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::InvalidProcess(format!(
                "period must be positive, got {}",
                self.period
            )));
        }
        let gp = self.grating_modulus * self.period;
        let two_pi = 2.0 * std::f64::consts::PI;
        if ((gp - two_pi) / two_pi).abs() > 1e-12 {
            return Err(Error::InvalidProcess(format!(
                "grating_modulus * period = {gp} is not 2 pi"
            )));
        }
        if !self.delta_k_bulk.is_finite() || !self.bare_coupling.is_finite() {
            return Err(Error::InvalidProcess("non-finite field".into()));
        }
        Ok(())
    }
}

/// Residual mismatch delta k = Delta k + m G of a valid process, rad/m.
pub fn residual_mismatch(p: &NonlinearProcess) -> f64 {
    p.delta_k_bulk + f64::from(p.order) * p.grating_modulus
}

/// Effective coupling g = 2 xi / (pi m); the order-m Fourier coefficient of
/// the 50% duty-cycle poling function. Sign is carried by the order.
pub fn effective_coupling(p: &NonlinearProcess) -> f64 {
    2.0 * p.bare_coupling / (std::f64::consts::PI * f64::from(p.order))
}

/// Ratio gamma = g2/g1 of the sum-frequency to down-conversion couplings.
pub fn coupling_ratio(p1: &NonlinearProcess, p2: &NonlinearProcess) -> Result<f64> {
    let g1 = effective_coupling(p1);
    if g1 == 0.0 {
        return Err(Error::ZeroDivisor);
    }
    Ok(effective_coupling(p2) / g1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn process(delta_k: f64, period: f64, order: i32, xi: f64) -> NonlinearProcess {
        NonlinearProcess::from_period(delta_k, period, order, xi).unwrap()
    }

    #[test]
    fn first_order_matching_cancels_bulk_mismatch() {
        // Period chosen so the first-order grating vector cancels the bulk
        // mismatch: G = 2 pi / 32e-6 = 1.9635e5 rad/m.
        let g = 2.0 * std::f64::consts::PI / 32e-6;
        let p = process(-g, 32e-6, 1, 1.0);
        assert!(residual_mismatch(&p).abs() < 1e-6 * g.abs());
    }

    #[test]
    fn zero_bulk_mismatch_leaves_pure_grating_offset() {
        let p = process(0.0, 10e-6, 1, 1.0);
        assert_eq!(residual_mismatch(&p), p.grating_modulus);
    }

    #[test]
    fn third_order_matching_by_construction() {
        let p = process(0.0, 10e-6, 3, 1.0);
        let p = NonlinearProcess {
            delta_k_bulk: -3.0 * p.grating_modulus,
            ..p
        };
        assert!(residual_mismatch(&p).abs() < 1e-9 * p.grating_modulus);
    }

    #[test]
    fn effective_coupling_first_and_third_order() {
        let p1 = process(0.0, 10e-6, 1, 1.0);
        let p3 = process(0.0, 10e-6, 3, 1.0);
        assert!((effective_coupling(&p1) - 0.636_619_772_367_581_3).abs() < 1e-15);
        assert!((effective_coupling(&p3) - 0.212_206_590_789_193_77).abs() < 1e-15);
        let p0 = process(0.0, 10e-6, 5, 0.0);
        assert_eq!(effective_coupling(&p0), 0.0);
    }

    #[test]
    fn coupling_ratio_examples() {
        let p = |xi: f64, m: i32| process(0.0, 10e-6, m, xi);
        assert!((coupling_ratio(&p(1.3, 1), &p(1.3, 1)).unwrap() - 1.0).abs() < 1e-15);
        assert!((coupling_ratio(&p(1.0, 1), &p(0.9, 1)).unwrap() - 0.9).abs() < 1e-15);
        assert!((coupling_ratio(&p(1.0, 1), &p(1.0, 3)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            coupling_ratio(&p(0.0, 1), &p(1.0, 1)),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn even_or_zero_orders_rejected() {
        assert!(NonlinearProcess::from_period(0.0, 1e-5, 2, 1.0).is_err());
        assert!(NonlinearProcess::from_period(0.0, 1e-5, 0, 1.0).is_err());
        assert!(NonlinearProcess::from_period(0.0, -1e-5, 1, 1.0).is_err());
    }

    #[test]
    fn coupling_is_odd_in_order() {
        for m in [1i32, 3, 5, 9] {
            let plus = process(0.0, 1e-5, m, 0.7);
            let minus = process(0.0, 1e-5, -m, 0.7);
            assert_eq!(effective_coupling(&plus), -effective_coupling(&minus));
        }
    }
}
