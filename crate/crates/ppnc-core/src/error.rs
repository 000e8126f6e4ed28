//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Grating order must be odd and nonzero (even orders vanish for a 50%
    /// duty cycle and indicate user error).
    #[error("quasi-phase-matching order must be odd and nonzero, got {0}")]
    EvenOrder(i32),

    #[error("invalid nonlinear process: {0}")]
    InvalidProcess(String),

    /// Coupling ratio g2/g1 is undefined when g1 = 0.
    #[error("coupling ratio undefined: first process has zero effective coupling")]
    ZeroDivisor,

    #[error("invalid coupling configuration: {0}")]
    InvalidConfig(String),

    /// The closed-form coefficients divide by x1^2 - x2^2; near gamma = 1 the
    /// confluent branch must be used instead.
    #[error("exponents degenerate (|x1^2 - x2^2| = {0:.3e}); use the confluent branch")]
    DegenerateExponents(f64),

    #[error("invalid integration step {step:.3e} for zeta = {zeta:.3e}")]
    InvalidStep { step: f64, zeta: f64 },

    /// Propagator coefficients fail the commutator-preservation identities.
    #[error("propagator violates commutator preservation (max defect {0:.3e})")]
    IllConditionedPropagator(f64),

    #[error("invalid phase-space grid: {0}")]
    InvalidGrid(String),

    /// Characteristic function has not decayed below 1e-12 at the edge of the
    /// requested integration box.
    #[error(
        "characteristic function is {max_boundary:.3e} at the beta-box boundary \
         (extent {extent}); enlarge --beta-extent"
    )]
    InsufficientBetaExtent { extent: f64, max_boundary: f64 },

    /// The Gaussian quadratic form of the closed-form path is not positive
    /// definite; signals a degenerate propagator, not a user error.
    #[error("beta-integrand quadratic form not positive definite (det = {0:.3e})")]
    NonPositiveDefiniteForm(f64),

    /// Fringe visibility is undefined for single-lobed fields.
    #[error("fringe visibility undefined: fewer than two lobes found")]
    NoLobesFound,

    /// Wigner field imaginary residue exceeded tolerance; internal
    /// consistency failure rather than silent truncation.
    #[error("imaginary residue {0:.3e} of Wigner construction exceeds 1e-9")]
    ImaginaryResidue(f64),

    #[error("Fock cutoff {cutoff} too small for amplitude |alpha|^2 = {nbar:.2} (need >= {needed})")]
    CutoffTooSmall {
        cutoff: usize,
        nbar: f64,
        needed: usize,
    },

    /// Population reached the truncation edge during Fock evolution.
    #[error("Fock-space cutoff leakage {leakage:.3e} exceeds 1e-8")]
    CutoffLeakage { leakage: f64 },

    #[error("invalid Fock configuration: {0}")]
    InvalidFockConfig(String),
}
