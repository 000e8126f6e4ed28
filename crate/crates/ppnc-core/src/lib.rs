//! Propagation of quantum states of light through the two cascaded
//! quasi-phase-matched processes of a periodically poled nonlinear crystal
//! (degenerate down-conversion `2w -> w + w` and sum-frequency generation
//! `2w + w -> 3w`) under an undepleted classical pump at `2w`.
//!
//! The pump substitution makes the Heisenberg equations linear, so the
//! input-output map is a two-mode Bogoliubov transformation. On top of it the
//! crate evaluates reduced Wigner quasi-probability functions of both output
//! modes for coherent, vacuum and even-cat inputs, by two algebraically
//! independent routes, with a truncated Fock-space simulation as a third,
//! brute-force reference.
//!
//! Conventions used throughout: `alpha = x + i p`, `d^2 alpha = dx dp`,
//! `Int W d^2 alpha = 1`, vacuum `W(alpha) = (2/pi) exp(-2|alpha|^2)`.

pub mod error;
pub mod fock;
pub mod propagator;
pub mod qpm;
pub mod states;
pub mod wigner;

pub use error::Error;
pub use propagator::{CouplingConfig, Exponents, PropagatorCoeffs};
pub use states::{CaseLabel, DyadicTerm, ModeState, TwoModeInput};
pub use wigner::{Mode, PhaseSpaceGrid, WignerField};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
