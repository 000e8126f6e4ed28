//! Shared inputs for the criterion benches.

use num_complex::Complex64 as C64;
use ppnc_core::states::{CaseLabel, TwoModeInput};

/// Fig-1 style cat input at desk-scale amplitude.
pub fn cat_input() -> TwoModeInput {
    let a = C64::from_polar(2.0_f64.sqrt(), std::f64::consts::FRAC_PI_3);
    TwoModeInput::from_case(CaseLabel::V, a, C64::new(0.0, 0.0))
}

/// Fig-1 caption amplitude.
pub fn figure_input() -> TwoModeInput {
    let a = C64::from_polar(12.0_f64.sqrt(), std::f64::consts::FRAC_PI_3);
    TwoModeInput::from_case(CaseLabel::V, a, C64::new(0.0, 0.0))
}
