//! Initial-state catalog: coherent, vacuum and even ("+") Schroedinger-cat
//! states, represented uniformly as finite weighted sums of coherent dyadics
//! `|a_i><a_j|`. All downstream phase-space math consumes only the dyadic
//! expansion, so ket phase conventions never enter.

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Kind tag of a single-mode input state. Only the even cat appears in the
/// catalog; the tag leaves a seam for an odd cat without implementing one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Vacuum,
    Coherent,
    CatPlus,
}

/// A single-mode input state with its amplitude (ignored for vacuum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub kind: StateKind,
    pub amplitude: C64,
}

/// One term `weight * |left><right|` of a dyadic expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicTerm {
    pub weight: C64,
    pub left: C64,
    pub right: C64,
}

impl DyadicTerm {
    /// Overlap `<right|left>` of the two coherent labels.
    pub fn trace(&self) -> C64 {
        coherent_overlap(self.right, self.left)
    }
}

/// `<b|a>` for coherent states.
pub fn coherent_overlap(b: C64, a: C64) -> C64 {
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + b.conj() * a).exp()
}

/// Normalization constant `N = 2 + 2 exp(-2 |a0|^2)` of the even cat
/// `(|a0> + |-a0>)/sqrt(N)`.
pub fn cat_norm(alpha0: C64) -> f64 {
    2.0 + 2.0 * (-2.0 * alpha0.norm_sqr()).exp()
}

impl ModeState {
    pub fn vacuum() -> Self {
        Self { kind: StateKind::Vacuum, amplitude: C64::new(0.0, 0.0) }
    }

    pub fn coherent(alpha: C64) -> Self {
        Self { kind: StateKind::Coherent, amplitude: alpha }
    }

    pub fn cat_plus(alpha0: C64) -> Self {
        Self { kind: StateKind::CatPlus, amplitude: alpha0 }
    }

    /// Largest coherent-label magnitude in the dyadic expansion.
    pub fn max_amplitude(&self) -> f64 {
        match self.kind {
            StateKind::Vacuum => 0.0,
            _ => self.amplitude.norm(),
        }
    }

    /// Density-operator expansion over coherent dyadics. The list is
    /// Hermitian-closed and has unit trace.
    pub fn dyadics(&self) -> Vec<DyadicTerm> {
        let one = C64::new(1.0, 0.0);
        match self.kind {
            StateKind::Vacuum => vec![DyadicTerm {
                weight: one,
                left: C64::new(0.0, 0.0),
                right: C64::new(0.0, 0.0),
            }],
            StateKind::Coherent => vec![DyadicTerm {
                weight: one,
                left: self.amplitude,
                right: self.amplitude,
            }],
            StateKind::CatPlus => {
                let a = self.amplitude;
                let w = C64::new(1.0 / cat_norm(a), 0.0);
                vec![
                    DyadicTerm { weight: w, left: a, right: a },
                    DyadicTerm { weight: w, left: -a, right: -a },
                    DyadicTerm { weight: w, left: a, right: -a },
                    DyadicTerm { weight: w, left: -a, right: a },
                ]
            }
        }
    }

    /// Symmetric-order characteristic function
    /// `chi(lambda) = Tr[rho exp(lambda a+ - lambda* a)]`,
    /// summed term-by-term over the dyadic expansion.
    pub fn characteristic(&self, lambda: C64) -> C64 {
        self.dyadics()
            .iter()
            .map(|t| t.weight * dyadic_characteristic(t.left, t.right, lambda))
            .sum()
    }
}

/// `<right| D(lambda) |left>` for coherent labels, from the displacement
/// composition law:
/// `exp(-|l|^2/2 + l r* - l* lambda + r* lambda + r* l - (|l|^2+|r|^2)/2)`.
pub fn dyadic_characteristic(left: C64, right: C64, lambda: C64) -> C64 {
    (-0.5 * lambda.norm_sqr() + lambda * right.conj() - lambda.conj() * left
        + right.conj() * left
        - 0.5 * (left.norm_sqr() + right.norm_sqr()))
    .exp()
}

/// The nine input combinations of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::I,
        CaseLabel::II,
        CaseLabel::III,
        CaseLabel::IV,
        CaseLabel::V,
        CaseLabel::VI,
        CaseLabel::VII,
        CaseLabel::VIII,
        CaseLabel::IX,
    ];

    /// State kinds (mode 1, mode 3) for this case.
    pub fn kinds(&self) -> (StateKind, StateKind) {
        use StateKind::*;
        match self {
            CaseLabel::I => (Coherent, Coherent),
            CaseLabel::II => (Coherent, Vacuum),
            CaseLabel::III => (Vacuum, Coherent),
            CaseLabel::IV => (Vacuum, Vacuum),
            CaseLabel::V => (CatPlus, Vacuum),
            CaseLabel::VI => (Vacuum, CatPlus),
            CaseLabel::VII => (CatPlus, Coherent),
            CaseLabel::VIII => (Coherent, CatPlus),
            CaseLabel::IX => (CatPlus, CatPlus),
        }
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(CaseLabel::I),
            "II" | "2" => Ok(CaseLabel::II),
            "III" | "3" => Ok(CaseLabel::III),
            "IV" | "4" => Ok(CaseLabel::IV),
            "V" | "5" => Ok(CaseLabel::V),
            "VI" | "6" => Ok(CaseLabel::VI),
            "VII" | "7" => Ok(CaseLabel::VII),
            "VIII" | "8" => Ok(CaseLabel::VIII),
            "IX" | "9" => Ok(CaseLabel::IX),
            other => Err(format!("unknown case label '{other}'")),
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::V => "V",
            CaseLabel::VI => "VI",
            CaseLabel::VII => "VII",
            CaseLabel::VIII => "VIII",
            CaseLabel::IX => "IX",
        };
        f.write_str(s)
    }
}

/// Product input state of the two signal modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInput {
    pub mode1: ModeState,
    pub mode3: ModeState,
    pub case_label: Option<CaseLabel>,
}

impl TwoModeInput {
    pub fn new(mode1: ModeState, mode3: ModeState) -> Self {
        Self { mode1, mode3, case_label: None }
    }

    /// Builds a catalog case; amplitudes are ignored where the case
    /// prescribes vacuum.
    pub fn from_case(case: CaseLabel, alpha1: C64, alpha3: C64) -> Self {
        let make = |kind: StateKind, alpha: C64| match kind {
            StateKind::Vacuum => ModeState::vacuum(),
            StateKind::Coherent => ModeState::coherent(alpha),
            StateKind::CatPlus => ModeState::cat_plus(alpha),
        };
        let (k1, k3) = case.kinds();
        Self {
            mode1: make(k1, alpha1),
            mode3: make(k3, alpha3),
            case_label: Some(case),
        }
    }

    /// Checks label/state consistency.
    pub fn validate(&self) -> Result<()> {
        if let Some(label) = self.case_label {
            let (k1, k3) = label.kinds();
            if self.mode1.kind != k1 || self.mode3.kind != k3 {
                return Err(Error::InvalidConfig(format!(
                    "case {label} requires kinds {:?}, got ({:?}, {:?})",
                    label.kinds(),
                    self.mode1.kind,
                    self.mode3.kind
                )));
            }
        }
        Ok(())
    }

    pub fn max_amplitude(&self) -> f64 {
        self.mode1.max_amplitude().max(self.mode3.max_amplitude())
    }
}
