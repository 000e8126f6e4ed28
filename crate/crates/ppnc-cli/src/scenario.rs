//! Scenario resolution and execution: one fully-specified run description,
//! evaluated to Wigner fields, metric records and output files.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;

use ppnc_core::fock::{evolve_state, oracle_wigner, required_cutoff, FockConfig};
use ppnc_core::propagator::{coeffs, CouplingConfig, PropagatorCoeffs};
use ppnc_core::states::{CaseLabel, ModeState, StateKind, TwoModeInput};
use ppnc_core::wigner::{
    fringe_visibility, negativity_volume, wigner_gaussian_sum_path, wigner_transform_path, Mode,
    PhaseSpaceGrid, WignerField,
};
use ppnc_core::Error as CoreError;

use crate::output::{self, Metrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Gaussian,
    Transform,
    Fock,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(Method::Gaussian),
            "transform" => Ok(Method::Transform),
            "fock" => Ok(Method::Fock),
            other => Err(format!("unknown method '{other}' (gaussian|transform|fock)")),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Gaussian => "gaussian",
            Method::Transform => "transform",
            Method::Fock => "fock",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSelect {
    One,
    Three,
    Both,
}

impl std::str::FromStr for ModeSelect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "mode1" | "1" => Ok(ModeSelect::One),
            "mode3" | "3" => Ok(ModeSelect::Three),
            "both" => Ok(ModeSelect::Both),
            other => Err(format!("unknown mode '{other}' (mode1|mode3|both)")),
        }
    }
}

impl ModeSelect {
    pub fn modes(&self) -> Vec<Mode> {
        match self {
            ModeSelect::One => vec![Mode::Mode1],
            ModeSelect::Three => vec![Mode::Mode3],
            ModeSelect::Both => vec![Mode::Mode1, Mode::Mode3],
        }
    }
}

/// Fully-resolved run description.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub input: TwoModeInput,
    pub zeta: f64,
    pub gamma: f64,
    pub phi2: f64,
    pub mode: ModeSelect,
    pub grid: PhaseSpaceGrid,
    pub method: Method,
    pub beta_extent: f64,
    pub out_dir: PathBuf,
    pub write_csv: bool,
    pub write_pgm: bool,
    pub write_metrics: bool,
    /// Allow Fock runs above the default oracle amplitude bound.
    pub force: bool,
    pub cutoff1: Option<usize>,
    pub cutoff3: Option<usize>,
}

/// Largest |alpha|^2 the Fock method accepts without --force.
pub const FOCK_AMPLITUDE_BOUND: f64 = 4.0;

pub struct FieldResult {
    pub metrics: Metrics,
    pub files: Vec<PathBuf>,
}

impl Scenario {
    pub fn coupling(&self) -> anyhow::Result<CouplingConfig> {
        Ok(CouplingConfig::new(self.zeta, self.gamma, self.phi2)?)
    }

    fn case_name(&self) -> String {
        match self.input.case_label {
            Some(c) => c.to_string(),
            None => "custom".to_string(),
        }
    }

    fn file_stem(&self, mode: Mode) -> String {
        format!("wigner_{}_{}", self.case_name(), mode)
    }

    /// Computes one mode's field by the configured method.
    pub fn compute_field(&self, mode: Mode, p: &PropagatorCoeffs) -> anyhow::Result<WignerField> {
        match self.method {
            Method::Gaussian => {
                match wigner_gaussian_sum_path(mode, &self.grid, p, &self.input) {
                    Ok(w) => Ok(w),
                    // degenerate quadratic form: fall back to the sampled
                    // transform, which does not invert it
                    Err(CoreError::NonPositiveDefiniteForm(_)) => {
                        eprintln!(
                            "note: beta quadratic form degenerate; falling back to transform path"
                        );
                        Ok(self.transform_with_retry(mode, p)?)
                    }
                    Err(e) => Err(e.into()),
                }
            }
            Method::Transform => Ok(self.transform_with_retry(mode, p)?),
            Method::Fock => self.fock_field(mode),
        }
    }

    /// Transform path with automatic extent doubling while the boundary
    /// decay check fails (at most four doublings, deterministic).
    fn transform_with_retry(
        &self,
        mode: Mode,
        p: &PropagatorCoeffs,
    ) -> ppnc_core::Result<WignerField> {
        let mut extent = self.beta_extent;
        for _ in 0..4 {
            match wigner_transform_path(mode, &self.grid, p, &self.input, extent) {
                Err(CoreError::InsufficientBetaExtent { .. }) => {
                    eprintln!(
                        "note: |chi| not decayed at beta extent {extent}; retrying at {}",
                        2.0 * extent
                    );
                    extent *= 2.0;
                }
                other => return other,
            }
        }
        wigner_transform_path(mode, &self.grid, p, &self.input, extent)
    }

    fn fock_field(&self, mode: Mode) -> anyhow::Result<WignerField> {
        let nbar1 = self.input.mode1.max_amplitude().powi(2);
        let nbar3 = self.input.mode3.max_amplitude().powi(2);
        if nbar1.max(nbar3) > FOCK_AMPLITUDE_BOUND && !self.force {
            anyhow::bail!(
                "fock method limited to |alpha|^2 <= {FOCK_AMPLITUDE_BOUND} (got {:.2}); \
                 pass --force to override",
                nbar1.max(nbar3)
            );
        }
        // Truncation must hold the squeezed output, not just the input;
        // start from an amplification-aware guess and grow on leakage.
        let amp = (2.0 * self.zeta).exp();
        let mut c1 = self
            .cutoff1
            .unwrap_or_else(|| (required_cutoff(nbar1) as f64 * amp).ceil() as usize);
        let mut c3 = self
            .cutoff3
            .unwrap_or_else(|| (required_cutoff(nbar3) as f64 * (1.0 + self.gamma * amp)).ceil()
                as usize);
        let mut last_err: Option<CoreError> = None;
        for _ in 0..4 {
            let cfg = FockConfig::new(c1, c3, self.zeta, self.gamma, self.phi2)?;
            match evolve_state(&self.input, &cfg) {
                Ok(state) => return Ok(oracle_wigner(&state, mode, &self.grid)),
                Err(e @ CoreError::CutoffLeakage { .. }) => {
                    eprintln!("note: {e}; retrying with cutoffs {} x {}", c1 * 3 / 2, c3 * 3 / 2);
                    c1 = c1 * 3 / 2;
                    c3 = c3 * 3 / 2;
                    last_err = Some(e);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Err(last_err.unwrap().into())
    }

    fn metrics_for(&self, w: &WignerField) -> Metrics {
        let visibility = fringe_visibility(w).ok();
        let (lo, hi) = (w.min(), w.max());
        Metrics {
            case: self.input.case_label.map(|c| c.to_string()),
            mode: w.mode_label.to_string(),
            method: self.method.to_string(),
            zeta: self.zeta,
            gamma: self.gamma,
            phi2: self.phi2,
            negativity_volume: negativity_volume(w),
            fringe_visibility: visibility,
            normalization_defect: w.normalization_defect,
            min: lo,
            max: hi,
            argmin: {
                let (x, p) = w.argmin();
                [x, p]
            },
            argmax: {
                let (x, p) = w.argmax();
                [x, p]
            },
        }
    }

    /// Runs the scenario for every selected mode, writing the requested
    /// artifact files.
    pub fn run(&self) -> anyhow::Result<Vec<FieldResult>> {
        self.input.validate()?;
        let p = coeffs(&self.coupling()?);
        std::fs::create_dir_all(&self.out_dir)?;
        let mut results = Vec::new();
        for mode in self.mode.modes() {
            let field = self.compute_field(mode, &p)?;
            let metrics = self.metrics_for(&field);
            let stem = self.file_stem(mode);
            let mut files = Vec::new();
            if self.write_csv {
                let path = self.out_dir.join(format!("{stem}.csv"));
                output::write_grid_csv(&path, &field)?;
                files.push(path);
            }
            if self.write_pgm {
                let path = self.out_dir.join(format!("{stem}.pgm"));
                output::write_pgm(&path, &field)?;
                files.push(path);
            }
            if self.write_metrics {
                let path = self.out_dir.join(format!("{stem}_metrics.json"));
                output::write_metrics(&path, &metrics)?;
                files.push(path);
            }
            results.push(FieldResult { metrics, files });
        }
        Ok(results)
    }
}

/// Builds a `TwoModeInput` from optional case label and state/amplitude
/// specifications.
pub fn resolve_input(
    case: Option<CaseLabel>,
    state1: Option<StateKind>,
    state3: Option<StateKind>,
    alpha1: C64,
    alpha3: C64,
) -> anyhow::Result<TwoModeInput> {
    match (case, state1, state3) {
        (Some(label), None, None) => Ok(TwoModeInput::from_case(label, alpha1, alpha3)),
        (None, s1, s3) => {
            let make = |kind: Option<StateKind>, alpha: C64| match kind {
                None | Some(StateKind::Vacuum) => ModeState::vacuum(),
                Some(StateKind::Coherent) => ModeState::coherent(alpha),
                Some(StateKind::CatPlus) => ModeState::cat_plus(alpha),
            };
            Ok(TwoModeInput::new(make(s1, alpha1), make(s3, alpha3)))
        }
        _ => anyhow::bail!("--case conflicts with --state1/--state3; use one or the other"),
    }
}

/// Sweep over zeta or gamma: one metrics row per value, in input order.
pub fn run_sweep(
    base: &Scenario,
    param: &str,
    values: &[f64],
    out_path: Option<&Path>,
) -> anyhow::Result<Vec<Metrics>> {
    if values.is_empty() {
        anyhow::bail!("sweep needs at least one value");
    }
    let mut rows = Vec::new();
    for &v in values {
        let mut s = base.clone();
        match param {
            "zeta" => s.zeta = v,
            "gamma" => s.gamma = v,
            other => anyhow::bail!("sweep parameter must be zeta or gamma, got '{other}'"),
        }
        // sweeps record metrics only
        s.write_csv = false;
        s.write_pgm = false;
        s.write_metrics = false;
        for r in s.run()? {
            rows.push(r.metrics);
        }
    }
    if let Some(path) = out_path {
        let text = serde_json::to_string_pretty(&rows)?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(rows)
}
