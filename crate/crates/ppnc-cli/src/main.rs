//! Command-line runner: Bogoliubov coefficients, reduced Wigner fields,
//! parameter sweeps and the built-in verification suites.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical-consistency
//! failure.

mod amplitude;
mod config;
mod output;
mod scenario;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;

use ppnc_core::propagator::{coeffs, coeffs_ode, commutator_defects, CouplingConfig};
use ppnc_core::states::{CaseLabel, StateKind};
use ppnc_core::wigner::PhaseSpaceGrid;
use ppnc_core::Error as CoreError;

use amplitude::{parse_amplitude, parse_angle};
use config::ConfigFile;
use scenario::{resolve_input, run_sweep, Method, ModeSelect, Scenario};

#[derive(Parser)]
#[command(
    name = "ppnc",
    about = "Quantum-state transmission through a periodically poled nonlinear crystal",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the eight Bogoliubov coefficients and their commutator defects
    Coeffs(CoeffsArgs),
    /// Compute reduced Wigner fields and write grid/image/metrics files
    Wigner(Box<ScenarioArgs>),
    /// Re-run a scenario over a list of zeta or gamma values
    Sweep(Box<SweepArgs>),
    /// Run the built-in numerical consistency suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long)]
    zeta: f64,
    #[arg(long)]
    gamma: f64,
    /// Pump phase in radians; accepts pi-expressions like 'pi/4'
    #[arg(long, default_value = "0")]
    phi2: String,
    /// Also integrate the defining system at this step and print the
    /// largest relative deviation
    #[arg(long)]
    ode_step: Option<f64>,
    /// Emit JSON instead of the text table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Catalog case I..IX (conflicts with --state1/--state3)
    #[arg(long)]
    case: Option<String>,
    /// Mode-1 input kind for custom scenarios: vacuum|coherent|cat
    #[arg(long)]
    state1: Option<String>,
    /// Mode-3 input kind for custom scenarios: vacuum|coherent|cat
    #[arg(long)]
    state3: Option<String>,
    /// Mode-1 amplitude, e.g. 'sqrt12@pi/3' or '1.5+0.3i'
    #[arg(long)]
    alpha1: Option<String>,
    /// Mode-3 amplitude
    #[arg(long)]
    alpha3: Option<String>,
    #[arg(long)]
    zeta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Pump phase in radians; accepts pi-expressions
    #[arg(long)]
    phi2: Option<String>,
    /// Which reduced field(s): mode1|mode3|both
    #[arg(long)]
    mode: Option<String>,
    /// Grid resolution: NX NY
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    grid: Option<Vec<usize>>,
    /// Phase-space window: XMIN XMAX PMIN PMAX
    #[arg(long, num_args = 4, value_names = ["XMIN", "XMAX", "PMIN", "PMAX"], allow_negative_numbers = true)]
    range: Option<Vec<f64>>,
    /// Evaluation route: gaussian|transform|fock
    #[arg(long)]
    method: Option<String>,
    /// Half-width of the beta integration box (transform path)
    #[arg(long)]
    beta_extent: Option<f64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file with key = value lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Skip the grid CSV file
    #[arg(long)]
    no_csv: bool,
    /// Skip the PGM image
    #[arg(long)]
    no_image: bool,
    /// Skip the metrics JSON
    #[arg(long)]
    no_metrics: bool,
    /// Allow the Fock method above its default amplitude bound
    #[arg(long)]
    force: bool,
    /// Fock truncation override, mode 1
    #[arg(long)]
    cutoff1: Option<usize>,
    /// Fock truncation override, mode 3
    #[arg(long)]
    cutoff3: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Swept parameter: zeta|gamma
    #[arg(long)]
    param: String,
    /// Comma-separated values for the swept parameter
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    values: Vec<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fast suite only (default)
    #[arg(long, conflicts_with = "full")]
    fast: bool,
    /// Include the Fock-oracle comparisons
    #[arg(long)]
    full: bool,
}

/// 1 for validation problems, 2 for numerical-consistency failures.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::IllConditionedPropagator(_)
            | CoreError::ImaginaryResidue(_)
            | CoreError::InsufficientBetaExtent { .. }
            | CoreError::NonPositiveDefiniteForm(_)
            | CoreError::DegenerateExponents(_)
            | CoreError::CutoffLeakage { .. },
        ) => 2,
        _ => 1,
    }
}

fn parse_state_kind(s: &str) -> anyhow::Result<StateKind> {
    match s.to_ascii_lowercase().as_str() {
        "vacuum" | "v" => Ok(StateKind::Vacuum),
        "coherent" | "c" => Ok(StateKind::Coherent),
        "cat" | "cat+" | "sc" => Ok(StateKind::CatPlus),
        other => anyhow::bail!("unknown state kind '{other}' (vacuum|coherent|cat)"),
    }
}

impl ScenarioArgs {
    /// Resolution order: command-line flag, then config file, then default.
    fn build(&self) -> anyhow::Result<Scenario> {
        let cfg = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let pick = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| cfg.get(key).map(str::to_string))
        };

        let case = match pick(&self.case, "case") {
            Some(s) => Some(s.parse::<CaseLabel>().map_err(|e| anyhow::anyhow!(e))?),
            None => None,
        };
        let state1 = match pick(&self.state1, "state1") {
            Some(s) => Some(parse_state_kind(&s)?),
            None => None,
        };
        let state3 = match pick(&self.state3, "state3") {
            Some(s) => Some(parse_state_kind(&s)?),
            None => None,
        };
        let alpha = |flag: &Option<String>, key: &str| -> anyhow::Result<C64> {
            match pick(flag, key) {
                Some(s) => parse_amplitude(&s).map_err(|e| anyhow::anyhow!(e)),
                None => Ok(C64::new(0.0, 0.0)),
            }
        };
        let alpha1 = alpha(&self.alpha1, "alpha1")?;
        let alpha3 = alpha(&self.alpha3, "alpha3")?;
        let input = resolve_input(case, state1, state3, alpha1, alpha3)?;

        let num = |flag: Option<f64>, key: &str, default: f64| -> anyhow::Result<f64> {
            match flag {
                Some(v) => Ok(v),
                None => match cfg.get(key) {
                    Some(s) => s
                        .parse::<f64>()
                        .map_err(|_| anyhow::anyhow!("bad number for {key}: '{s}'")),
                    None => Ok(default),
                },
            }
        };
        let zeta = num(self.zeta, "zeta", 0.0)?;
        let gamma = num(self.gamma, "gamma", 0.9)?;
        let phi2 = match pick(&self.phi2, "phi2") {
            Some(s) => parse_angle(&s).map_err(|e| anyhow::anyhow!(e))?,
            None => 0.0,
        };

        let mode: ModeSelect = pick(&self.mode, "mode")
            .unwrap_or_else(|| "both".into())
            .parse()
            .map_err(|e: String| anyhow::anyhow!(e))?;
        let method: Method = pick(&self.method, "method")
            .unwrap_or_else(|| "gaussian".into())
            .parse()
            .map_err(|e: String| anyhow::anyhow!(e))?;

        let (nx, ny) = match (&self.grid, cfg.get("grid")) {
            (Some(v), _) => (v[0], v[1]),
            (None, Some(s)) => {
                let parts: Vec<usize> = s
                    .split_whitespace()
                    .map(|t| t.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| anyhow::anyhow!("bad grid spec '{s}'"))?;
                if parts.len() != 2 {
                    anyhow::bail!("grid spec needs NX NY, got '{s}'");
                }
                (parts[0], parts[1])
            }
            (None, None) => (256, 256),
        };
        let range = match (&self.range, cfg.get("range")) {
            (Some(v), _) => v.clone(),
            (None, Some(s)) => {
                let parts: Vec<f64> = s
                    .split_whitespace()
                    .map(|t| t.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| anyhow::anyhow!("bad range spec '{s}'"))?;
                if parts.len() != 4 {
                    anyhow::bail!("range spec needs XMIN XMAX PMIN PMAX, got '{s}'");
                }
                parts
            }
            (None, None) => vec![-6.0, 6.0, -6.0, 6.0],
        };
        let grid = PhaseSpaceGrid::new(range[0], range[1], range[2], range[3], nx, ny)?;

        let beta_extent = num(self.beta_extent, "beta_extent", 6.0)?;
        let out_dir = self
            .out
            .clone()
            .or_else(|| cfg.get("out").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));

        Ok(Scenario {
            input,
            zeta,
            gamma,
            phi2,
            mode,
            grid,
            method,
            beta_extent,
            out_dir,
            write_csv: !self.no_csv,
            write_pgm: !self.no_image,
            write_metrics: !self.no_metrics,
            force: self.force,
            cutoff1: self.cutoff1,
            cutoff3: self.cutoff3,
        })
    }
}

fn cmd_coeffs(args: &CoeffsArgs) -> anyhow::Result<()> {
    let phi2 = parse_angle(&args.phi2).map_err(|e| anyhow::anyhow!(e))?;
    let c = CouplingConfig::new(args.zeta, args.gamma, phi2)?;
    let p = coeffs(&c);
    let d = commutator_defects(&p);
    if args.json {
        let as_pair = |z: C64| [z.re, z.im];
        let doc = serde_json::json!({
            "zeta": args.zeta, "gamma": args.gamma, "phi2": phi2,
            "k1": as_pair(p.k1), "k2": as_pair(p.k2),
            "k3": as_pair(p.k3), "k4": as_pair(p.k4),
            "m1": as_pair(p.m1), "m2": as_pair(p.m2),
            "m3": as_pair(p.m3), "m4": as_pair(p.m4),
            "defects": { "d11": d.d11, "d33": d.d33, "d13": d.d13, "e13": d.e13 },
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("zeta = {}, gamma = {}, phi2 = {phi2}", args.zeta, args.gamma);
        for (name, z) in [
            ("k1", p.k1),
            ("k2", p.k2),
            ("k3", p.k3),
            ("k4", p.k4),
            ("m1", p.m1),
            ("m2", p.m2),
            ("m3", p.m3),
            ("m4", p.m4),
        ] {
            println!("  {name} = {:+.15e} {:+.15e}i", z.re, z.im);
        }
        println!(
            "defects: d11 = {:+.3e}, d33 = {:+.3e}, |d13| = {:.3e}, |e13| = {:.3e}",
            d.d11, d.d33, d.d13, d.e13
        );
    }
    if let Some(step) = args.ode_step {
        let q = coeffs_ode(&c, step)?;
        let scale = p.as_array().iter().map(|z| z.norm()).fold(1.0, f64::max);
        let diff = p
            .as_array()
            .iter()
            .zip(q.as_array().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        println!("ode check (step {step}): max rel deviation = {:.3e}", diff / scale);
    }
    Ok(())
}

fn cmd_wigner(args: &ScenarioArgs) -> anyhow::Result<()> {
    let scenario = args.build()?;
    let results = scenario.run()?;
    for r in &results {
        let m = &r.metrics;
        println!(
            "{} {}: negativity {:.6}, visibility {}, defect {:.2e}, range [{:.4e}, {:.4e}]",
            m.case.clone().unwrap_or_else(|| "custom".into()),
            m.mode,
            m.negativity_volume,
            m.fringe_visibility
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "n/a".into()),
            m.normalization_defect,
            m.min,
            m.max
        );
        for f in &r.files {
            println!("  wrote {}", f.display());
        }
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<()> {
    let scenario = args.scenario.build()?;
    std::fs::create_dir_all(&scenario.out_dir)?;
    let out_path = scenario.out_dir.join("metrics_sweep.json");
    let rows = run_sweep(&scenario, &args.param, &args.values, Some(&out_path))?;
    println!(
        "{:>8}  {:>6}  {:>14}  {:>12}  {:>10}",
        args.param, "mode", "negativity", "visibility", "defect"
    );
    for (i, m) in rows.iter().enumerate() {
        let v = args.values[i / scenario.mode.modes().len()];
        println!(
            "{v:>8.4}  {:>6}  {:>14.8}  {:>12}  {:>10.2e}",
            m.mode,
            m.negativity_volume,
            m.fringe_visibility
                .map(|x| format!("{x:.6}"))
                .unwrap_or_else(|| "n/a".into()),
            m.normalization_defect
        );
    }
    println!("wrote {}", out_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are success, usage problems are
            // validation errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Coeffs(args) => cmd_coeffs(args),
        Cmd::Wigner(args) => cmd_wigner(args),
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::Verify(args) => {
            let checks = verify::run(args.full);
            return ExitCode::from(verify::report(&checks) as u8);
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
