//! File emitters: plain-text grid files, 8-bit greyscale images, and metrics
//! records.

use std::io::Write;
use std::path::Path;

use ppnc_core::wigner::WignerField;
use serde::Serialize;

/// Writes the grid file: comment header, then comma-separated values,
/// row-major over x (outer) then p (inner), 17 significant digits.
/// Deterministic byte-for-byte for identical inputs.
pub fn write_grid_csv(path: &Path, w: &WignerField) -> std::io::Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "# convention: alpha=x+ip, integral dx dp")?;
    writeln!(f, "# x: {} {} {}", w.grid.x_min, w.grid.x_max, w.grid.nx)?;
    writeln!(f, "# p: {} {} {}", w.grid.p_min, w.grid.p_max, w.grid.ny)?;
    for ix in 0..w.grid.nx {
        let mut line = String::with_capacity(w.grid.ny * 26);
        for ip in 0..w.grid.ny {
            if ip > 0 {
                line.push(',');
            }
            line.push_str(&format!("{:.16e}", w.values[[ix, ip]]));
        }
        writeln!(f, "{line}")?;
    }
    Ok(())
}

/// Binary 8-bit greyscale PGM (P5): value range [min, max] mapped linearly
/// to [0, 255]. Columns run over x, rows over p with p_max at the top.
/// The min/max used for the mapping live in the metrics record.
pub fn write_pgm(path: &Path, w: &WignerField) -> std::io::Result<()> {
    let (lo, hi) = (w.min(), w.max());
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut data = Vec::with_capacity(w.grid.nx * w.grid.ny + 64);
    data.extend_from_slice(format!("P5\n{} {}\n255\n", w.grid.nx, w.grid.ny).as_bytes());
    for ip in (0..w.grid.ny).rev() {
        for ix in 0..w.grid.nx {
            let v = (w.values[[ix, ip]] - lo) / span;
            data.push((v * 255.0).round().clamp(0.0, 255.0) as u8);
        }
    }
    std::fs::write(path, data)
}

/// Metrics record for one computed field.
#[derive(Debug, Clone, Serialize)]
pub struct Metrics {
    pub case: Option<String>,
    pub mode: String,
    pub method: String,
    pub zeta: f64,
    pub gamma: f64,
    pub phi2: f64,
    pub negativity_volume: f64,
    pub fringe_visibility: Option<f64>,
    pub normalization_defect: f64,
    pub min: f64,
    pub max: f64,
    pub argmin: [f64; 2],
    pub argmax: [f64; 2],
}

pub fn write_metrics(path: &Path, m: &Metrics) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(m)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
