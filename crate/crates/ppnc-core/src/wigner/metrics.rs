//! Phase-space metrics of a reduced Wigner field: negativity volume,
//! interference fringe visibility, and quadrature marginals.

use ndarray::Array2;

use crate::{Error, Result};

use super::WignerField;

/// Negativity volume `Int |W| d^2 alpha - 1` over the grid.
///
/// Zero (up to grid error) for Gaussian states, strictly positive in the
/// presence of quantum interference. Callers should ensure
/// `normalization_defect < 1e-2` for the value to be meaningful.
pub fn negativity_volume(w: &WignerField) -> f64 {
    w.values.iter().map(|v| v.abs()).sum::<f64>() * w.grid.dx() * w.grid.dp() - 1.0
}

/// Axis of a marginal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalAxis {
    X,
    P,
}

/// Quadrature marginal: integrates the field over the other axis, returning
/// a probability density sampled on this axis' grid points.
pub fn marginal(w: &WignerField, axis: MarginalAxis) -> Vec<f64> {
    match axis {
        MarginalAxis::X => w
            .values
            .rows()
            .into_iter()
            .map(|row| row.sum() * w.grid.dp())
            .collect(),
        MarginalAxis::P => w
            .values
            .columns()
            .into_iter()
            .map(|col| col.sum() * w.grid.dx())
            .collect(),
    }
}

/// Interference fringe visibility between the two strongest lobes.
///
/// Lobes are located as local maxima of a Gaussian-smoothed copy of the
/// field (smoothing scale half the vacuum spot size, which removes the
/// fringes themselves from the search while keeping nearby lobes distinct). The 1D section through the midpoint of the
/// two strongest lobes, perpendicular to the lobe axis, is sampled by
/// bilinear interpolation and scored as `(max - min) / (max + |min|)`.
///
/// Errors with [`Error::NoLobesFound`] for single-lobed (e.g. Gaussian)
/// fields, for which the quantity is undefined.
pub fn fringe_visibility(w: &WignerField) -> Result<f64> {
    let smoothed = gaussian_smooth(&w.values, 0.25 / w.grid.dx(), 0.25 / w.grid.dp());
    let peaks = local_maxima(&smoothed);

    // Two strongest, requiring genuine separation (> 1 vacuum width) so a
    // plateau is not mistaken for a lobe pair.
    // peaks are sorted by height: the first is one lobe, the second is the
    // strongest peak at least one vacuum width away from it
    let min_sep2 = 1.0f64;
    let first = *peaks.first().ok_or(Error::NoLobesFound)?;
    let second = *peaks[1..]
        .iter()
        .find(|&&(idx, _)| {
            let dx = (idx.0 as f64 - first.0 .0 as f64) * w.grid.dx();
            let dp = (idx.1 as f64 - first.0 .1 as f64) * w.grid.dp();
            dx * dx + dp * dp > min_sep2
        })
        .ok_or(Error::NoLobesFound)?;
    // Reject a spurious "second lobe" far below the first.
    if second.1 < 0.02 * first.1 {
        return Err(Error::NoLobesFound);
    }

    let to_xy = |(ix, ip): (usize, usize)| {
        (
            w.grid.x_min + ix as f64 * w.grid.dx(),
            w.grid.p_min + ip as f64 * w.grid.dp(),
        )
    };
    let (x1, p1) = to_xy(first.0);
    let (x2, p2) = to_xy(second.0);
    let (cx, cp) = (0.5 * (x1 + x2), 0.5 * (p1 + p2));
    let len = ((x2 - x1).powi(2) + (p2 - p1).powi(2)).sqrt();
    let (nx, np) = (-(p2 - p1) / len, (x2 - x1) / len);

    let n_samples = 257;
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for i in 0..n_samples {
        let t = (i as f64 / (n_samples - 1) as f64 - 0.5) * len;
        let x = cx + t * nx;
        let p = cp + t * np;
        if x < w.grid.x_min || x > w.grid.x_max || p < w.grid.p_min || p > w.grid.p_max {
            continue;
        }
        let v = w.sample(x, p);
        max = max.max(v);
        min = min.min(v);
    }
    if !max.is_finite() || !min.is_finite() {
        return Err(Error::NoLobesFound);
    }
    Ok((max - min) / (max + min.abs()))
}

/// Strict local maxima over the 8-neighborhood, positive values only,
/// sorted by value descending.
fn local_maxima(values: &Array2<f64>) -> Vec<((usize, usize), f64)> {
    let (nx, ny) = values.dim();
    let mut peaks = Vec::new();
    for ix in 1..nx - 1 {
        for ip in 1..ny - 1 {
            let v = values[[ix, ip]];
            if v <= 0.0 {
                continue;
            }
            let mut is_peak = true;
            'nb: for dx in -1i64..=1 {
                for dp in -1i64..=1 {
                    if dx == 0 && dp == 0 {
                        continue;
                    }
                    let u = values[[(ix as i64 + dx) as usize, (ip as i64 + dp) as usize]];
                    if u >= v {
                        is_peak = false;
                        break 'nb;
                    }
                }
            }
            if is_peak {
                peaks.push(((ix, ip), v));
            }
        }
    }
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    peaks
}

/// Separable Gaussian blur; sigma given in grid cells per axis.
fn gaussian_smooth(values: &Array2<f64>, sigma_x: f64, sigma_p: f64) -> Array2<f64> {
    let kernel = |sigma: f64| -> Vec<f64> {
        let radius = (3.0 * sigma).ceil() as i64;
        let mut k: Vec<f64> = (-radius..=radius)
            .map(|i| (-0.5 * (i as f64 / sigma).powi(2)).exp())
            .collect();
        let sum: f64 = k.iter().sum();
        k.iter_mut().for_each(|v| *v /= sum);
        k
    };
    let kx = kernel(sigma_x);
    let kp = kernel(sigma_p);
    let (nx, ny) = values.dim();
    let rx = (kx.len() / 2) as i64;
    let rp = (kp.len() / 2) as i64;

    let mut tmp = Array2::<f64>::zeros((nx, ny));
    for ix in 0..nx {
        for ip in 0..ny {
            let mut acc = 0.0;
            for (j, &kv) in kx.iter().enumerate() {
                let sx = (ix as i64 + j as i64 - rx).clamp(0, nx as i64 - 1) as usize;
                acc += kv * values[[sx, ip]];
            }
            tmp[[ix, ip]] = acc;
        }
    }
    let mut out = Array2::<f64>::zeros((nx, ny));
    for ix in 0..nx {
        for ip in 0..ny {
            let mut acc = 0.0;
            for (j, &kv) in kp.iter().enumerate() {
                let sp = (ip as i64 + j as i64 - rp).clamp(0, ny as i64 - 1) as usize;
                acc += kv * tmp[[ix, sp]];
            }
            out[[ix, ip]] = acc;
        }
    }
    out
}
