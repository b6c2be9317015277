//! Suppression of detections that simply follow the excitation, such as
//! reflective inclusions.

use rayon::prelude::*;

use crate::datacube::{DataCube, ExcitationSequence};
use crate::detector::DetectionMap;
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Default `|corr|` at or above which a pixel is suppressed.
pub const DEFAULT_CORRELATION_THRESHOLD: f64 = 0.7;

/// Pearson correlation of every pixel's series with the mean-centred
/// excitation bits. Pixels without temporal variance map to 0.
pub fn excitation_correlation(cube_r: &DataCube, excitation: &ExcitationSequence) -> Result<Grid> {
    let nt = cube_r.nt();
    if excitation.len() != nt {
        return Err(Error::Shape(format!("excitation has {} bits for {nt} frames", excitation.len())));
    }
    let mean_bit = excitation.bits().iter().map(|&b| f64::from(b)).sum::<f64>() / nt as f64;
    let bits: Vec<f64> = excitation.bits().iter().map(|&b| f64::from(b) - mean_bit).collect();
    let bit_norm = bits.iter().map(|b| b * b).sum::<f64>().sqrt();
    let (nx, ny) = cube_r.frame_shape();
    let values: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|s| {
            let series: Vec<f64> = (0..nt).map(|t| f64::from(cube_r.frame_slice(t)[s])).collect();
            let mean = series.iter().sum::<f64>() / nt as f64;
            let (mut cross, mut energy) = (0.0, 0.0);
            for (x, b) in series.iter().zip(&bits) {
                let d = x - mean;
                cross += d * b;
                energy += d * d;
            }
            if energy == 0.0 || bit_norm == 0.0 {
                0.0
            } else {
                (cross / (energy.sqrt() * bit_norm)).clamp(-1.0, 1.0)
            }
        })
        .collect();
    Grid::from_vec(nx, ny, values)
}

/// Zeroes every detection whose `|corr|` reaches `threshold`.
pub fn suppress_correlated(det: &DetectionMap, corr: &Grid, threshold: f64) -> Result<DetectionMap> {
    let values = suppress_in_grid(&det.values, corr, threshold)?;
    Ok(DetectionMap { values, ..det.clone() })
}

/// [`suppress_correlated`] on a bare map.
pub fn suppress_in_grid(values: &Grid, corr: &Grid, threshold: f64) -> Result<Grid> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Config(format!("correlation threshold {threshold} outside (0, 1)")));
    }
    values.zip_with(corr, |v, c| if c.abs() >= threshold { 0.0 } else { v })
}
