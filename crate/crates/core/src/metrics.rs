//! Windowed signal-to-noise ratios of raw data and detection maps.

use crate::datacube::{extract_window, DataCube, FrameWindow};
use crate::detector::DetectionMap;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::phantom::GroundTruth;

/// Default half extent of the square window placed on each fault.
pub const FAULT_WINDOW_HALF_EXTENT: usize = 5;

fn mean_square(g: &Grid) -> f64 {
    g.sum_squares() / (g.rows() * g.cols()) as f64
}

/// Mean power over the background windows.
pub fn background_power(map: &Grid, background: &[FrameWindow]) -> Result<f64> {
    if background.is_empty() {
        return Err(Error::Config("at least one background window is required".into()));
    }
    let mut total = 0.0;
    for w in background {
        total += mean_square(&extract_window(map, w)?);
    }
    Ok(total / background.len() as f64)
}

/// `10·log10(P_window / P_background)` with power taken as the mean square.
pub fn window_snr_db(map: &Grid, win: &FrameWindow, background: &[FrameWindow]) -> Result<f64> {
    let signal = mean_square(&extract_window(map, win)?);
    let noise = background_power(map, background)?;
    if noise <= 0.0 {
        return Err(Error::Degenerate("background power is zero".into()));
    }
    Ok(10.0 * (signal / noise).log10())
}

/// Which raw image the improvement is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RawReference {
    /// Temporal mean of all raw frames.
    #[default]
    MeanFrame,
    /// For each fault, the raw frame where that fault's SNR is highest.
    BestFrame,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrRow {
    pub fault_id: u32,
    pub snr_raw_db: f64,
    pub snr_wd_db: f64,
    pub improvement_db: f64,
}

/// Per-fault SNR of the detection map minus that of the raw data, ordered by
/// fault id.
pub fn snr_improvement(raw: &DataCube, det: &DetectionMap, truth: &GroundTruth) -> Result<Vec<SnrRow>> {
    snr_improvement_with(raw, &det.values, truth, FAULT_WINDOW_HALF_EXTENT, RawReference::MeanFrame)
}

pub fn snr_improvement_with(
    raw: &DataCube,
    det: &Grid,
    truth: &GroundTruth,
    half_extent: usize,
    reference: RawReference,
) -> Result<Vec<SnrRow>> {
    if det.shape() != raw.frame_shape() {
        return Err(Error::Shape(format!("detection map {:?} vs cube frames {:?}", det.shape(), raw.frame_shape())));
    }
    let bg = &truth.background_windows;
    let mean = raw.mean_frame();
    let mut faults = truth.faults.clone();
    faults.sort_by_key(|f| f.id);
    faults
        .iter()
        .map(|f| {
            let win = f.window(half_extent);
            let snr_wd_db = window_snr_db(det, &win, bg)?;
            let snr_raw_db = match reference {
                RawReference::MeanFrame => window_snr_db(&mean, &win, bg)?,
                RawReference::BestFrame => {
                    let mut best = f64::NEG_INFINITY;
                    for t in 0..raw.nt() {
                        best = best.max(window_snr_db(&raw.frame(t), &win, bg)?);
                    }
                    best
                }
            };
            Ok(SnrRow { fault_id: f.id, snr_raw_db, snr_wd_db, improvement_db: snr_wd_db - snr_raw_db })
        })
        .collect()
}

pub fn snr_csv(rows: &[SnrRow]) -> String {
    let mut out = String::from("fault_id,snr_raw_db,snr_wd_db,improvement_db\n");
    for r in rows {
        out.push_str(&format!("{},{:.6},{:.6},{:.6}\n", r.fault_id, r.snr_raw_db, r.snr_wd_db, r.improvement_db));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::DetectorConfig;
    use crate::phantom::FaultRecord;

    fn bg() -> Vec<FrameWindow> {
        vec![FrameWindow::new(5, 5, 2), FrameWindow::new(5, 20, 2)]
    }

    #[test]
    fn equal_power_is_zero_db() {
        let map = Grid::filled(30, 30, 3.0);
        let snr = window_snr_db(&map, &FrameWindow::new(15, 15, 3), &bg()).unwrap();
        assert!(snr.abs() < 1e-12);
    }

    #[test]
    fn tenfold_amplitude_is_twenty_db() {
        let mut map = Grid::from_fn(30, 30, |r, c| if (r + c) % 2 == 0 { 0.5 } else { -0.5 });
        for r in 12..=18 {
            for c in 12..=18 {
                map[(r, c)] = 5.0;
            }
        }
        let snr = window_snr_db(&map, &FrameWindow::new(15, 15, 3), &bg()).unwrap();
        assert!((snr - 20.0).abs() < 1e-9, "{snr}");
    }

    #[test]
    fn scaling_and_degenerate_background() {
        let map = Grid::from_fn(30, 30, |r, c| (r * c) as f64 + 1.0);
        let win = FrameWindow::new(15, 15, 3);
        let a = window_snr_db(&map, &win, &bg()).unwrap();
        let b = window_snr_db(&map.scale(7.5), &win, &bg()).unwrap();
        assert!((a - b).abs() < 1e-9);
        let zero_bg = Grid::from_fn(30, 30, |r, _| if r < 10 { 0.0 } else { 1.0 });
        assert!(matches!(window_snr_db(&zero_bg, &win, &bg()), Err(Error::Degenerate(_))));
        assert!(matches!(window_snr_db(&map, &win, &[]), Err(Error::Config(_))));
    }

    fn toy_truth() -> GroundTruth {
        GroundTruth {
            faults: vec![
                FaultRecord { id: 2, row: 20, col: 20, diameter_mm: 6.0, depth_mm: 4.0 },
                FaultRecord { id: 1, row: 20, col: 10, diameter_mm: 6.0, depth_mm: 4.0 },
            ],
            background_windows: bg(),
            px_per_mm: 1.0,
        }
    }

    #[test]
    fn identity_pipeline_has_zero_improvement() {
        let data: Vec<f32> = (0..30 * 30 * 3).map(|i| ((i * 37) % 101) as f32 * 0.1 + 1.0).collect();
        let cube = DataCube::new(30, 30, 1.0, data, false).unwrap();
        let det = DetectionMap { values: cube.mean_frame(), config: DetectorConfig::default(), source_nt: 3 };
        let rows = snr_improvement_with(&cube, &det.values, &toy_truth(), 3, RawReference::MeanFrame).unwrap();
        assert_eq!(rows.iter().map(|r| r.fault_id).collect::<Vec<_>>(), vec![1, 2]);
        for r in &rows {
            assert!(r.improvement_db.abs() < 1e-9);
        }
        let scaled =
            snr_improvement_with(&cube, &det.values.scale(10.0), &toy_truth(), 3, RawReference::MeanFrame).unwrap();
        for r in &scaled {
            assert!(r.improvement_db.abs() < 1e-9);
        }
        let best = snr_improvement_with(&cube, &det.values, &toy_truth(), 3, RawReference::BestFrame).unwrap();
        for (b, m) in best.iter().zip(&rows) {
            let first =
                window_snr_db(&cube.frame(0), &FrameWindow::new(20, 10 * (b.fault_id as usize), 3), &bg()).unwrap();
            assert!(b.snr_raw_db >= first - 1e-12 && b.fault_id == m.fault_id);
        }
        let csv = snr_csv(&rows);
        assert!(csv.starts_with("fault_id,snr_raw_db,snr_wd_db,improvement_db\n1,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
