//! Detection pipeline: decompose every frame, keep the useful detail band,
//! average over time.
//!
//! With `L` levels and band `[lo, hi]`, each frame splits into three
//! additive parts: the background (`A_L` only), the useful subspace (details
//! `lo..=hi`) and the discarded subspace (all other details).

use rayon::prelude::*;

use crate::datacube::DataCube;
use crate::dwt::{catalog_lookup, decompose_with, max_levels, BoundaryMode, DecompositionTree, WaveletSpec};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// How per-frame reconstructions are combined over time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TemporalCombine {
    #[default]
    Mean,
    /// Per-pixel median; not linear, kept for robustness experiments.
    Median,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    pub basis: String,
    pub levels: usize,
    pub band: (usize, usize),
    pub edge_margin: usize,
    pub threshold_quantile: f64,
    pub temporal: TemporalCombine,
    pub boundary: BoundaryMode,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig::new("rbio6.8", 6, (3, 6)).expect("default basis is in the catalog")
    }
}

impl DetectorConfig {
    /// Config with the default edge margin (twice the synthesis filter
    /// length) and fault-map quantile 0.95.
    pub fn new(basis: &str, levels: usize, band: (usize, usize)) -> Result<Self> {
        let spec = catalog_lookup(basis)?;
        Ok(DetectorConfig {
            basis: basis.to_string(),
            levels,
            band,
            edge_margin: default_edge_margin(&spec),
            threshold_quantile: 0.95,
            temporal: TemporalCombine::Mean,
            boundary: BoundaryMode::default(),
        })
    }

    /// Same settings with another basis; the edge margin follows the basis.
    pub fn with_basis(&self, basis: &str) -> Result<Self> {
        let spec = catalog_lookup(basis)?;
        Ok(DetectorConfig { basis: basis.to_string(), edge_margin: default_edge_margin(&spec), ..self.clone() })
    }

    pub fn wavelet(&self) -> Result<WaveletSpec> {
        catalog_lookup(&self.basis)
    }

    /// Checks the level/band/margin contract against a frame shape.
    pub fn validate(&self, shape: (usize, usize)) -> Result<WaveletSpec> {
        let spec = self.wavelet()?;
        let (lo, hi) = self.band;
        if lo == 0 {
            return Err(Error::Level(format!("band start level {lo} must be at least 1")));
        }
        if lo > hi {
            return Err(Error::Level(format!("band {lo}:{hi} is empty")));
        }
        if hi > self.levels {
            return Err(Error::Level(format!("band end level {hi} exceeds the {} decomposition levels", self.levels)));
        }
        let limit = max_levels(shape, &spec);
        if self.levels == 0 || self.levels > limit {
            return Err(Error::Level(format!(
                "{} levels requested; {} admits 1..={limit} on a {}x{} frame",
                self.levels,
                spec.name(),
                shape.0,
                shape.1
            )));
        }
        if self.edge_margin < spec.filter_len() {
            return Err(Error::Config(format!(
                "edge margin {} is shorter than the {}-tap synthesis filter",
                self.edge_margin,
                spec.filter_len()
            )));
        }
        if !(self.threshold_quantile > 0.0 && self.threshold_quantile < 1.0) {
            return Err(Error::Config(format!("threshold quantile {} outside (0, 1)", self.threshold_quantile)));
        }
        Ok(spec)
    }

    fn in_band(&self, level: usize) -> bool {
        self.band.0 <= level && level <= self.band.1
    }
}

/// One synthesis filter length: the narrowest border the config accepts.
pub fn default_edge_margin(basis: &WaveletSpec) -> usize {
    basis.rec_lo().len().max(basis.rec_hi().len())
}

/// Temporal combination of one subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionMap {
    pub values: Grid,
    pub config: DetectorConfig,
    pub source_nt: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subspace {
    /// Details inside the configured band.
    Useful,
    /// Coarsest approximation only.
    Background,
    /// Details outside the band.
    Discarded,
}

fn frame_tree(cube: &DataCube, t: usize, spec: &WaveletSpec, cfg: &DetectorConfig) -> Result<DecompositionTree> {
    decompose_with(&cube.frame(t), spec, cfg.levels, cfg.boundary)
}

fn project(tree: &DecompositionTree, cfg: &DetectorConfig, which: Subspace) -> Grid {
    match which {
        Subspace::Useful => tree.synthesize_levels(false, |l| cfg.in_band(l)),
        Subspace::Background => tree.synthesize_levels(true, |_| false),
        Subspace::Discarded => tree.synthesize_levels(false, |l| !cfg.in_band(l)),
    }
}

fn check_cube(cube: &DataCube, cfg: &DetectorConfig) -> Result<WaveletSpec> {
    if cube.nt() == 0 {
        return Err(Error::Config("cube has no frames".into()));
    }
    cfg.validate(cube.frame_shape())
}

const LEAF_FRAMES: usize = 8;

/// Sum over `range` of `f(t)`, combined by a binary tree whose shape depends
/// only on the range, so results do not depend on thread scheduling.
fn tree_sum<F>(range: std::ops::Range<usize>, f: &F) -> Result<Vec<Grid>>
where
    F: Fn(usize) -> Result<Vec<Grid>> + Sync,
{
    if range.len() <= LEAF_FRAMES {
        let mut acc: Option<Vec<Grid>> = None;
        for t in range {
            let maps = f(t)?;
            acc = Some(match acc {
                None => maps,
                Some(a) => add_all(a, &maps),
            });
        }
        return acc.ok_or_else(|| Error::Config("empty frame range".into()));
    }
    let mid = range.start + range.len() / 2;
    let (left, right) = rayon::join(|| tree_sum(range.start..mid, f), || tree_sum(mid..range.end, f));
    Ok(add_all(left?, &right?))
}

fn add_all(mut a: Vec<Grid>, b: &[Grid]) -> Vec<Grid> {
    for (x, y) in a.iter_mut().zip(b) {
        for (p, q) in x.as_mut_slice().iter_mut().zip(y.as_slice()) {
            *p += q;
        }
    }
    a
}

fn median_map(per_frame: &[Grid]) -> Grid {
    let (rows, cols) = per_frame[0].shape();
    let mut out = Grid::zeros(rows, cols);
    let mut column = Vec::with_capacity(per_frame.len());
    for i in 0..rows * cols {
        column.clear();
        column.extend(per_frame.iter().map(|g| g.as_slice()[i]));
        column.sort_by(f64::total_cmp);
        let n = column.len();
        out.as_mut_slice()[i] = if n % 2 == 1 { column[n / 2] } else { 0.5 * (column[n / 2 - 1] + column[n / 2]) };
    }
    out
}

/// Temporal combinations of several subspaces from a single pass over the
/// frames.
pub fn subspace_maps(cube: &DataCube, cfg: &DetectorConfig, which: &[Subspace]) -> Result<Vec<DetectionMap>> {
    let spec = check_cube(cube, cfg)?;
    let per_frame = |t: usize| -> Result<Vec<Grid>> {
        let tree = frame_tree(cube, t, &spec, cfg)?;
        Ok(which.iter().map(|&w| project(&tree, cfg, w)).collect())
    };
    let combined = match cfg.temporal {
        TemporalCombine::Mean => {
            let inv = 1.0 / cube.nt() as f64;
            tree_sum(0..cube.nt(), &per_frame)?.into_iter().map(|g| g.scale(inv)).collect::<Vec<_>>()
        }
        TemporalCombine::Median => {
            let frames = (0..cube.nt()).into_par_iter().map(per_frame).collect::<Result<Vec<_>>>()?;
            (0..which.len())
                .map(|k| {
                    let maps: Vec<Grid> = frames.iter().map(|f| f[k].clone()).collect();
                    median_map(&maps)
                })
                .collect()
        }
    };
    Ok(combined.into_iter().map(|values| DetectionMap { values, config: cfg.clone(), source_nt: cube.nt() }).collect())
}

/// `Y_det`: the temporal combination of the useful subspace.
pub fn detect(cube: &DataCube, cfg: &DetectorConfig) -> Result<DetectionMap> {
    Ok(subspace_maps(cube, cfg, &[Subspace::Useful])?.remove(0))
}

/// Temporal combination of the background subspace (`A_L` only).
pub fn background_map(cube: &DataCube, cfg: &DetectorConfig) -> Result<DetectionMap> {
    Ok(subspace_maps(cube, cfg, &[Subspace::Background])?.remove(0))
}

/// Temporal combination of the discarded detail levels.
pub fn discarded_map(cube: &DataCube, cfg: &DetectorConfig) -> Result<DetectionMap> {
    Ok(subspace_maps(cube, cfg, &[Subspace::Discarded])?.remove(0))
}

/// Per-frame useful subspaces `Y_r(t)` as a cube.
pub fn useful_cube(cube: &DataCube, cfg: &DetectorConfig) -> Result<DataCube> {
    let spec = check_cube(cube, cfg)?;
    let frames = (0..cube.nt())
        .into_par_iter()
        .map(|t| Ok(project(&frame_tree(cube, t, &spec, cfg)?, cfg, Subspace::Useful)))
        .collect::<Result<Vec<_>>>()?;
    let out = DataCube::from_frames(&frames, cube.te_s())?;
    DataCube::new(out.nx(), out.ny(), out.te_s(), out.as_slice().to_vec(), cube.flipped_y())
}

/// Linear-interpolation quantile of `values` (sorted in place).
pub fn quantile(values: &mut [f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (values.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Some(values[lo] + (values[hi] - values[lo]) * (pos - lo as f64))
}

fn interior(shape: (usize, usize), margin: usize, r: usize, c: usize) -> bool {
    r >= margin && c >= margin && r + margin < shape.0 && c + margin < shape.1
}

/// The `q` quantile of magnitudes outside a `margin`-wide border, or `None`
/// when the border covers the whole map.
pub fn threshold_value(map: &Grid, margin: usize, q: f64) -> Result<Option<f64>> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Config(format!("threshold quantile {q} outside (0, 1)")));
    }
    let shape = map.shape();
    let mut mags = Vec::new();
    for r in 0..shape.0 {
        for c in 0..shape.1 {
            if interior(shape, margin, r, c) {
                mags.push(map[(r, c)].abs());
            }
        }
    }
    Ok(quantile(&mut mags, q))
}

/// Binary map (1.0 / 0.0) of pixels whose magnitude strictly exceeds the
/// `quantile` of interior magnitudes; a `margin`-wide border is cleared.
pub fn threshold_map(map: &Grid, margin: usize, q: f64) -> Result<Grid> {
    let shape = map.shape();
    let Some(threshold) = threshold_value(map, margin, q)? else {
        return Ok(Grid::zeros(shape.0, shape.1));
    };
    Ok(Grid::from_fn(shape.0, shape.1, |r, c| {
        if interior(shape, margin, r, c) && map[(r, c)].abs() > threshold {
            1.0
        } else {
            0.0
        }
    }))
}

/// Edge-masked, thresholded `|Y_det|`.
pub fn fault_map(det: &DetectionMap) -> Result<Grid> {
    threshold_map(&det.values, det.config.edge_margin, det.config.threshold_quantile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwt::reconstruct_band;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cube(nx: usize, ny: usize, nt: usize, seed: u64) -> DataCube {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..nx * ny * nt).map(|_| rng.gen_range(-5.0f32..5.0)).collect();
        DataCube::new(nx, ny, 1.0, data, false).unwrap()
    }

    fn small_cfg() -> DetectorConfig {
        DetectorConfig::new("db4", 3, (2, 3)).unwrap()
    }

    #[test]
    fn repeated_frame_gives_its_own_band() {
        let base = random_cube(40, 36, 1, 3);
        let mut data = Vec::new();
        for _ in 0..5 {
            data.extend_from_slice(base.as_slice());
        }
        let cube = DataCube::new(40, 36, 1.0, data, false).unwrap();
        let cfg = small_cfg();
        let det = detect(&cube, &cfg).unwrap();
        let tree = crate::dwt::decompose(&base.frame(0), &cfg.wavelet().unwrap(), 3).unwrap();
        let direct = reconstruct_band(&tree, 2, 3).unwrap();
        assert!(det.values.sub(&direct).unwrap().max_abs() < 1e-12);
        assert_eq!(det.source_nt, 5);
    }

    #[test]
    fn partition_sums_to_temporal_mean() {
        let cube = random_cube(33, 41, 11, 4);
        let cfg = small_cfg();
        let maps = subspace_maps(&cube, &cfg, &[Subspace::Useful, Subspace::Background, Subspace::Discarded]).unwrap();
        let total = maps[0].values.add(&maps[1].values).unwrap().add(&maps[2].values).unwrap();
        assert!(total.relative_error(&cube.mean_frame()) < 1e-8);
        // and the separate entry points agree with the joint pass
        assert_eq!(detect(&cube, &cfg).unwrap().values, maps[0].values);
        assert_eq!(background_map(&cube, &cfg).unwrap().values, maps[1].values);
        assert_eq!(discarded_map(&cube, &cfg).unwrap().values, maps[2].values);
    }

    #[test]
    fn band_over_all_levels_plus_background_is_mean() {
        let cube = random_cube(32, 32, 6, 5);
        let cfg = DetectorConfig::new("sym4", 2, (1, 2)).unwrap();
        let sum = detect(&cube, &cfg).unwrap().values.add(&background_map(&cube, &cfg).unwrap().values).unwrap();
        assert!(sum.relative_error(&cube.mean_frame()) < 1e-8);
    }

    #[test]
    fn zero_cube_gives_zero_maps() {
        let cube = DataCube::new(24, 24, 1.0, vec![0.0; 24 * 24 * 3], false).unwrap();
        let cfg = small_cfg();
        assert_eq!(background_map(&cube, &cfg).unwrap().values.max_abs(), 0.0);
        assert_eq!(detect(&cube, &cfg).unwrap().values.max_abs(), 0.0);
    }

    #[test]
    fn pipeline_is_linear_and_order_free() {
        let cube = random_cube(30, 30, 9, 6);
        let cfg = small_cfg();
        let det = detect(&cube, &cfg).unwrap().values;
        let scaled = detect(&cube.scaled(4.0).unwrap(), &cfg).unwrap().values;
        assert!(scaled.sub(&det.scale(4.0)).unwrap().max_abs() < 1e-9 * det.max_abs().max(1.0));
        let order: Vec<usize> = (0..9).rev().collect();
        let permuted = detect(&cube.permuted(&order).unwrap(), &cfg).unwrap().values;
        assert!(permuted.sub(&det).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn median_of_identical_frames_matches_mean() {
        let base = random_cube(24, 24, 1, 8);
        let cube = DataCube::new(24, 24, 1.0, base.as_slice().repeat(4), false).unwrap();
        let mean = detect(&cube, &small_cfg()).unwrap();
        let cfg = DetectorConfig { temporal: TemporalCombine::Median, ..small_cfg() };
        let median = detect(&cube, &cfg).unwrap();
        assert!(median.values.sub(&mean.values).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        let shape = (160, 200);
        let ok = DetectorConfig::default();
        ok.validate(shape).unwrap();
        assert_eq!(ok.edge_margin, 18);
        for band in [(0, 6), (4, 3), (3, 7)] {
            let cfg = DetectorConfig { band, ..ok.clone() };
            assert!(matches!(cfg.validate(shape), Err(Error::Level(_))), "{band:?}");
        }
        let err = DetectorConfig { band: (0, 6), ..ok.clone() }.validate(shape).unwrap_err();
        assert!(err.to_string().contains('0'));
        let deep = DetectorConfig { levels: 9, band: (3, 9), ..ok.clone() };
        assert!(matches!(deep.validate(shape), Err(Error::Level(_))));
        let thin = DetectorConfig { edge_margin: 4, ..ok.clone() };
        assert!(matches!(thin.validate(shape), Err(Error::Config(_))));
        let q = DetectorConfig { threshold_quantile: 1.0, ..ok.clone() };
        assert!(matches!(q.validate(shape), Err(Error::Config(_))));
        assert!(matches!(DetectorConfig::new("db99", 6, (3, 6)), Err(Error::Catalog(_))));
    }

    #[test]
    fn quantile_interpolates() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0, 5.0];
        assert_eq!(quantile(&mut v, 0.5), Some(3.0));
        assert_eq!(quantile(&mut v, 0.25), Some(2.0));
        assert_eq!(quantile(&mut v, 0.95), Some(4.8));
        assert_eq!(quantile(&mut [], 0.5), None);
    }

    #[test]
    fn constant_map_has_no_faults() {
        let map = Grid::filled(50, 50, 2.0);
        assert_eq!(threshold_map(&map, 5, 0.95).unwrap().sum(), 0.0);
    }

    #[test]
    fn full_margin_masks_everything() {
        let mut map = Grid::zeros(40, 40);
        map[(20, 20)] = 9.0;
        assert_eq!(threshold_map(&map, 20, 0.95).unwrap().sum(), 0.0);
        assert_eq!(threshold_map(&map, 5, 0.95).unwrap()[(20, 20)], 1.0);
        assert!(matches!(threshold_map(&map, 5, 0.0), Err(Error::Config(_))));
        assert!(matches!(threshold_map(&map, 5, 1.5), Err(Error::Config(_))));
    }

    #[test]
    fn useful_cube_averages_to_detection_map() {
        let cube = random_cube(32, 32, 5, 9);
        let cfg = small_cfg();
        let yr = useful_cube(&cube, &cfg).unwrap();
        let det = detect(&cube, &cfg).unwrap();
        // f32 storage of Y_r limits agreement
        assert!(yr.mean_frame().sub(&det.values).unwrap().max_abs() < 1e-5);
    }
}
