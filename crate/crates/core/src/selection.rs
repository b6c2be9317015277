//! Basis and level selection.
//!
//! [`select_basis`] sweeps a wavelet catalog and keeps the basis whose
//! detection map makes the faults look most alike while separating the
//! dominant fault from the background. [`select_level`] tracks how much
//! regional mutual information the level-`L` approximation shares with the
//! raw frames and stops where that curve flattens.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::datacube::{extract_window, DataCube};
use crate::detector::{detect, DetectorConfig};
use crate::dwt::{approximation_image, catalog_lookup, decompose_with, BoundaryMode};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::metrics::FAULT_WINDOW_HALF_EXTENT;
use crate::phantom::GroundTruth;

/// Default neighbourhood radius for regional mutual information.
pub const RMI_RADIUS: usize = 1;

/// Default stagnation fraction for level selection.
pub const DEFAULT_TAU: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct BasisScore {
    pub basis: String,
    pub cost: f64,
    /// `‖W_1 − W_i‖_F` for every fault after the first, in fault order.
    pub per_fault_numerators: Vec<f64>,
    pub denominator: f64,
}

/// Cost of a detection map against the ground truth.
///
/// Windows of `half_extent` are cut around every fault. The numerator sums
/// the Frobenius distances from the first fault's window to each other
/// fault's window; the denominator is the distance from the first window to
/// the mean detection value over all background windows.
pub fn map_cost(map: &Grid, truth: &GroundTruth, half_extent: usize) -> Result<(Vec<f64>, f64)> {
    if truth.faults.len() < 2 {
        return Err(Error::Config("basis cost needs at least two faults".into()));
    }
    if truth.background_windows.is_empty() {
        return Err(Error::Config("basis cost needs at least one background window".into()));
    }
    let windows =
        truth.fault_windows(half_extent).iter().map(|w| extract_window(map, w)).collect::<Result<Vec<_>>>()?;
    let mut bg_sum = 0.0;
    let mut bg_count = 0usize;
    for w in &truth.background_windows {
        let patch = extract_window(map, w)?;
        bg_sum += patch.sum();
        bg_count += patch.as_slice().len();
    }
    let b_avg = bg_sum / bg_count as f64;
    let first = &windows[0];
    let numerators = windows[1..].iter().map(|w| first.sub(w).expect("equal window sizes").norm()).collect();
    let denominator = first.map(|v| v - b_avg).norm();
    if denominator == 0.0 || !denominator.is_finite() {
        return Err(Error::Degenerate("first fault window equals the background level".into()));
    }
    Ok((numerators, denominator))
}

/// Runs the detector with `basis` substituted into `cfg` and scores the map.
pub fn basis_cost(cube: &DataCube, truth: &GroundTruth, basis: &str, cfg: &DetectorConfig) -> Result<BasisScore> {
    truth.validate(cube.frame_shape())?;
    let cfg = cfg.with_basis(basis)?;
    let det = detect(cube, &cfg)?;
    let (per_fault_numerators, denominator) = map_cost(&det.values, truth, FAULT_WINDOW_HALF_EXTENT)?;
    let cost = per_fault_numerators.iter().sum::<f64>() / denominator;
    Ok(BasisScore { basis: basis.to_string(), cost, per_fault_numerators, denominator })
}

/// Lowest cost wins; equal costs go to the lexicographically smaller name.
pub fn best_score(scores: &[BasisScore]) -> Option<&BasisScore> {
    scores.iter().min_by(|a, b| a.cost.total_cmp(&b.cost).then_with(|| a.basis.cmp(&b.basis)))
}

/// Scores every catalog entry and returns the winner with the score table.
///
/// Bases whose map is degenerate are left out of the table; if none remain
/// the sweep fails.
pub fn select_basis(
    cube: &DataCube,
    truth: &GroundTruth,
    catalog: &[&str],
    cfg: &DetectorConfig,
) -> Result<(String, Vec<BasisScore>)> {
    if catalog.is_empty() {
        return Err(Error::Config("basis catalog is empty".into()));
    }
    let results: Vec<Result<BasisScore>> = catalog.par_iter().map(|name| basis_cost(cube, truth, name, cfg)).collect();
    let mut scores = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(score) => scores.push(score),
            Err(Error::Degenerate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let best = best_score(&scores)
        .ok_or_else(|| Error::Selection("every basis produced a degenerate map".into()))?
        .basis
        .clone();
    Ok((best, scores))
}

/// `basis,cost,numerator,denominator` with one row per scored basis.
pub fn basis_scores_csv(scores: &[BasisScore]) -> String {
    let mut out = String::from("basis,cost,numerator,denominator\n");
    for s in scores {
        let numerator: f64 = s.per_fault_numerators.iter().sum();
        out.push_str(&format!("{},{},{},{}\n", s.basis, s.cost, numerator, s.denominator));
    }
    out
}

fn log_det(m: &DMatrix<f64>) -> Result<f64> {
    let chol = m.clone().cholesky().ok_or_else(|| Error::Degenerate("covariance is not positive definite".into()))?;
    Ok(2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>())
}

/// Mean-centred `(2r+1)²` neighbourhoods of every interior pixel, stored as
/// one contiguous column per offset.
struct Regions {
    shape: (usize, usize),
    n: usize,
    columns: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

impl Regions {
    fn new(img: &Grid, radius: usize) -> Result<Self> {
        let (rows, cols) = img.shape();
        if rows.min(cols) <= 2 * radius {
            return Err(Error::Shape(format!("{rows}x{cols} image has no interior for radius {radius}")));
        }
        let side = 2 * radius + 1;
        let (ir, ic) = (rows - 2 * radius, cols - 2 * radius);
        let columns = (0..side * side)
            .map(|k| {
                let (di, dj) = (k / side, k % side);
                let mut column = Vec::with_capacity(ir * ic);
                for r in 0..ir {
                    column.extend_from_slice(&img.row(r + di)[dj..dj + ic]);
                }
                let mean = column.iter().sum::<f64>() / column.len() as f64;
                column.iter_mut().for_each(|v| *v -= mean);
                column
            })
            .collect();
        Ok(Regions { shape: img.shape(), n: ir * ic, columns })
    }

    fn cross(&self, other: &Regions) -> DMatrix<f64> {
        let k = self.columns.len();
        DMatrix::from_fn(k, k, |p, q| dot(&self.columns[p], &other.columns[q]) / self.n as f64)
    }

    fn gram(&self) -> DMatrix<f64> {
        let k = self.columns.len();
        let mut g = DMatrix::zeros(k, k);
        for p in 0..k {
            for q in p..k {
                let v = dot(&self.columns[p], &self.columns[q]) / self.n as f64;
                g[(p, q)] = v;
                g[(q, p)] = v;
            }
        }
        g
    }
}

fn rmi_between(a: &Regions, b: &Regions, caa: Option<&DMatrix<f64>>) -> Result<f64> {
    if a.shape != b.shape {
        return Err(Error::Shape(format!("{:?} vs {:?}", a.shape, b.shape)));
    }
    let half = a.columns.len();
    let d = 2 * half;
    let caa = caa.cloned().unwrap_or_else(|| a.gram());
    let cab = a.cross(b);
    let cbb = b.gram();
    let trace = caa.trace() + cbb.trace();
    if trace <= 0.0 {
        return Ok(0.0);
    }
    let eps = 1e-9 * trace / d as f64;
    let mut joint = DMatrix::zeros(d, d);
    joint.view_mut((0, 0), (half, half)).copy_from(&caa);
    joint.view_mut((0, half), (half, half)).copy_from(&cab);
    joint.view_mut((half, 0), (half, half)).copy_from(&cab.transpose());
    joint.view_mut((half, half), (half, half)).copy_from(&cbb);
    for k in 0..d {
        joint[(k, k)] += eps;
    }
    let ha = log_det(&joint.view((0, 0), (half, half)).into_owned())?;
    let hb = log_det(&joint.view((half, half), (half, half)).into_owned())?;
    let hj = log_det(&joint)?;
    Ok((0.5 * (ha + hb - hj)).max(0.0))
}

/// Regional mutual information of two equally shaped images.
///
/// Every interior pixel contributes the stacked `(2r+1)²` neighbourhoods of
/// `a` and `b`. The joint covariance of those vectors, with a ridge of
/// `1e-9·trace/d`, gives the Gaussian entropy estimate
/// `H(Σ_a) + H(Σ_b) − H(Σ)`.
pub fn regional_mutual_information(a: &Grid, b: &Grid, radius: usize) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Shape(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    rmi_between(&Regions::new(a, radius)?, &Regions::new(b, radius)?, None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmiProfile {
    /// Normalized, temporally averaged RMI; index 0 is level 1.
    pub m_avg: Vec<f64>,
    pub selected_level: usize,
}

/// Smallest `L ≥ 2` whose next drop `M(L) − M(L+1)` is below `tau` times the
/// first drop `M(1) − M(2)`; the deepest level when the curve never flattens.
pub fn stagnation_level(m_avg: &[f64], tau: f64) -> Result<usize> {
    let l_max = m_avg.len();
    if l_max < 2 {
        return Err(Error::Config(format!("level profile needs at least 2 levels, got {l_max}")));
    }
    let first_drop = m_avg[0] - m_avg[1];
    Ok((2..l_max).find(|&l| m_avg[l - 1] - m_avg[l] < tau * first_drop).unwrap_or(l_max))
}

/// RMI between each raw frame and its full-resolution level-`L`
/// approximation, normalized by the frame's self-RMI and averaged over time
/// for `L = 1..=l_max`. Constant frames carry no information and are left
/// out of the average.
pub fn select_level(cube: &DataCube, basis: &str, l_max: usize, radius: usize, tau: f64) -> Result<RmiProfile> {
    if l_max < 2 {
        return Err(Error::Config(format!("l_max must be at least 2, got {l_max}")));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::Config(format!("tau must be positive, got {tau}")));
    }
    let spec = catalog_lookup(basis)?;
    let per_frame: Vec<Option<Vec<f64>>> = (0..cube.nt())
        .into_par_iter()
        .map(|t| {
            let frame = cube.frame(t);
            let tree = decompose_with(&frame, &spec, l_max, BoundaryMode::default())?;
            let raw = Regions::new(&frame, radius)?;
            let caa = raw.gram();
            let own = rmi_between(&raw, &raw, Some(&caa))?;
            if own == 0.0 {
                return Ok(None);
            }
            (1..=l_max)
                .map(|l| {
                    let approx = Regions::new(&approximation_image(&tree, l)?, radius)?;
                    Ok(rmi_between(&raw, &approx, Some(&caa))? / own)
                })
                .collect::<Result<Vec<_>>>()
                .map(Some)
        })
        .collect::<Result<_>>()?;
    let informative: Vec<&Vec<f64>> = per_frame.iter().flatten().collect();
    if informative.is_empty() {
        return Err(Error::Degenerate("every frame is constant".into()));
    }
    let mut m_avg = vec![0.0; l_max];
    for row in &informative {
        m_avg.iter_mut().zip(row.iter()).for_each(|(m, v)| *m += v);
    }
    m_avg.iter_mut().for_each(|m| *m /= informative.len() as f64);
    let selected_level = stagnation_level(&m_avg, tau)?;
    Ok(RmiProfile { m_avg, selected_level })
}

/// `level,m_avg,selected` with one row per level.
pub fn rmi_csv(profile: &RmiProfile) -> String {
    let mut out = String::from("level,m_avg,selected\n");
    for (i, m) in profile.m_avg.iter().enumerate() {
        let l = i + 1;
        out.push_str(&format!("{l},{m},{}\n", u8::from(l == profile.selected_level)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datacube::FrameWindow;
    use crate::phantom::{default_background_windows, STANDARD_FAULTS};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn truth() -> GroundTruth {
        GroundTruth {
            faults: STANDARD_FAULTS.to_vec(),
            background_windows: default_background_windows(160),
            px_per_mm: 1.0,
        }
    }

    fn noise(rows: usize, cols: usize, seed: u64) -> Grid {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Grid::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn stamp(map: &mut Grid, win: &FrameWindow, patch: &Grid) {
        let h = win.half_extent;
        for i in 0..patch.rows() {
            for j in 0..patch.cols() {
                map.as_mut_slice()[(win.center.0 + i - h) * 200 + win.center.1 + j - h] = patch[(i, j)];
            }
        }
    }

    #[test]
    fn identical_fault_windows_cost_nothing() {
        let t = truth();
        let patch = Grid::from_fn(11, 11, |i, j| 1.0 + (i * j) as f64 * 0.1);
        let mut map = Grid::zeros(160, 200);
        for w in t.fault_windows(5) {
            stamp(&mut map, &w, &patch);
        }
        let (nums, den) = map_cost(&map, &t, 5).unwrap();
        assert_eq!(nums.len(), 11);
        assert!(nums.iter().all(|&n| n == 0.0));
        assert!(den > 0.0);
    }

    #[test]
    fn cost_oracle() {
        let t = truth();
        let map = noise(160, 200, 3);
        let (nums, den) = map_cost(&map, &t, 5).unwrap();
        let win = |r: usize, c: usize| -> Vec<f64> {
            let mut v = Vec::new();
            for i in r - 5..=r + 5 {
                for j in c - 5..=c + 5 {
                    v.push(map[(i, j)]);
                }
            }
            v
        };
        let w1 = win(39, 167);
        let mut bg = Vec::new();
        for w in &t.background_windows {
            bg.extend(win(w.center.0, w.center.1));
        }
        let b_avg = bg.iter().sum::<f64>() / bg.len() as f64;
        let expect_den = w1.iter().map(|v| (v - b_avg).powi(2)).sum::<f64>().sqrt();
        assert!((den - expect_den).abs() < 1e-12);
        let w12 = win(130, 31);
        let expect = w1.iter().zip(&w12).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        assert!((nums[10] - expect).abs() < 1e-12);
    }

    #[test]
    fn flat_map_is_degenerate() {
        let map = Grid::filled(160, 200, 2.5);
        assert!(matches!(map_cost(&map, &truth(), 5), Err(Error::Degenerate(_))));
    }

    #[test]
    fn cost_needs_two_faults() {
        let mut t = truth();
        t.faults.truncate(1);
        assert!(matches!(map_cost(&Grid::zeros(160, 200), &t, 5), Err(Error::Config(_))));
    }

    fn score(name: &str, cost: f64) -> BasisScore {
        BasisScore { basis: name.into(), cost, per_fault_numerators: vec![cost], denominator: 1.0 }
    }

    #[test]
    fn ties_go_to_smaller_name() {
        let scores = [score("sym4", 1.0), score("db4", 1.0), score("haar", 2.0)];
        assert_eq!(best_score(&scores).unwrap().basis, "db4");
        let reversed: Vec<_> = scores.iter().rev().cloned().collect();
        assert_eq!(best_score(&reversed).unwrap().basis, "db4");
    }

    #[test]
    fn scores_csv_layout() {
        let csv = basis_scores_csv(&[score("db4", 0.5)]);
        assert_eq!(csv, "basis,cost,numerator,denominator\ndb4,0.5,0.5,1\n");
    }

    #[test]
    fn rmi_shape_mismatch() {
        let r = regional_mutual_information(&Grid::zeros(8, 8), &Grid::zeros(8, 9), 1);
        assert!(matches!(r, Err(Error::Shape(_))));
        let r = regional_mutual_information(&Grid::zeros(2, 8), &Grid::zeros(2, 8), 1);
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn self_rmi_normalizes_to_one() {
        let a = noise(40, 50, 1);
        let own = regional_mutual_information(&a, &a, 1).unwrap();
        assert!(own > 0.0);
        let shifted = a.map(|v| v + 7.5);
        let rel = regional_mutual_information(&a, &shifted, 1).unwrap() / own;
        assert!((rel - 1.0).abs() < 1e-6, "{rel}");
    }

    #[test]
    fn independent_noise_shares_little() {
        let a = noise(160, 200, 11);
        let b = noise(160, 200, 12);
        let own = regional_mutual_information(&a, &a, 1).unwrap();
        let cross = regional_mutual_information(&a, &b, 1).unwrap();
        assert!(cross / own < 0.05, "{}", cross / own);
    }

    #[test]
    fn gaussian_entropy_oracle_for_correlated_pairs() {
        // radius 0: one scalar per image, so RMI is the bivariate Gaussian
        // mutual information -½·ln(1 − ρ²).
        let a = noise(120, 120, 5);
        let e = noise(120, 120, 6);
        let b = a.zip_with(&e, |x, y| x + 0.5 * y).unwrap();
        let (n, ma, mb) = (a.as_slice().len() as f64, a.mean(), b.mean());
        let cab = a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / n;
        let va = a.as_slice().iter().map(|x| (x - ma).powi(2)).sum::<f64>() / n;
        let vb = b.as_slice().iter().map(|y| (y - mb).powi(2)).sum::<f64>() / n;
        let eps = 1e-9 * (va + vb) / 2.0;
        let (va, vb) = (va + eps, vb + eps);
        let expect = 0.5 * (va * vb / (va * vb - cab * cab)).ln();
        let got = regional_mutual_information(&a, &b, 0).unwrap();
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
    }

    #[test]
    fn stagnation_rule() {
        let profile = [1.0, 0.8, 0.62, 0.46, 0.32, 0.2, 0.19, 0.185];
        assert_eq!(stagnation_level(&profile, 0.2).unwrap(), 6);
        assert_eq!(stagnation_level(&[1.0, 0.5, 0.45, 0.44], 0.2).unwrap(), 2);
        assert_eq!(stagnation_level(&[1.0, 0.9, 0.8, 0.7], 0.2).unwrap(), 4);
        assert!(matches!(stagnation_level(&[1.0], 0.2), Err(Error::Config(_))));
    }

    #[test]
    fn select_level_rejects_shallow_lmax() {
        let cube = DataCube::new(16, 16, 1.0, vec![1.0; 256], false).unwrap();
        assert!(matches!(select_level(&cube, "haar", 1, 1, 0.2), Err(Error::Config(_))));
    }

    #[test]
    fn white_noise_stops_early() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let data = (0..64 * 64 * 4).map(|_| rng.gen_range(-1.0f32..1.0)).collect();
        let cube = DataCube::new(64, 64, 1.0, data, false).unwrap();
        let profile = select_level(&cube, "db4", 4, 1, 0.2).unwrap();
        assert_eq!(profile.selected_level, 2, "{:?}", profile.m_avg);
        assert!(profile.m_avg.windows(2).all(|w| w[1] <= w[0] + 1e-6));
    }

    #[test]
    fn rmi_csv_marks_selection() {
        let p = RmiProfile { m_avg: vec![0.5, 0.25], selected_level: 2 };
        assert_eq!(rmi_csv(&p), "level,m_avg,selected\n1,0.5,0\n2,0.25,1\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn rmi_is_symmetric(seed in any::<u64>(), rows in 8usize..24, cols in 8usize..24) {
            let a = noise(rows, cols, seed);
            let b = a.zip_with(&noise(rows, cols, seed ^ 1), |x, y| x * 0.3 + y).unwrap();
            let ab = regional_mutual_information(&a, &b, 1).unwrap();
            let ba = regional_mutual_information(&b, &a, 1).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-9 * ab.abs().max(1.0));
        }

        #[test]
        fn cost_is_scale_invariant(seed in any::<u64>(), factor in 0.01f64..100.0) {
            let t = truth();
            let map = noise(160, 200, seed);
            let (n0, d0) = map_cost(&map, &t, 5).unwrap();
            let (n1, d1) = map_cost(&map.scale(factor), &t, 5).unwrap();
            let c0 = n0.iter().sum::<f64>() / d0;
            let c1 = n1.iter().sum::<f64>() / d1;
            prop_assert!((c0 - c1).abs() <= 1e-8 * c0);
        }
    }
}
