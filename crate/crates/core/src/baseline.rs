//! Temporal SVD filtering with skewness and kurtosis maps, the comparator
//! for the wavelet detector.

use std::ops::RangeInclusive;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::datacube::DataCube;
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Default useful rank range (1-based, inclusive).
pub const DEFAULT_USEFUL_RANKS: (usize, usize) = (2, 10);

/// One row per pixel in row-major frame order, one column per frame.
pub fn unfold(cube: &DataCube) -> DMatrix<f64> {
    let ns = cube.nx() * cube.ny();
    let mut m = DMatrix::zeros(ns, cube.nt());
    for (t, mut column) in m.column_iter_mut().enumerate() {
        for (dst, &src) in column.iter_mut().zip(cube.frame_slice(t)) {
            *dst = f64::from(src);
        }
    }
    m
}

/// Inverse of [`unfold`].
pub fn fold(matrix: &DMatrix<f64>, nx: usize, ny: usize, te_s: f64) -> Result<DataCube> {
    if matrix.nrows() != nx * ny {
        return Err(Error::Shape(format!("{} rows cannot fold into {nx}x{ny} frames", matrix.nrows())));
    }
    let data = matrix.as_slice().iter().map(|&v| v as f32).collect();
    DataCube::new(nx, ny, te_s, data, false)
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

/// Singular values and the orthonormal basis of the smaller side.
#[derive(Debug, Clone)]
pub struct SingularSystem {
    /// Descending, nonnegative.
    pub values: Vec<f64>,
    /// Eigenvectors of the Gram matrix, one column per singular value.
    basis: DMatrix<f64>,
    /// Whether `basis` spans the column space (time side) or row space.
    temporal: bool,
}

impl SingularSystem {
    /// Eigen-decomposition of `XᵀX` or `XXᵀ`, whichever is smaller.
    pub fn new(matrix: &DMatrix<f64>) -> Result<Self> {
        let (ns, nt) = matrix.shape();
        if ns == 0 || nt == 0 {
            return Err(Error::Config("empty matrix".into()));
        }
        let temporal = nt <= ns;
        let gram = if temporal {
            let cols: Vec<&[f64]> = (0..nt).map(|j| &matrix.as_slice()[j * ns..(j + 1) * ns]).collect();
            let upper: Vec<Vec<f64>> =
                (0..nt).into_par_iter().map(|i| (i..nt).map(|j| dot(cols[i], cols[j])).collect()).collect();
            DMatrix::from_fn(nt, nt, |i, j| {
                let (i, j) = if i <= j { (i, j) } else { (j, i) };
                upper[i][j - i]
            })
        } else {
            matrix * matrix.transpose()
        };
        let eig = SymmetricEigen::new(gram);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
        let values = order.iter().map(|&k| eig.eigenvalues[k].max(0.0).sqrt()).collect();
        let basis = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(SingularSystem { values, basis, temporal })
    }

    pub fn rank_count(&self) -> usize {
        self.values.len()
    }

    /// `σ₁² / Σσ²`.
    pub fn leading_energy_fraction(&self) -> f64 {
        let total: f64 = self.values.iter().map(|s| s * s).sum();
        if total == 0.0 {
            0.0
        } else {
            self.values[0] * self.values[0] / total
        }
    }

    /// Reconstruction of `matrix` from singular ranks `ranks` (1-based).
    pub fn filter(&self, matrix: &DMatrix<f64>, ranks: RangeInclusive<usize>) -> Result<DMatrix<f64>> {
        check_ranks(&ranks, self.rank_count())?;
        let cols = self.basis.columns(ranks.start() - 1, ranks.end() - ranks.start() + 1);
        Ok(if self.temporal { (matrix * cols) * cols.transpose() } else { cols * (cols.transpose() * matrix) })
    }
}

fn check_ranks(ranks: &RangeInclusive<usize>, count: usize) -> Result<()> {
    if ranks.is_empty() || *ranks.start() == 0 {
        return Err(Error::Config(format!("empty rank range {ranks:?}")));
    }
    if *ranks.end() > count {
        return Err(Error::Config(format!("rank range {ranks:?} exceeds the {count} available ranks")));
    }
    Ok(())
}

/// Reconstruction from ranks `ranks` (1-based, inclusive).
pub fn svd_filter(matrix: &DMatrix<f64>, ranks: RangeInclusive<usize>) -> Result<DMatrix<f64>> {
    SingularSystem::new(matrix)?.filter(matrix, ranks)
}

/// Partition of the singular ranks into background, useful and noise sets.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdSplit {
    pub background_rank: usize,
    pub useful_ranks: RangeInclusive<usize>,
    /// Empty when the useful range reaches the last rank.
    pub noise_ranks: RangeInclusive<usize>,
    pub singular_values: Vec<f64>,
}

impl SvdSplit {
    /// Rank 1 is background; `useful` must start after it.
    pub fn new(singular_values: Vec<f64>, useful: (usize, usize)) -> Result<Self> {
        let (lo, hi) = useful;
        if lo < 2 {
            return Err(Error::Config(format!("useful ranks must start at 2 or later, got {lo}")));
        }
        check_ranks(&(lo..=hi), singular_values.len())?;
        Ok(SvdSplit {
            background_rank: 1,
            useful_ranks: lo..=hi,
            noise_ranks: hi + 1..=singular_values.len(),
            singular_values,
        })
    }
}

/// Per-pixel temporal skewness and excess kurtosis.
#[derive(Debug, Clone)]
pub struct HosMaps {
    pub skewness: Grid,
    pub kurtosis: Grid,
    /// Row indices whose temporal variance vanished; both maps hold 0 there.
    pub flagged: Vec<usize>,
}

/// Biased-moment skewness and excess kurtosis of one series, or `None` when
/// its second moment is at most `floor`.
pub fn standardized_moments(series: &[f64], floor: f64) -> Option<(f64, f64)> {
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in series {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    if m2 <= floor {
        return None;
    }
    Some((m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0))
}

/// Moment maps over the rows of a filtered `Ns×Nt` matrix.
pub fn hos_maps(filtered: &DMatrix<f64>, shape: (usize, usize)) -> Result<HosMaps> {
    let (ns, nt) = filtered.shape();
    if nt < 4 {
        return Err(Error::Config(format!("moment maps need at least 4 frames, got {nt}")));
    }
    if ns != shape.0 * shape.1 {
        return Err(Error::Shape(format!("{ns} rows for a {}x{} frame", shape.0, shape.1)));
    }
    let scale = filtered.amax();
    let floor = (1e-12 * scale).powi(2);
    let rows: Vec<Option<(f64, f64)>> = (0..ns)
        .into_par_iter()
        .map(|s| {
            let series: Vec<f64> = filtered.row(s).iter().copied().collect();
            standardized_moments(&series, floor)
        })
        .collect();
    let mut flagged = Vec::new();
    let mut skew = Vec::with_capacity(ns);
    let mut kurt = Vec::with_capacity(ns);
    for (s, r) in rows.into_iter().enumerate() {
        let (g1, g2) = r.unwrap_or_else(|| {
            flagged.push(s);
            (0.0, 0.0)
        });
        skew.push(g1);
        kurt.push(g2);
    }
    Ok(HosMaps {
        skewness: Grid::from_vec(shape.0, shape.1, skew)?,
        kurtosis: Grid::from_vec(shape.0, shape.1, kurt)?,
        flagged,
    })
}

/// Full baseline: unfold, keep the `useful` ranks, then moment maps.
pub fn svd_hos(cube: &DataCube, useful: (usize, usize)) -> Result<(SvdSplit, HosMaps)> {
    let x = unfold(cube);
    let system = SingularSystem::new(&x)?;
    let split = SvdSplit::new(system.values.clone(), useful)?;
    let filtered = system.filter(&x, split.useful_ranks.clone())?;
    let maps = hos_maps(&filtered, cube.frame_shape())?;
    Ok((split, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).amax()
    }

    /// Two-pass textbook moments, independent of `standardized_moments`.
    fn oracle(series: &[f64]) -> (f64, f64) {
        let n = series.len() as f64;
        let mean = series.iter().sum::<f64>() / n;
        let m = |k: i32| series.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n;
        (m(3) / m(2).powf(1.5), m(4) / m(2).powi(2) - 3.0)
    }

    #[test]
    fn unfold_fold_round_trip() {
        let data: Vec<f32> = (0..12).map(|v| v as f32).collect();
        let cube = DataCube::new(2, 2, 1.0, data.clone(), false).unwrap();
        let m = unfold(&cube);
        assert_eq!(m.shape(), (4, 3));
        assert_eq!(m[(1, 0)], 1.0);
        assert_eq!(m[(2, 1)], 6.0);
        let back = fold(&m, 2, 2, 1.0).unwrap();
        assert_eq!(back.as_slice(), &data[..]);
        assert!(matches!(fold(&m, 3, 2, 1.0), Err(Error::Shape(_))));
    }

    #[test]
    fn constant_cube_is_rank_one() {
        let cube = DataCube::new(3, 4, 1.0, vec![2.5; 3 * 4 * 5], false).unwrap();
        let sys = SingularSystem::new(&unfold(&cube)).unwrap();
        assert!(sys.values[1] < 1e-7 * sys.values[0]);
        assert!((sys.leading_energy_fraction() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_ranks_restore_the_matrix() {
        for (r, c) in [(50, 20), (20, 50)] {
            let m = random(r, c, 1);
            let n = r.min(c);
            assert!(max_diff(&svd_filter(&m, 1..=n).unwrap(), &m) < 1e-8);
        }
    }

    #[test]
    fn rank_one_matrix_has_no_tail() {
        let u = random(30, 1, 2);
        let v = random(1, 12, 3);
        let m = &u * &v;
        let tail = svd_filter(&m, 2..=12).unwrap();
        assert!(tail.amax() < 1e-8);
    }

    #[test]
    fn split_ranks_sum_to_original() {
        let m = random(50, 20, 4);
        let sys = SingularSystem::new(&m).unwrap();
        let sum = sys.filter(&m, 1..=1).unwrap() + sys.filter(&m, 2..=20).unwrap();
        assert!(max_diff(&sum, &m) < 1e-8);
    }

    #[test]
    fn singular_values_match_nalgebra_svd() {
        let m = random(40, 15, 5);
        let ours = SingularSystem::new(&m).unwrap().values;
        let mut theirs: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn empty_or_oversized_ranges_rejected() {
        let m = random(10, 5, 6);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(matches!(svd_filter(&m, empty), Err(Error::Config(_))));
        assert!(matches!(svd_filter(&m, 0..=2), Err(Error::Config(_))));
        assert!(matches!(svd_filter(&m, 2..=6), Err(Error::Config(_))));
    }

    #[test]
    fn split_partitions_ranks() {
        let split = SvdSplit::new(vec![5.0, 4.0, 3.0, 2.0, 1.0], (2, 3)).unwrap();
        assert_eq!(split.background_rank, 1);
        assert_eq!(split.useful_ranks, 2..=3);
        assert_eq!(split.noise_ranks, 4..=5);
        let full = SvdSplit::new(vec![5.0, 4.0, 3.0], (2, 3)).unwrap();
        assert!(full.noise_ranks.is_empty());
        assert!(matches!(SvdSplit::new(vec![1.0; 3], (1, 2)), Err(Error::Config(_))));
    }

    #[test]
    fn symmetric_row_has_zero_skew() {
        let (g1, _) = standardized_moments(&[-1.0, 0.0, 1.0, 0.0], 0.0).unwrap();
        assert_eq!(g1, 0.0);
    }

    #[test]
    fn constant_rows_are_flagged() {
        let mut m = random(6, 8, 7);
        m.row_mut(4).fill(3.0);
        let maps = hos_maps(&m, (2, 3)).unwrap();
        assert_eq!(maps.flagged, vec![4]);
        assert_eq!(maps.skewness[(1, 1)], 0.0);
        assert_eq!(maps.kurtosis[(1, 1)], 0.0);
    }

    #[test]
    fn moments_match_oracle() {
        let pattern: Vec<f64> = [0.0, 0.0, 0.0, 1.0].iter().copied().cycle().take(32).collect();
        let (g1, g2) = standardized_moments(&pattern, 0.0).unwrap();
        let (e1, e2) = oracle(&pattern);
        assert!((g1 - e1).abs() < 1e-10 && (g2 - e2).abs() < 1e-10);
        // {0,0,0,1}: p = 1/4, skew (1−2p)/√(p(1−p)), excess kurtosis (1−6p(1−p))/(p(1−p)).
        let p: f64 = 0.25;
        let q = p * (1.0 - p);
        assert!((g1 - (1.0 - 2.0 * p) / q.sqrt()).abs() < 1e-10);
        assert!((g2 - (1.0 - 6.0 * q) / q).abs() < 1e-10);
    }

    #[test]
    fn maps_match_oracle_rowwise() {
        let m = random(12, 30, 8);
        let maps = hos_maps(&m, (3, 4)).unwrap();
        for s in 0..12 {
            let row: Vec<f64> = m.row(s).iter().copied().collect();
            let (e1, e2) = oracle(&row);
            assert!((maps.skewness[(s / 4, s % 4)] - e1).abs() < 1e-10);
            assert!((maps.kurtosis[(s / 4, s % 4)] - e2).abs() < 1e-10);
        }
    }

    #[test]
    fn hos_preconditions() {
        assert!(matches!(hos_maps(&random(4, 3, 1), (2, 2)), Err(Error::Config(_))));
        assert!(matches!(hos_maps(&random(4, 6, 1), (2, 3)), Err(Error::Shape(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn energy_partition(seed in any::<u64>(), r in 2usize..40, c in 2usize..40) {
            let m = random(r, c, seed);
            let sys = SingularSystem::new(&m).unwrap();
            let energy: f64 = sys.values.iter().map(|s| s * s).sum();
            let frob = m.norm_squared();
            prop_assert!((energy - frob).abs() <= 1e-8 * frob);
            prop_assert!(sys.values.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn disjoint_filters_are_orthogonal(seed in any::<u64>(), split in 1usize..11) {
            let m = random(30, 12, seed);
            let sys = SingularSystem::new(&m).unwrap();
            let a = sys.filter(&m, 1..=split).unwrap();
            let b = sys.filter(&m, split + 1..=12).unwrap();
            let inner = a.dot(&b) / (a.norm() * b.norm()).max(f64::MIN_POSITIVE);
            prop_assert!(inner.abs() <= 1e-6);
        }

        #[test]
        fn skewness_is_affine_invariant(seed in any::<u64>(), a in 0.1f64..10.0, b in -50.0f64..50.0) {
            let m = random(6, 20, seed);
            let t = m.map(|v| a * v + b);
            let s0 = hos_maps(&m, (2, 3)).unwrap().skewness;
            let s1 = hos_maps(&t, (2, 3)).unwrap().skewness;
            prop_assert!(s0.sub(&s1).unwrap().max_abs() <= 1e-9);
        }
    }
}
