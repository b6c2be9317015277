//! Multilevel separable 2D discrete wavelet transform.
//!
//! Each level filters along rows first, then along columns, producing an
//! approximation and three oriented detail sub-bands. Synthesis can keep any
//! subset of levels, which is how the background, useful and noise subspaces
//! of a frame are separated.

mod catalog;
mod taps;

pub use catalog::{catalog_lookup, catalog_names, Family, WaveletSpec, SELECTION_CATALOG};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// How a finite signal is extended past its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// Whole-point mirror (`x[-1] = x[1]`). Sub-bands hold `⌊(n+F−1)/2⌋`
    /// coefficients so that every sample is exactly recoverable.
    #[default]
    Symmetric,
    /// Periodization: critically sampled, `⌈n/2⌉` coefficients, odd lengths
    /// padded by repeating the last sample.
    Periodic,
}

pub fn coefficient_len(n: usize, filter_len: usize, mode: BoundaryMode) -> usize {
    match mode {
        BoundaryMode::Symmetric => (n + filter_len - 1) / 2,
        BoundaryMode::Periodic => n.div_ceil(2),
    }
}

/// Deepest level admitted for a frame shape.
///
/// Zero when the shorter side cannot hold one copy of the filter; otherwise
/// the number of dyadic halvings (`n → ⌈n/2⌉`) that leave at least two samples.
pub fn max_levels(shape: (usize, usize), basis: &WaveletSpec) -> usize {
    let mut n = shape.0.min(shape.1);
    if n < basis.filter_len() {
        return 0;
    }
    let mut levels = 0;
    while n.div_ceil(2) >= 2 {
        n = n.div_ceil(2);
        levels += 1;
    }
    levels
}

fn reflect(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m < n as isize {
        m as usize
    } else {
        (period - m) as usize
    }
}

/// Filters and downsamples one signal with both analysis filters.
///
/// `lo_rev`/`hi_rev` are the analysis filters reversed, so each output is a
/// dot product with a contiguous slice of the extended signal.
fn analyze_1d(
    x: &[f64],
    lo_rev: &[f64],
    hi_rev: &[f64],
    mode: BoundaryMode,
    ext: &mut Vec<f64>,
    approx: &mut [f64],
    detail: &mut [f64],
) {
    let n = x.len();
    let f = lo_rev.len();
    let k = approx.len();
    // ext[i] holds x at index i + 2 − F, covering [2 − F, 2K − 1].
    ext.clear();
    let offset = 2 - f as isize;
    match mode {
        BoundaryMode::Symmetric => {
            ext.extend((0..2 * k + f - 2).map(|i| x[reflect(i as isize + offset, n)]));
        }
        BoundaryMode::Periodic => {
            let padded = n + n % 2;
            ext.extend((0..2 * k + f - 2).map(|i| {
                let j = (i as isize + offset).rem_euclid(padded as isize) as usize;
                x[j.min(n - 1)]
            }));
        }
    }
    for kk in 0..k {
        let window = &ext[2 * kk..2 * kk + f];
        let mut a = 0.0;
        let mut d = 0.0;
        for ((w, l), h) in window.iter().zip(lo_rev).zip(hi_rev) {
            a += w * l;
            d += w * h;
        }
        approx[kk] = a;
        detail[kk] = d;
    }
}

/// Upsamples and filters one approximation/detail pair back to `out.len()`
/// samples. `detail` may be absent (treated as zeros).
fn synthesize_1d(
    approx: &[f64],
    detail: Option<&[f64]>,
    rec_lo: &[f64],
    rec_hi: &[f64],
    mode: BoundaryMode,
    acc: &mut Vec<f64>,
    out: &mut [f64],
) {
    let n = out.len();
    let f = rec_lo.len();
    let k = approx.len();
    // acc[i] collects output index i − (F − 2).
    acc.clear();
    acc.resize(2 * k + f - 2, 0.0);
    for kk in 0..k {
        let a = approx[kk];
        let dst = &mut acc[2 * kk..2 * kk + f];
        match detail {
            Some(d) => {
                let d = d[kk];
                for ((o, l), h) in dst.iter_mut().zip(rec_lo).zip(rec_hi) {
                    *o += a * l + d * h;
                }
            }
            None => {
                for (o, l) in dst.iter_mut().zip(rec_lo) {
                    *o += a * l;
                }
            }
        }
    }
    let shift = f as isize - 2;
    match mode {
        BoundaryMode::Symmetric => {
            for (m, o) in out.iter_mut().enumerate() {
                *o = acc[(m as isize + shift) as usize];
            }
        }
        BoundaryMode::Periodic => {
            let padded = (n + n % 2) as isize;
            out.iter_mut().for_each(|o| *o = 0.0);
            for (i, v) in acc.iter().enumerate() {
                let m = (i as isize - shift).rem_euclid(padded) as usize;
                if m < n {
                    out[m] += v;
                }
            }
        }
    }
}

/// Applies `analyze_1d` to every row; returns (low, high) grids.
fn analyze_rows(input: &Grid, basis: &WaveletSpec, mode: BoundaryMode) -> (Grid, Grid) {
    let (rows, cols) = input.shape();
    let k = coefficient_len(cols, basis.filter_len(), mode);
    let lo_rev: Vec<f64> = basis.dec_lo().iter().rev().copied().collect();
    let hi_rev: Vec<f64> = basis.dec_hi().iter().rev().copied().collect();
    let mut low = Grid::zeros(rows, k);
    let mut high = Grid::zeros(rows, k);
    let mut ext = Vec::new();
    for r in 0..rows {
        let (a, d) = (&mut low.as_mut_slice()[r * k..(r + 1) * k], &mut high.as_mut_slice()[r * k..(r + 1) * k]);
        analyze_1d(input.row(r), &lo_rev, &hi_rev, mode, &mut ext, a, d);
    }
    (low, high)
}

fn synthesize_rows(low: &Grid, high: Option<&Grid>, basis: &WaveletSpec, mode: BoundaryMode, out_cols: usize) -> Grid {
    let rows = low.rows();
    let mut out = Grid::zeros(rows, out_cols);
    let mut acc = Vec::new();
    for r in 0..rows {
        let dst = &mut out.as_mut_slice()[r * out_cols..(r + 1) * out_cols];
        synthesize_1d(low.row(r), high.map(|h| h.row(r)), basis.rec_lo(), basis.rec_hi(), mode, &mut acc, dst);
    }
    out
}

/// The three oriented detail sub-bands of one level.
///
/// The first letter names the filter applied along rows (horizontal pass),
/// the second the filter applied along columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SubBands {
    pub lh: Grid,
    pub hl: Grid,
    pub hh: Grid,
}

impl SubBands {
    /// `LH + HL + HH`: the level's detail as a single image.
    pub fn summed(&self) -> Grid {
        let s = self.lh.add(&self.hl).expect("sub-bands share a shape");
        s.add(&self.hh).expect("sub-bands share a shape")
    }

    fn zeros_like(shape: (usize, usize)) -> SubBands {
        SubBands {
            lh: Grid::zeros(shape.0, shape.1),
            hl: Grid::zeros(shape.0, shape.1),
            hh: Grid::zeros(shape.0, shape.1),
        }
    }

    pub fn energy(&self) -> f64 {
        self.lh.sum_squares() + self.hl.sum_squares() + self.hh.sum_squares()
    }
}

/// One 2D analysis step: returns the approximation and the detail triplet.
pub fn analyze_2d(input: &Grid, basis: &WaveletSpec, mode: BoundaryMode) -> (Grid, SubBands) {
    let (low, high) = analyze_rows(input, basis, mode);
    let (ll, lh) = analyze_rows(&low.transpose(), basis, mode);
    let (hl, hh) = analyze_rows(&high.transpose(), basis, mode);
    (ll.transpose(), SubBands { lh: lh.transpose(), hl: hl.transpose(), hh: hh.transpose() })
}

/// One 2D synthesis step back to `out_shape`. A missing detail triplet is
/// treated as all zeros.
pub fn synthesize_2d(
    approx: &Grid,
    details: Option<&SubBands>,
    basis: &WaveletSpec,
    mode: BoundaryMode,
    out_shape: (usize, usize),
) -> Grid {
    let (rows, cols) = out_shape;
    let low =
        synthesize_rows(&approx.transpose(), details.map(|d| d.lh.transpose()).as_ref(), basis, mode, rows).transpose();
    let out = match details {
        Some(d) => {
            let high = synthesize_rows(&d.hl.transpose(), Some(&d.hh.transpose()), basis, mode, rows).transpose();
            synthesize_rows(&low, Some(&high), basis, mode, cols)
        }
        None => synthesize_rows(&low, None, basis, mode, cols),
    };
    debug_assert_eq!(out.shape(), out_shape);
    out
}

/// Per-frame wavelet pyramid.
#[derive(Debug, Clone)]
pub struct DecompositionTree {
    basis: WaveletSpec,
    mode: BoundaryMode,
    input_shape: (usize, usize),
    // level_shapes[l] is the shape of the input to level l + 1
    level_shapes: Vec<(usize, usize)>,
    approximations: Vec<Grid>,
    details: Vec<SubBands>,
    summed_details: Vec<Grid>,
}

impl DecompositionTree {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn basis(&self) -> &WaveletSpec {
        &self.basis
    }

    pub fn boundary_mode(&self) -> BoundaryMode {
        self.mode
    }

    pub fn input_shape(&self) -> (usize, usize) {
        self.input_shape
    }

    /// `A_level`, 1-based.
    pub fn approximation(&self, level: usize) -> &Grid {
        &self.approximations[level - 1]
    }

    /// Oriented detail triplet of `level`, 1-based.
    pub fn sub_bands(&self, level: usize) -> &SubBands {
        &self.details[level - 1]
    }

    /// `D_level = LH + HL + HH` at the level's own resolution, 1-based.
    pub fn detail(&self, level: usize) -> &Grid {
        &self.summed_details[level - 1]
    }

    fn refresh(&mut self) {
        self.summed_details = self.details.iter().map(SubBands::summed).collect();
    }

    /// Synthesizes back to full resolution keeping the coarsest approximation
    /// only if `keep_approx`, and details only for levels inside `band`.
    pub fn synthesize(&self, keep_approx: bool, band: Option<(usize, usize)>) -> Grid {
        self.synthesize_levels(keep_approx, |l| band.is_some_and(|(lo, hi)| lo <= l && l <= hi))
    }

    /// Synthesis keeping the detail levels for which `keep` holds.
    pub fn synthesize_levels(&self, keep_approx: bool, keep: impl Fn(usize) -> bool) -> Grid {
        let levels = self.levels();
        // Everything above `top` is zero and need not be synthesized.
        let top = if keep_approx { levels } else { (1..=levels).rev().find(|&l| keep(l)).unwrap_or(0) };
        if top == 0 {
            return Grid::zeros(self.input_shape.0, self.input_shape.1);
        }
        let mut current = if keep_approx {
            self.approximations[levels - 1].clone()
        } else {
            let (r, c) = self.details[top - 1].lh.shape();
            Grid::zeros(r, c)
        };
        for l in (1..=top).rev() {
            let details = keep(l).then(|| &self.details[l - 1]);
            current = synthesize_2d(&current, details, &self.basis, self.mode, self.level_shapes[l - 1]);
        }
        current
    }
}

/// Decomposes `frame` over `levels` levels with the default boundary mode.
pub fn decompose(frame: &Grid, basis: &WaveletSpec, levels: usize) -> Result<DecompositionTree> {
    decompose_with(frame, basis, levels, BoundaryMode::default())
}

pub fn decompose_with(
    frame: &Grid,
    basis: &WaveletSpec,
    levels: usize,
    mode: BoundaryMode,
) -> Result<DecompositionTree> {
    let limit = max_levels(frame.shape(), basis);
    if levels == 0 || levels > limit {
        return Err(Error::Level(format!(
            "{levels} levels requested; {} admits 1..={limit} on a {}x{} frame",
            basis.name(),
            frame.rows(),
            frame.cols()
        )));
    }
    if !frame.is_finite() {
        return Err(Error::Data("frame contains non-finite values".into()));
    }
    let mut level_shapes = Vec::with_capacity(levels);
    let mut approximations = Vec::with_capacity(levels);
    let mut details = Vec::with_capacity(levels);
    let mut current = frame.clone();
    for _ in 0..levels {
        level_shapes.push(current.shape());
        let (approx, bands) = analyze_2d(&current, basis, mode);
        details.push(bands);
        approximations.push(approx.clone());
        current = approx;
    }
    let summed_details = details.iter().map(SubBands::summed).collect();
    Ok(DecompositionTree {
        basis: *basis,
        mode,
        input_shape: frame.shape(),
        level_shapes,
        approximations,
        details,
        summed_details,
    })
}

/// Reconstruction from the detail levels `l_lo..=l_hi` only.
pub fn reconstruct_band(tree: &DecompositionTree, l_lo: usize, l_hi: usize) -> Result<Grid> {
    if l_lo == 0 || l_lo > l_hi || l_hi > tree.levels() {
        return Err(Error::Level(format!("band {l_lo}:{l_hi} outside 1..={}", tree.levels())));
    }
    Ok(tree.synthesize(false, Some((l_lo, l_hi))))
}

/// Reconstruction from the coarsest approximation alone.
pub fn reconstruct_approximation(tree: &DecompositionTree) -> Grid {
    tree.synthesize(true, None)
}

/// Exact inverse of [`decompose`].
pub fn reconstruct_full(tree: &DecompositionTree) -> Grid {
    tree.synthesize(true, Some((1, tree.levels())))
}

/// Full-resolution image of `A_level` alone, as if the tree stopped there.
pub fn approximation_image(tree: &DecompositionTree, level: usize) -> Result<Grid> {
    if level == 0 || level > tree.levels() {
        return Err(Error::Level(format!("level {level} outside 1..={}", tree.levels())));
    }
    let mut current = tree.approximation(level).clone();
    for l in (1..=level).rev() {
        current = synthesize_2d(&current, None, &tree.basis, tree.mode, tree.level_shapes[l - 1]);
    }
    Ok(current)
}

/// Zeroed sub-bands in the tree's layout, for tests and tooling.
pub fn zeroed(tree: &DecompositionTree) -> DecompositionTree {
    let mut out = tree.clone();
    for l in 1..=out.levels() {
        let shape = out.details[l - 1].lh.shape();
        out.details[l - 1] = SubBands::zeros_like(shape);
        let (r, c) = out.approximations[l - 1].shape();
        out.approximations[l - 1] = Grid::zeros(r, c);
    }
    out.refresh();
    out
}
