//! Synthetic plaster-sample phantom under PRBS lamp excitation.
//!
//! Each pixel's intensity is the sum of
//! * a first-order thermal response to the PRBS flux, scaled by a
//!   two-lamp Gaussian illumination field,
//! * a static fine-grained pictorial texture,
//! * a depth/diameter dependent excess response inside each fault disc,
//! * white Gaussian sensor noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datacube::{DataCube, ExcitationSequence, FrameWindow};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Pulse duration (s) to PRBS length.
pub const PULSE_TABLE: [(f64, usize); 5] = [(0.5, 2048), (1.0, 1024), (2.0, 512), (5.0, 256), (10.0, 128)];

pub fn frames_for_pulse(te_s: f64) -> Result<usize> {
    PULSE_TABLE
        .iter()
        .find(|(te, _)| (te - te_s).abs() < 1e-12)
        .map(|&(_, nt)| nt)
        .ok_or_else(|| Error::Config(format!("pulse duration {te_s} s is not one of 0.5, 1, 2, 5, 10")))
}

/// Feedback taps (polynomial exponents) of maximal-length Fibonacci LFSRs.
const LFSR_TAPS: [&[u32]; 15] = [
    &[2, 1],
    &[3, 2],
    &[4, 3],
    &[5, 3],
    &[6, 5],
    &[7, 6],
    &[8, 6, 5, 4],
    &[9, 5],
    &[10, 7],
    &[11, 9],
    &[12, 6, 4, 1],
    &[13, 4, 3, 1],
    &[14, 5, 3, 1],
    &[15, 14],
    &[16, 15, 13, 4],
];

/// Maximal-length shift register of order `m` (2..=16).
#[derive(Debug, Clone)]
pub struct Lfsr {
    order: u32,
    mask: u32,
    state: u32,
}

impl Lfsr {
    pub fn new(order: u32, state: u32) -> Result<Self> {
        let taps = (2..=16)
            .contains(&order)
            .then(|| LFSR_TAPS[order as usize - 2])
            .ok_or_else(|| Error::Config(format!("no LFSR table entry for order {order}")))?;
        let full = (1u32 << order) - 1;
        if state & full == 0 {
            return Err(Error::Config("LFSR state must be nonzero".into()));
        }
        let mask = taps.iter().fold(0, |m, &t| m | 1 << (order - t));
        Ok(Lfsr { order, mask, state: state & full })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn state(&self) -> u32 {
        self.state
    }

    pub fn next_bit(&mut self) -> u8 {
        let out = (self.state & 1) as u8;
        let feedback = (self.state & self.mask).count_ones() & 1;
        self.state = (self.state >> 1) | (feedback << (self.order - 1));
        out
    }
}

/// Smallest register order whose period `2^m − 1` covers `nt`.
pub fn lfsr_order_for(nt: usize) -> u32 {
    let mut m = 2;
    while ((1usize << m) - 1) < nt {
        m += 1;
    }
    m
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// PRBS of length `nt` from the smallest maximal LFSR, started at a
/// seed-derived nonzero state.
pub fn generate_prbs(nt: usize, seed: u64, te_s: f64) -> Result<ExcitationSequence> {
    if nt < 2 {
        return Err(Error::Config(format!("PRBS needs at least 2 pulses, got {nt}")));
    }
    let order = lfsr_order_for(nt);
    if order > 16 {
        return Err(Error::Config(format!("PRBS of {nt} pulses exceeds the LFSR table")));
    }
    let period = (1u64 << order) - 1;
    let state = 1 + splitmix64(seed) % period;
    let mut reg = Lfsr::new(order, state as u32)?;
    let bits = (0..nt).map(|_| reg.next_bit()).collect();
    ExcitationSequence::new(bits, te_s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultRecord {
    pub id: u32,
    pub row: usize,
    pub col: usize,
    pub diameter_mm: f64,
    pub depth_mm: f64,
}

impl FaultRecord {
    pub fn center(&self) -> (usize, usize) {
        (self.row, self.col)
    }

    pub fn radius_px(&self, px_per_mm: f64) -> f64 {
        0.5 * self.diameter_mm * px_per_mm
    }

    /// Square window around the fault centre.
    pub fn window(&self, half_extent: usize) -> FrameWindow {
        FrameWindow::new(self.row, self.col, half_extent)
    }
}

const fn hole(id: u32, row: usize, col: usize, diameter_mm: f64, depth_mm: f64) -> FaultRecord {
    FaultRecord { id, row, col, diameter_mm, depth_mm }
}

/// The twelve holes of the laboratory plaster sample, in back-side
/// coordinates (row, col).
pub const STANDARD_FAULTS: [FaultRecord; 12] = [
    hole(1, 39, 167, 10.0, 4.0),
    hole(2, 39, 127, 8.0, 4.0),
    hole(3, 42, 83, 6.0, 4.0),
    hole(4, 41, 30, 3.0, 4.0),
    hole(5, 77, 167, 10.0, 6.0),
    hole(6, 76, 127, 8.0, 6.0),
    hole(7, 83, 83, 6.0, 6.0),
    hole(8, 86, 31, 3.0, 6.0),
    hole(9, 117, 169, 10.0, 8.0),
    hole(10, 118, 127, 8.0, 8.0),
    hole(11, 122, 83, 6.0, 8.0),
    hole(12, 130, 31, 3.0, 8.0),
];

/// Known faults plus defect-free reference windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub faults: Vec<FaultRecord>,
    pub background_windows: Vec<FrameWindow>,
    pub px_per_mm: f64,
}

impl GroundTruth {
    /// Checks that every background window, dilated by its own half extent,
    /// stays clear of every fault disc.
    pub fn validate(&self, shape: (usize, usize)) -> Result<()> {
        for w in &self.background_windows {
            w.check(shape)?;
            let reach = 2.0 * w.half_extent as f64;
            for f in &self.faults {
                let dr = (f.row as f64 - w.center.0 as f64).abs() - reach;
                let dc = (f.col as f64 - w.center.1 as f64).abs() - reach;
                let dist = dr.max(0.0).hypot(dc.max(0.0));
                if dist <= f.radius_px(self.px_per_mm) {
                    return Err(Error::Config(format!("background window at {:?} overlaps fault {}", w.center, f.id)));
                }
            }
        }
        Ok(())
    }

    pub fn fault_windows(&self, half_extent: usize) -> Vec<FrameWindow> {
        self.faults.iter().map(|f| f.window(half_extent)).collect()
    }

    /// Ground truth for frames mirrored with [`crate::datacube::flip_y`].
    pub fn flipped(&self, ny: usize) -> GroundTruth {
        let mirror = |c: usize| ny - 1 - c;
        GroundTruth {
            faults: self.faults.iter().map(|f| FaultRecord { col: mirror(f.col), ..*f }).collect(),
            background_windows: self
                .background_windows
                .iter()
                .map(|w| FrameWindow::new(w.center.0, mirror(w.center.1), w.half_extent))
                .collect(),
            px_per_mm: self.px_per_mm,
        }
    }

    /// Pixels of a fault disc (centre distance ≤ radius), row-major.
    pub fn disc_pixels(&self, fault: &FaultRecord, shape: (usize, usize)) -> Vec<(usize, usize)> {
        let r = fault.radius_px(self.px_per_mm);
        let reach = r.ceil() as usize + 1;
        let mut out = Vec::new();
        for row in fault.row.saturating_sub(reach)..(fault.row + reach + 1).min(shape.0) {
            for col in fault.col.saturating_sub(reach)..(fault.col + reach + 1).min(shape.1) {
                let d = (row as f64 - fault.row as f64).hypot(col as f64 - fault.col as f64);
                if d <= r {
                    out.push((row, col));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ground truth serializes")
    }

    pub fn from_json(text: &str) -> Result<GroundTruth> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("ground truth: {e}")))
    }
}

/// Eight background windows down the left margin (columns < 15).
pub fn default_background_windows(nx: usize) -> Vec<FrameWindow> {
    let half = 5;
    let step = (nx - 2 * half - 1) as f64 / 7.0;
    (0..8).map(|k| FrameWindow::new(half + (k as f64 * step).round() as usize, 7, half)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhantomConfig {
    pub nx: usize,
    pub ny: usize,
    pub te_s: f64,
    /// Overrides the frame count implied by `te_s`.
    pub frames: Option<usize>,
    pub seed: u64,
    pub noise_sigma: f64,
    pub lamp_centers: Vec<(f64, f64)>,
    pub lamp_sigma: f64,
    /// Peak background heating of one lamp, intensity units.
    pub illumination_gain: f64,
    /// Rise time of the sound (defect-free) material, seconds.
    pub background_tau_s: f64,
    pub texture_amplitude: f64,
    /// Correlation length of the pictorial texture, pixels.
    pub texture_scale_px: f64,
    pub defect_gain: f64,
    /// Defect rise time per squared millimetre of depth, s/mm².
    pub diffusivity_tau_mm2_s: f64,
    pub px_per_mm: f64,
    pub faults: Vec<FaultRecord>,
}

impl Default for PhantomConfig {
    fn default() -> Self {
        let (nx, ny) = (160, 200);
        PhantomConfig {
            nx,
            ny,
            te_s: 5.0,
            frames: None,
            seed: 42,
            noise_sigma: 0.12,
            lamp_centers: vec![(nx as f64 / 2.0, ny as f64 / 4.0), (nx as f64 / 2.0, 3.0 * ny as f64 / 4.0)],
            lamp_sigma: 200.0,
            illumination_gain: 5.0,
            background_tau_s: 60.0,
            texture_amplitude: 0.2,
            texture_scale_px: 0.5,
            defect_gain: 20.0,
            diffusivity_tau_mm2_s: 100.0,
            px_per_mm: 1.0,
            faults: STANDARD_FAULTS.to_vec(),
        }
    }
}

impl PhantomConfig {
    pub fn frame_count(&self) -> Result<usize> {
        match self.frames {
            Some(n) => Ok(n),
            None => frames_for_pulse(self.te_s),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        let non_negative = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be non-negative, got {v}")))
            }
        };
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::Config("phantom frame must be non-empty".into()));
        }
        if self.frames.is_some() {
            positive("te_s", self.te_s)?;
        }
        let nt = self.frame_count()?;
        if nt < 2 {
            return Err(Error::Config(format!("phantom needs at least 2 frames, got {nt}")));
        }
        non_negative("noise_sigma", self.noise_sigma)?;
        positive("lamp_sigma", self.lamp_sigma)?;
        non_negative("illumination_gain", self.illumination_gain)?;
        positive("background_tau_s", self.background_tau_s)?;
        non_negative("texture_amplitude", self.texture_amplitude)?;
        positive("texture_scale_px", self.texture_scale_px)?;
        non_negative("defect_gain", self.defect_gain)?;
        positive("diffusivity_tau_mm2_s", self.diffusivity_tau_mm2_s)?;
        positive("px_per_mm", self.px_per_mm)?;
        for f in &self.faults {
            positive("fault depth_mm", f.depth_mm)?;
            positive("fault diameter_mm", f.diameter_mm)?;
            if f.row >= self.nx || f.col >= self.ny {
                return Err(Error::Config(format!(
                    "fault {} at ({}, {}) lies outside the {}x{} frame",
                    f.id, f.row, f.col, self.nx, self.ny
                )));
            }
        }
        Ok(())
    }

    pub fn ground_truth(&self) -> GroundTruth {
        GroundTruth {
            faults: self.faults.clone(),
            background_windows: if self.nx > 11 && self.ny > 12 {
                default_background_windows(self.nx)
            } else {
                Vec::new()
            },
            px_per_mm: self.px_per_mm,
        }
    }
}

/// Excess surface response of a fault `t_s` seconds after a heating step:
/// `A·(1 − e^{−t/τ})`, `A = gain·(diameter/10)/depth`, `τ = tau_scale·depth²`.
pub fn defect_response(depth_mm: f64, diameter_mm: f64, t_s: f64, cfg: &PhantomConfig) -> Result<f64> {
    if !(depth_mm > 0.0 && diameter_mm > 0.0) {
        return Err(Error::Config(format!(
            "fault dimensions must be positive (depth {depth_mm}, diameter {diameter_mm})"
        )));
    }
    if t_s.is_nan() || t_s < 0.0 {
        return Err(Error::Config(format!("time must be non-negative, got {t_s}")));
    }
    let amplitude = cfg.defect_gain * (diameter_mm / 10.0) / depth_mm;
    let tau = cfg.diffusivity_tau_mm2_s * depth_mm * depth_mm;
    Ok(amplitude * (1.0 - (-t_s / tau).exp()))
}

/// Response of a linear system to the PRBS, given its unit-step response.
///
/// Frame `t` is sampled at the end of pulse `t`, i.e. `(t + 1)·te` seconds.
fn prbs_response(bits: &[u8], te_s: f64, step: impl Fn(f64) -> f64) -> Vec<f64> {
    let nt = bits.len();
    let kernel: Vec<f64> = (0..nt).map(|k| step((k + 1) as f64 * te_s)).collect();
    let mut prev = 0i32;
    let edges: Vec<(usize, f64)> = bits
        .iter()
        .enumerate()
        .filter_map(|(s, &b)| {
            let delta = b as i32 - prev;
            prev = b as i32;
            (delta != 0).then_some((s, delta as f64))
        })
        .collect();
    (0..nt).map(|t| edges.iter().take_while(|(s, _)| *s <= t).map(|&(s, d)| d * kernel[t - s]).sum()).collect()
}

/// Sum of Gaussian lamp footprints, peak `gain` per lamp.
pub fn illumination_field(cfg: &PhantomConfig) -> Grid {
    let two_s2 = 2.0 * cfg.lamp_sigma * cfg.lamp_sigma;
    Grid::from_fn(cfg.nx, cfg.ny, |r, c| {
        cfg.lamp_centers
            .iter()
            .map(|&(lr, lc)| {
                let d2 = (r as f64 - lr).powi(2) + (c as f64 - lc).powi(2);
                cfg.illumination_gain * (-d2 / two_s2).exp()
            })
            .sum()
    })
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let half = (3.0 * sigma).ceil() as isize;
    let mut k: Vec<f64> = (-half..=half).map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp()).collect();
    let s: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= s);
    k
}

fn blur_rows(g: &Grid, kernel: &[f64]) -> Grid {
    let half = (kernel.len() / 2) as isize;
    let cols = g.cols() as isize;
    Grid::from_fn(g.rows(), g.cols(), |r, c| {
        kernel
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let cc = (c as isize + i as isize - half).clamp(0, cols - 1) as usize;
                w * g[(r, cc)]
            })
            .sum()
    })
}

/// Static pictorial texture: white noise band-passed by a difference of
/// Gaussians (scales `texture_scale_px` and three times that), rescaled to
/// unit standard deviation, times `texture_amplitude`.
pub fn texture_field(cfg: &PhantomConfig) -> Grid {
    if cfg.texture_amplitude == 0.0 {
        return Grid::zeros(cfg.nx, cfg.ny);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let white = Grid::from_fn(cfg.nx, cfg.ny, |_, _| rng.gen_range(-1.0..1.0));
    let smooth = |sigma: f64| {
        let kernel = gaussian_kernel(sigma);
        blur_rows(&blur_rows(&white, &kernel).transpose(), &kernel).transpose()
    };
    let band = smooth(cfg.texture_scale_px).sub(&smooth(3.0 * cfg.texture_scale_px)).expect("same shape");
    let mean = band.mean();
    let std = (band.as_slice().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / band.as_slice().len() as f64).sqrt();
    band.map(|v| cfg.texture_amplitude * (v - mean) / std.max(f64::MIN_POSITIVE))
}

/// Disc weights with a one-pixel raised-cosine edge.
pub fn fault_mask(fault: &FaultRecord, cfg: &PhantomConfig) -> Grid {
    let radius = fault.radius_px(cfg.px_per_mm);
    Grid::from_fn(cfg.nx, cfg.ny, |r, c| {
        let d = (r as f64 - fault.row as f64).hypot(c as f64 - fault.col as f64);
        if d <= radius - 0.5 {
            1.0
        } else if d >= radius + 0.5 {
            0.0
        } else {
            0.5 * (1.0 + (std::f64::consts::PI * (d - radius + 0.5)).cos())
        }
    })
}

#[derive(Debug, Clone)]
pub struct Phantom {
    pub cube: DataCube,
    pub excitation: ExcitationSequence,
    pub truth: GroundTruth,
}

pub fn generate_phantom(cfg: &PhantomConfig) -> Result<Phantom> {
    cfg.validate()?;
    let nt = cfg.frame_count()?;
    let excitation = generate_prbs(nt, cfg.seed, cfg.te_s)?;
    let bits = excitation.bits();

    let heating = prbs_response(bits, cfg.te_s, |t| 1.0 - (-t / cfg.background_tau_s).exp());
    let illumination = illumination_field(cfg);
    let texture = texture_field(cfg);
    let static_part = texture;

    let mut defects = Vec::with_capacity(cfg.faults.len());
    for f in &cfg.faults {
        let series = prbs_response(bits, cfg.te_s, |t| {
            defect_response(f.depth_mm, f.diameter_mm, t, cfg).expect("validated fault")
        });
        defects.push((fault_mask(f, cfg), series));
    }

    let noise = Normal::new(0.0, cfg.noise_sigma).map_err(|e| Error::Config(format!("noise_sigma: {e}")))?;
    let n = cfg.nx * cfg.ny;
    let frames: Vec<Vec<f32>> = (0..nt)
        .into_par_iter()
        .map(|t| {
            let mut frame: Vec<f64> =
                illumination.as_slice().iter().zip(static_part.as_slice()).map(|(i, s)| i * heating[t] + s).collect();
            for (mask, series) in &defects {
                let v = series[t];
                for (o, m) in frame.iter_mut().zip(mask.as_slice()) {
                    *o += m * v;
                }
            }
            if cfg.noise_sigma > 0.0 {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(1000 + t as u64);
                for o in frame.iter_mut() {
                    *o += noise.sample(&mut rng);
                }
            }
            frame.into_iter().map(|v| v as f32).collect()
        })
        .collect();
    let mut data = Vec::with_capacity(n * nt);
    for f in frames {
        data.extend(f);
    }
    let cube = DataCube::new(cfg.nx, cfg.ny, cfg.te_s, data, false)?;
    Ok(Phantom { cube, excitation, truth: cfg.ground_truth() })
}

/// Adds a reflective patch whose intensity follows the excitation directly
/// (`gain·(0.95·bit + noise)`), imitating a specular foil inclusion.
pub fn add_reflective_patch(
    cube: &DataCube,
    excitation: &ExcitationSequence,
    patch: &FrameWindow,
    gain: f64,
    noise_sigma: f64,
    seed: u64,
) -> Result<DataCube> {
    patch.check(cube.frame_shape())?;
    if excitation.len() != cube.nt() {
        return Err(Error::Shape(format!("excitation has {} bits for {} frames", excitation.len(), cube.nt())));
    }
    let noise = Normal::new(0.0, noise_sigma.max(0.0)).map_err(|e| Error::Config(format!("noise_sigma: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(7);
    let (nx, ny) = cube.frame_shape();
    let mut data = cube.as_slice().to_vec();
    let (r0, c0) = (patch.center.0 - patch.half_extent, patch.center.1 - patch.half_extent);
    for (t, &bit) in excitation.bits().iter().enumerate() {
        for r in r0..r0 + patch.side() {
            for c in c0..c0 + patch.side() {
                let v = gain * (0.95 * bit as f64 + noise.sample(&mut rng));
                data[t * nx * ny + r * ny + c] += v as f32;
            }
        }
    }
    DataCube::new(nx, ny, cube.te_s(), data, cube.flipped_y())
}
