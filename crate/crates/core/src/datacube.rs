//! Thermal image sequences, excitation sequences and their on-disk formats.
//!
//! Cubes are stored in the TIC1 container: four ASCII header lines
//! (`TIC1`, `nx ny nt`, `te_s`, `flipped_y`) followed by `nx·ny·nt`
//! little-endian `f32` values, frame-major and row-major within a frame.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::Grid;

pub const TIC1_MAGIC: &str = "TIC1";

/// A stack of `nt` frames of `nx × ny` intensities.
#[derive(Debug, Clone, PartialEq)]
pub struct DataCube {
    nx: usize,
    ny: usize,
    nt: usize,
    te_s: f64,
    data: Vec<f32>,
    flipped_y: bool,
}

impl DataCube {
    /// Builds a cube from a frame-major payload.
    pub fn new(nx: usize, ny: usize, te_s: f64, data: Vec<f32>, flipped_y: bool) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::Config(format!("frame shape {nx}x{ny} is empty")));
        }
        if data.is_empty() || !data.len().is_multiple_of(nx * ny) {
            return Err(Error::Shape(format!("{} values do not form whole {nx}x{ny} frames", data.len())));
        }
        if !te_s.is_finite() || te_s <= 0.0 {
            return Err(Error::Config(format!("te_s must be positive, got {te_s}")));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite intensity at payload index {i}")));
        }
        let nt = data.len() / (nx * ny);
        Ok(DataCube { nx, ny, nt, te_s, data, flipped_y })
    }

    /// Builds a cube from `f64` frames, narrowing to `f32` storage.
    pub fn from_frames(frames: &[Grid], te_s: f64) -> Result<Self> {
        let first = frames.first().ok_or_else(|| Error::Config("cube needs at least one frame".into()))?;
        let (nx, ny) = first.shape();
        let mut data = Vec::with_capacity(nx * ny * frames.len());
        for (t, f) in frames.iter().enumerate() {
            if f.shape() != (nx, ny) {
                return Err(Error::Shape(format!("frame {t} is {:?}, expected {:?}", f.shape(), (nx, ny))));
            }
            data.extend(f.as_slice().iter().map(|&v| v as f32));
        }
        DataCube::new(nx, ny, te_s, data, false)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn te_s(&self) -> f64 {
        self.te_s
    }

    pub fn flipped_y(&self) -> bool {
        self.flipped_y
    }

    pub fn frame_shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    pub fn frame_slice(&self, t: usize) -> &[f32] {
        let n = self.nx * self.ny;
        &self.data[t * n..(t + 1) * n]
    }

    pub fn frame(&self, t: usize) -> Grid {
        let values = self.frame_slice(t).iter().map(|&v| v as f64).collect();
        Grid::from_vec(self.nx, self.ny, values).expect("frame shape is consistent")
    }

    /// Time series of pixel `(r, c)`.
    pub fn pixel_series(&self, r: usize, c: usize) -> Vec<f64> {
        let n = self.nx * self.ny;
        let idx = r * self.ny + c;
        (0..self.nt).map(|t| self.data[t * n + idx] as f64).collect()
    }

    /// Temporal mean of all frames, accumulated in `f64`.
    pub fn mean_frame(&self) -> Grid {
        let n = self.nx * self.ny;
        let mut acc = vec![0.0f64; n];
        for t in 0..self.nt {
            for (a, &v) in acc.iter_mut().zip(self.frame_slice(t)) {
                *a += v as f64;
            }
        }
        let inv = 1.0 / self.nt as f64;
        acc.iter_mut().for_each(|a| *a *= inv);
        Grid::from_vec(self.nx, self.ny, acc).expect("frame shape is consistent")
    }

    pub fn scaled(&self, factor: f32) -> Result<DataCube> {
        let data = self.data.iter().map(|v| v * factor).collect();
        DataCube::new(self.nx, self.ny, self.te_s, data, self.flipped_y)
    }

    /// Same cube with the frames reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<DataCube> {
        if order.len() != self.nt {
            return Err(Error::Shape(format!("permutation of length {} for {} frames", order.len(), self.nt)));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &t in order {
            data.extend_from_slice(self.frame_slice(t));
        }
        DataCube::new(self.nx, self.ny, self.te_s, data, self.flipped_y)
    }
}

/// The binary on/off pattern that drove the lamps, one bit per frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationSequence {
    bits: Vec<u8>,
    te_s: f64,
}

impl ExcitationSequence {
    pub fn new(bits: Vec<u8>, te_s: f64) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Data("excitation bits must be 0 or 1".into()));
        }
        if !bits.contains(&0) || !bits.contains(&1) {
            return Err(Error::Data("excitation must contain at least one 0 and one 1".into()));
        }
        Ok(ExcitationSequence { bits, te_s })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn te_s(&self) -> f64 {
        self.te_s
    }
}

/// Square window of side `2·half_extent + 1` centred on a pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FrameWindow {
    pub center: (usize, usize),
    pub half_extent: usize,
}

impl FrameWindow {
    pub fn new(row: usize, col: usize, half_extent: usize) -> Self {
        FrameWindow { center: (row, col), half_extent }
    }

    pub fn side(&self) -> usize {
        2 * self.half_extent + 1
    }

    pub fn fits(&self, shape: (usize, usize)) -> bool {
        let (r, c) = self.center;
        let h = self.half_extent;
        r >= h && c >= h && r + h < shape.0 && c + h < shape.1
    }

    pub fn check(&self, shape: (usize, usize)) -> Result<()> {
        if self.fits(shape) {
            Ok(())
        } else {
            Err(Error::Bounds(format!(
                "window at {:?} with half extent {} does not fit a {}x{} frame",
                self.center, self.half_extent, shape.0, shape.1
            )))
        }
    }
}

/// Copies the window's pixels out of `frame`.
pub fn extract_window(frame: &Grid, win: &FrameWindow) -> Result<Grid> {
    win.check(frame.shape())?;
    let (r0, c0) = (win.center.0 - win.half_extent, win.center.1 - win.half_extent);
    let side = win.side();
    Ok(Grid::from_fn(side, side, |r, c| frame[(r0 + r, c0 + c)]))
}

/// Mirrors every frame left to right and toggles `flipped_y`.
pub fn flip_y(cube: &DataCube) -> DataCube {
    let (nx, ny) = cube.frame_shape();
    let mut data = Vec::with_capacity(cube.data.len());
    for t in 0..cube.nt {
        let frame = cube.frame_slice(t);
        for r in 0..nx {
            data.extend(frame[r * ny..(r + 1) * ny].iter().rev());
        }
    }
    DataCube { data, flipped_y: !cube.flipped_y, ..cube.clone() }
}

pub fn encode_cube(cube: &DataCube) -> Result<Vec<u8>> {
    if let Some(i) = cube.data.iter().position(|v| !v.is_finite()) {
        return Err(Error::Data(format!("non-finite intensity at payload index {i}")));
    }
    let header =
        format!("{TIC1_MAGIC}\n{} {} {}\n{}\n{}\n", cube.nx, cube.ny, cube.nt, cube.te_s, u8::from(cube.flipped_y));
    let mut out = Vec::with_capacity(header.len() + cube.data.len() * 4);
    out.extend_from_slice(header.as_bytes());
    for v in &cube.data {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

fn split_line(bytes: &[u8]) -> Result<(&str, &[u8])> {
    let end = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Format("header line is not newline-terminated".into()))?;
    let line = std::str::from_utf8(&bytes[..end]).map_err(|_| Error::Format("header is not ASCII".into()))?;
    Ok((line, &bytes[end + 1..]))
}

pub fn decode_cube(bytes: &[u8]) -> Result<DataCube> {
    let (magic, rest) = split_line(bytes)?;
    if magic != TIC1_MAGIC {
        return Err(Error::Format(format!("bad magic '{magic}'")));
    }
    let (dims, rest) = split_line(rest)?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(|s| s.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Format(format!("bad dimensions line: {e}")))?;
    let [nx, ny, nt] = dims[..] else {
        return Err(Error::Format("dimensions line needs exactly nx ny nt".into()));
    };
    if nx == 0 || ny == 0 || nt == 0 {
        return Err(Error::Format(format!("zero dimension in {nx} {ny} {nt}")));
    }
    let (te, rest) = split_line(rest)?;
    let te_s: f64 = te.trim().parse().map_err(|e| Error::Format(format!("bad te_s '{te}': {e}")))?;
    let (flag, payload) = split_line(rest)?;
    let flipped_y = match flag.trim() {
        "0" => false,
        "1" => true,
        other => return Err(Error::Format(format!("bad flipped_y flag '{other}'"))),
    };
    let expected = nx
        .checked_mul(ny)
        .and_then(|v| v.checked_mul(nt))
        .and_then(|v| v.checked_mul(4))
        .ok_or_else(|| Error::Format("dimensions overflow".into()))?;
    if payload.len() < expected {
        return Err(Error::Truncation { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Error::Format(format!("{} trailing bytes after payload", payload.len() - expected)));
    }
    let data = payload.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    DataCube::new(nx, ny, te_s, data, flipped_y).map_err(|e| match e {
        Error::Config(m) => Error::Format(m),
        other => other,
    })
}

pub fn read_cube(path: impl AsRef<Path>) -> Result<DataCube> {
    decode_cube(&fs::read(path)?)
}

/// Writes `cube` in TIC1 format. Validation happens before the file is created.
pub fn write_cube(cube: &DataCube, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_cube(cube)?;
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

pub fn encode_excitation(seq: &ExcitationSequence) -> String {
    seq.bits.iter().map(|b| format!("{b}\n")).collect()
}

pub fn parse_excitation(text: &str, te_s: f64) -> Result<ExcitationSequence> {
    let bits = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| match l {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            other => Err(Error::Format(format!("bad excitation line '{other}'"))),
        })
        .collect::<Result<Vec<_>>>()?;
    ExcitationSequence::new(bits, te_s)
}

pub fn read_excitation(path: impl AsRef<Path>, te_s: f64) -> Result<ExcitationSequence> {
    parse_excitation(&fs::read_to_string(path)?, te_s)
}

pub fn write_excitation(seq: &ExcitationSequence, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_excitation(seq))?;
    Ok(())
}
