//! 16-bit binary greymap (P5) export of single-frame maps.

use std::fs;
use std::path::{Path, PathBuf};

use crate::datacube::DataCube;
use crate::error::{Error, Result};
use crate::grid::Grid;

pub const PGM_MAXVAL: u16 = 65535;

/// Grey level used for every pixel of a constant map.
pub const FLAT_LEVEL: u16 = 32768;

/// Linear map from `[min, max]` onto `[0, 65535]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaling {
    pub min: f64,
    pub max: f64,
}

impl Scaling {
    pub fn of(map: &Grid) -> Scaling {
        let (min, max) =
            map.as_slice().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        Scaling { min, max }
    }

    pub fn level(&self, v: f64) -> u16 {
        if self.max <= self.min {
            return FLAT_LEVEL;
        }
        let unit = ((v - self.min) / (self.max - self.min)).clamp(0.0, 1.0);
        (unit * f64::from(PGM_MAXVAL)).round() as u16
    }

    /// Value a grey level stands for.
    pub fn value(&self, level: u16) -> f64 {
        if self.max <= self.min {
            return self.min;
        }
        self.min + f64::from(level) / f64::from(PGM_MAXVAL) * (self.max - self.min)
    }

    /// `min <v>` and `max <v>` lines, round-trip exact.
    pub fn to_text(&self) -> String {
        format!("min {}\nmax {}\n", self.min, self.max)
    }

    pub fn from_text(text: &str) -> Result<Scaling> {
        let mut min = None;
        let mut max = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line.split_once(' ').ok_or_else(|| Error::Format(format!("bad scale line '{line}'")))?;
            let value: f64 = value.trim().parse().map_err(|_| Error::Format(format!("bad scale value '{value}'")))?;
            match key {
                "min" => min = Some(value),
                "max" => max = Some(value),
                _ => return Err(Error::Format(format!("unknown scale key '{key}'"))),
            }
        }
        match (min, max) {
            (Some(min), Some(max)) => Ok(Scaling { min, max }),
            _ => Err(Error::Format("scale file needs min and max".into())),
        }
    }
}

/// P5 bytes (width = columns, height = rows, big-endian samples).
pub fn encode_pgm(map: &Grid) -> (Vec<u8>, Scaling) {
    let scaling = Scaling::of(map);
    let header = format!("P5\n{} {}\n{}\n", map.cols(), map.rows(), PGM_MAXVAL);
    let mut bytes = Vec::with_capacity(header.len() + 2 * map.as_slice().len());
    bytes.extend_from_slice(header.as_bytes());
    for &v in map.as_slice() {
        bytes.extend_from_slice(&scaling.level(v).to_be_bytes());
    }
    (bytes, scaling)
}

/// Rows, columns and samples of a 16-bit P5 image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub rows: usize,
    pub cols: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

fn next_token(bytes: &[u8], pos: &mut usize) -> Result<String> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Format("PGM header ended early".into()));
    }
    Ok(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

pub fn decode_pgm(bytes: &[u8]) -> Result<Pgm> {
    let mut pos = 0;
    if next_token(bytes, &mut pos)? != "P5" {
        return Err(Error::Format("not a binary PGM".into()));
    }
    let mut number = |what: &str| -> Result<usize> {
        next_token(bytes, &mut pos)?.parse().map_err(|_| Error::Format(format!("bad PGM {what}")))
    };
    let cols = number("width")?;
    let rows = number("height")?;
    let maxval = number("maxval")?;
    if maxval == 0 || maxval > usize::from(PGM_MAXVAL) {
        return Err(Error::Format(format!("PGM maxval {maxval} out of range")));
    }
    pos += 1;
    let width = if maxval > 255 { 2 } else { 1 };
    let expected = rows * cols * width;
    let payload = bytes.get(pos..).unwrap_or_default();
    if payload.len() != expected {
        return Err(Error::Truncation { expected, found: payload.len() });
    }
    let samples = if width == 2 {
        payload.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    } else {
        payload.iter().map(|&b| u16::from(b)).collect()
    };
    Ok(Pgm { rows, cols, maxval: maxval as u16, samples })
}

/// `<image>.scale` next to the image.
pub fn sidecar_path(image: &Path) -> PathBuf {
    let mut name = image.as_os_str().to_owned();
    name.push(".scale");
    PathBuf::from(name)
}

/// Renders the only frame of `cube`.
pub fn render_cube(cube: &DataCube) -> Result<(Vec<u8>, Scaling)> {
    if cube.nt() != 1 {
        return Err(Error::Config(format!("render needs a single-frame map, got {} frames", cube.nt())));
    }
    Ok(encode_pgm(&cube.frame(0)))
}

/// Writes the image and its scale sidecar.
pub fn write_pgm(map: &Grid, path: impl AsRef<Path>) -> Result<Scaling> {
    let (bytes, scaling) = encode_pgm(map);
    fs::write(path.as_ref(), bytes)?;
    fs::write(sidecar_path(path.as_ref()), scaling.to_text())?;
    Ok(scaling)
}
