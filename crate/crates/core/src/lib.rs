//! Sub-surface defect detection in thermal-infrared image sequences.
//!
//! Frames are split by a multilevel 2D wavelet transform into a background
//! (coarse approximation), a useful band of intermediate details and a
//! discarded high-frequency band. Averaging the useful band over time gives
//! a detection map in which buried defects stand out.

pub mod baseline;
pub mod datacube;
pub mod detector;
pub mod dwt;
pub mod error;
pub mod grid;
pub mod metrics;
pub mod phantom;
pub mod postproc;
pub mod render;
pub mod selection;

pub use error::{Error, Result};
pub use grid::Grid;
