use crate::error::{Error, Result};

use super::taps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Haar,
    Daubechies,
    Coiflet,
    Symlet,
    Biorthogonal,
    ReverseBiorthogonal,
}

impl Family {
    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::Haar | Family::Daubechies | Family::Coiflet | Family::Symlet)
    }
}

/// A named wavelet basis and its four filters.
///
/// Analysis computes `a[k] = Σ_j dec_lo[j]·x[2k+1−j]` (likewise for `dec_hi`);
/// synthesis is the matching transposed operation with `rec_lo` / `rec_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletSpec {
    name: &'static str,
    family: Family,
    dec_lo: &'static [f64],
    dec_hi: &'static [f64],
    rec_lo: &'static [f64],
    rec_hi: &'static [f64],
}

impl WaveletSpec {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dec_lo(&self) -> &'static [f64] {
        self.dec_lo
    }

    pub fn dec_hi(&self) -> &'static [f64] {
        self.dec_hi
    }

    pub fn rec_lo(&self) -> &'static [f64] {
        self.rec_lo
    }

    pub fn rec_hi(&self) -> &'static [f64] {
        self.rec_hi
    }

    /// Tap count shared by all four filters.
    pub fn filter_len(&self) -> usize {
        self.dec_lo.len()
    }

    /// Runs a periodic analysis/synthesis round trip on a fixed probe signal
    /// and returns the largest absolute reconstruction error.
    pub fn reconstruction_defect(&self) -> f64 {
        let n = 2 * self.filter_len() + 6;
        let probe: Vec<f64> = (0..n).map(|i| ((i * 37 + 11) % 17) as f64 - 8.0 + 0.25 * (i as f64).sin()).collect();
        let k = n / 2;
        let f = self.filter_len();
        let mut out = vec![0.0; n];
        for kk in 0..k {
            let (mut a, mut d) = (0.0, 0.0);
            for j in 0..f {
                let idx = (2 * kk + 1 + n * f - j) % n;
                a += self.dec_lo[j] * probe[idx];
                d += self.dec_hi[j] * probe[idx];
            }
            for i in 0..f {
                let m = (2 * kk + i + n * f - (f - 2)) % n;
                out[m] += a * self.rec_lo[i] + d * self.rec_hi[i];
            }
        }
        out.iter().zip(&probe).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

struct Entry {
    name: &'static str,
    family: Family,
    taps: [&'static [f64]; 4],
}

macro_rules! entry {
    ($name:literal, $family:ident, $table:path) => {
        Entry { name: $name, family: Family::$family, taps: [&$table[0], &$table[1], &$table[2], &$table[3]] }
    };
}

static CATALOG: [Entry; 16] = [
    entry!("haar", Haar, taps::HAAR),
    entry!("db4", Daubechies, taps::DB4),
    entry!("db10", Daubechies, taps::DB10),
    entry!("coif1", Coiflet, taps::COIF1),
    entry!("coif4", Coiflet, taps::COIF4),
    entry!("coif5", Coiflet, taps::COIF5),
    entry!("sym4", Symlet, taps::SYM4),
    entry!("sym10", Symlet, taps::SYM10),
    entry!("bior2.2", Biorthogonal, taps::BIOR2_2),
    entry!("bior2.4", Biorthogonal, taps::BIOR2_4),
    entry!("bior3.3", Biorthogonal, taps::BIOR3_3),
    entry!("bior3.7", Biorthogonal, taps::BIOR3_7),
    entry!("bior3.9", Biorthogonal, taps::BIOR3_9),
    entry!("bior6.8", Biorthogonal, taps::BIOR6_8),
    entry!("rbio3.7", ReverseBiorthogonal, taps::RBIO3_7),
    entry!("rbio6.8", ReverseBiorthogonal, taps::RBIO6_8),
];

/// The fifteen bases swept during basis selection (everything but `haar`).
pub const SELECTION_CATALOG: [&str; 15] = [
    "db4", "db10", "coif1", "coif4", "coif5", "sym4", "sym10", "bior2.2", "bior2.4", "bior3.3", "bior3.7", "bior3.9",
    "bior6.8", "rbio3.7", "rbio6.8",
];

/// Tolerance for the load-time reconstruction self-check.
const SELF_CHECK_TOL: f64 = 1e-9;

/// All catalog keys, `haar` included.
pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

pub fn catalog_lookup(name: &str) -> Result<WaveletSpec> {
    let entry = CATALOG.iter().find(|e| e.name == name).ok_or_else(|| Error::Catalog(name.to_string()))?;
    let [dec_lo, dec_hi, rec_lo, rec_hi] = entry.taps;
    let spec = WaveletSpec { name: entry.name, family: entry.family, dec_lo, dec_hi, rec_lo, rec_hi };
    let defect = spec.reconstruction_defect();
    if defect > SELF_CHECK_TOL {
        return Err(Error::Data(format!("filter table for {name} fails its reconstruction self-check ({defect:e})")));
    }
    Ok(spec)
}
