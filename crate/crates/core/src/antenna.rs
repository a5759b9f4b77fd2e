//! Reflection-coefficient objective for antenna matching.
//!
//! The score of an S11 trace rewards bandwidth (samples below −10 dB) and
//! depth (mean and minimum in dB) inside an observation window. The
//! electromagnetic solver is external; traces come from CSV files or from a
//! series-RLC resonator surrogate used for tests and demonstrations.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::encoding::{EncodingSpec, GeneSpec};
use crate::engine::Problem;
use crate::error::{ConfigError, DataError};

pub const MATCH_THRESHOLD_DB: f64 = -10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct S11Trace {
    pub freq_mhz: Vec<f64>,
    pub s11_db: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct TraceRow {
    freq_mhz: f64,
    s11_db: f64,
}

impl S11Trace {
    pub fn new(freq_mhz: Vec<f64>, s11_db: Vec<f64>) -> Result<Self, DataError> {
        if freq_mhz.len() != s11_db.len() {
            return Err(DataError::Invalid(format!(
                "trace has {} frequencies but {} S11 values",
                freq_mhz.len(),
                s11_db.len()
            )));
        }
        if let Some(i) = freq_mhz.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(DataError::Invalid(format!("trace frequencies not strictly ascending at sample {}", i + 1)));
        }
        if s11_db.iter().chain(&freq_mhz).any(|v| !v.is_finite()) {
            return Err(DataError::Invalid("trace values must be finite".into()));
        }
        Ok(Self { freq_mhz, s11_db })
    }

    /// Read a `freq_mhz,s11_db` CSV.
    pub fn from_csv(path: &Path) -> Result<Self, DataError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|source| DataError::Csv { path: path.to_path_buf(), source })?;
        let (mut f, mut s) = (Vec::new(), Vec::new());
        for (i, row) in reader.deserialize::<TraceRow>().enumerate() {
            let row =
                row.map_err(|e| DataError::Row { path: path.to_path_buf(), row: i + 1, message: e.to_string() })?;
            f.push(row.freq_mhz);
            s.push(row.s11_db);
        }
        Self::new(f, s)
    }

    /// Uniform samples of `f` from `start` to `end` inclusive.
    pub fn sample(start_mhz: f64, end_mhz: f64, step_mhz: f64, f: impl Fn(f64) -> f64) -> Self {
        let n = ((end_mhz - start_mhz) / step_mhz + 1e-9).floor() as usize + 1;
        let freq_mhz: Vec<f64> = (0..n).map(|i| start_mhz + i as f64 * step_mhz).collect();
        let s11_db = freq_mhz.iter().map(|&x| f(x)).collect();
        Self { freq_mhz, s11_db }
    }
}

/// Closed observation window in MHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub start_mhz: f64,
    pub end_mhz: f64,
}

impl Default for Window {
    fn default() -> Self {
        Self { start_mhz: 2400.0, end_mhz: 2500.0 }
    }
}

/// `0.8·N + 0.1·|mean| + 0.1·|min|` over in-window samples, where `N` counts
/// samples strictly below −10 dB. Higher is better.
pub fn antenna_fitness(trace: &S11Trace, window: Window) -> Result<f64, DataError> {
    let inside: Vec<f64> = trace
        .freq_mhz
        .iter()
        .zip(&trace.s11_db)
        .filter(|(f, _)| **f >= window.start_mhz && **f <= window.end_mhz)
        .map(|(_, s)| *s)
        .collect();
    if inside.is_empty() {
        return Err(DataError::Invalid(format!(
            "no trace samples inside [{}, {}] MHz",
            window.start_mhz, window.end_mhz
        )));
    }
    let below = inside.iter().filter(|&&s| s < MATCH_THRESHOLD_DB).count() as f64;
    let mean = inside.iter().sum::<f64>() / inside.len() as f64;
    let min = inside.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(0.8 * below + 0.1 * mean.abs() + 0.1 * min.abs())
}

/// Series RLC load seen through a matched line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Resonator {
    pub f0_mhz: f64,
    /// Loaded quality factor.
    pub q: f64,
    pub r_ohm: f64,
}

const Z0: f64 = 50.0;

impl Resonator {
    pub fn s11_db(&self, f_mhz: f64) -> f64 {
        let ratio = f_mhz / self.f0_mhz;
        let reactance = self.q * self.r_ohm * (ratio - 1.0 / ratio);
        let z = Complex64::new(self.r_ohm, reactance);
        let gamma = (z - Z0) / (z + Z0);
        (20.0 * gamma.norm().log10()).max(-80.0)
    }

    pub fn trace(&self, start_mhz: f64, end_mhz: f64, step_mhz: f64) -> S11Trace {
        S11Trace::sample(start_mhz, end_mhz, step_mhz, |f| self.s11_db(f))
    }

    /// Inductance and capacitance for the given quality factor and resistance.
    pub fn lc(&self) -> (f64, f64) {
        let w0 = 2.0 * PI * self.f0_mhz * 1e6;
        (self.q * self.r_ohm / w0, 1.0 / (self.q * self.r_ohm * w0))
    }
}

/// Search box of the resonator surrogate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonatorBounds {
    pub f0_mhz: (f64, f64),
    pub q: (f64, f64),
    pub r_ohm: (f64, f64),
}

impl Default for ResonatorBounds {
    fn default() -> Self {
        Self { f0_mhz: (2000.0, 3000.0), q: (1.0, 40.0), r_ohm: (5.0, 200.0) }
    }
}

/// Tune a resonator so its trace scores best; the cost is the negated score.
#[derive(Debug, Clone)]
pub struct AntennaProblem {
    encoding: EncodingSpec,
    window: Window,
    step_mhz: f64,
}

impl AntennaProblem {
    pub fn new(bounds: ResonatorBounds, window: Window, step_mhz: f64) -> Result<Self, ConfigError> {
        if !(step_mhz > 0.0) {
            return Err(ConfigError::OutOfRange { name: "step_mhz", value: step_mhz, range: "(0, inf)" });
        }
        if !(window.end_mhz >= window.start_mhz) {
            return Err(ConfigError::Invalid("antenna window end precedes start".into()));
        }
        if bounds.f0_mhz.0 <= 0.0 || bounds.q.0 <= 0.0 || bounds.r_ohm.0 <= 0.0 {
            return Err(ConfigError::Invalid("resonator bounds must be positive".into()));
        }
        let encoding = EncodingSpec::new(vec![
            GeneSpec::real(bounds.f0_mhz.0, bounds.f0_mhz.1),
            GeneSpec::real(bounds.q.0, bounds.q.1),
            GeneSpec::real(bounds.r_ohm.0, bounds.r_ohm.1),
        ])?;
        Ok(Self { encoding, window, step_mhz })
    }

    pub fn decode(genome: &[f64]) -> Resonator {
        Resonator { f0_mhz: genome[0], q: genome[1], r_ohm: genome[2] }
    }

    pub fn score(&self, resonator: &Resonator) -> f64 {
        let trace = resonator.trace(self.window.start_mhz, self.window.end_mhz, self.step_mhz);
        antenna_fitness(&trace, self.window).expect("window is sampled")
    }
}

impl Problem for AntennaProblem {
    fn encoding(&self) -> &EncodingSpec {
        &self.encoding
    }

    fn evaluate(&self, genome: &[f64]) -> f64 {
        -self.score(&Self::decode(genome))
    }
}
