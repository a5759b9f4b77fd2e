use std::f64::consts::PI;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bsop::battery::BatterySpec;
use crate::bsop::tariff::Tariff;
use crate::error::{ConfigError, DataError};

/// Hours in the scheduling horizon.
pub const HORIZON: usize = 168;

/// Hourly profiles of one week (kW) plus the battery and tariff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MicroGridScenario {
    /// Residential load.
    pub l1: Vec<f64>,
    /// Industrial load.
    pub l2: Vec<f64>,
    /// Wind generation.
    pub wind: Vec<f64>,
    /// Photovoltaic generation.
    pub solar: Vec<f64>,
    pub battery: BatterySpec,
    pub tariff: Tariff,
}

#[derive(Debug, Deserialize)]
struct ProfileRow {
    hour: usize,
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "W")]
    wind: f64,
    #[serde(rename = "F")]
    solar: f64,
}

impl MicroGridScenario {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, p) in [("L1", &self.l1), ("L2", &self.l2), ("W", &self.wind), ("F", &self.solar)] {
            if p.len() != HORIZON {
                return Err(ConfigError::Invalid(format!("profile {name} has {} hours, expected {HORIZON}", p.len())));
            }
            if let Some(t) = p.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
                return Err(ConfigError::Invalid(format!("profile {name} hour {t}: value {} must be >= 0", p[t])));
            }
        }
        self.battery.validate()?;
        self.tariff.validate()
    }

    /// Load minus generation, before the battery.
    pub fn net_load(&self) -> Vec<f64> {
        (0..HORIZON).map(|t| self.l1[t] + self.l2[t] - self.solar[t] - self.wind[t]).collect()
    }

    /// Grid exchange `P = L1 + L2 − F − W + B`.
    pub fn grid_power(&self, schedule: &[f64]) -> Vec<f64> {
        self.net_load().iter().zip(schedule).map(|(n, b)| n + b).collect()
    }

    /// Read `hour,L1,L2,W,F` with exactly 168 data rows.
    pub fn load_profiles(path: &Path, battery: BatterySpec, tariff: Tariff) -> Result<Self, DataError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|source| DataError::Csv { path: path.to_path_buf(), source })?;
        let mut s = Self { l1: vec![], l2: vec![], wind: vec![], solar: vec![], battery, tariff };
        for (i, row) in reader.deserialize::<ProfileRow>().enumerate() {
            let row_no = i + 1;
            let row =
                row.map_err(|e| DataError::Row { path: path.to_path_buf(), row: row_no, message: e.to_string() })?;
            if row.hour != i {
                return Err(DataError::Row {
                    path: path.to_path_buf(),
                    row: row_no,
                    message: format!("hour {} out of sequence, expected {i}", row.hour),
                });
            }
            for (name, v) in [("L1", row.l1), ("L2", row.l2), ("W", row.wind), ("F", row.solar)] {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(DataError::Row {
                        path: path.to_path_buf(),
                        row: row_no,
                        message: format!("{name} = {v} must be non-negative"),
                    });
                }
            }
            s.l1.push(row.l1);
            s.l2.push(row.l2);
            s.wind.push(row.wind);
            s.solar.push(row.solar);
        }
        if s.l1.len() != HORIZON {
            return Err(DataError::RowCount { path: path.to_path_buf(), expected: HORIZON, found: s.l1.len() });
        }
        s.validate().map_err(|e| DataError::Invalid(e.to_string()))?;
        Ok(s)
    }

    pub fn write_profiles(&self, path: &Path) -> Result<(), DataError> {
        let err = |source| DataError::Csv { path: path.to_path_buf(), source };
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(err)?;
        w.write_record(["hour", "L1", "L2", "W", "F"]).map_err(err)?;
        for t in 0..HORIZON {
            let row = [self.l1[t], self.l2[t], self.wind[t], self.solar[t]].map(|v| v.to_string());
            w.write_record(std::iter::once(t.to_string()).chain(row)).map_err(err)?;
        }
        w.flush().map_err(|source| DataError::Io { path: path.to_path_buf(), source })
    }

    /// A seed-determined synthetic week with the default battery and tariff.
    ///
    /// Residential load follows a double-hump daily shape (morning and evening
    /// peaks) scaled to 162.5 MWh/year; industrial load is a weekday 08–18 h
    /// block scaled to 200 MWh/year; the 100 kW photovoltaic plant produces a
    /// sine-squared bell between 06 and 20 h times a per-day clearness drawn
    /// in [0.25, 1]; the 100 kW wind turbine follows a cubic power curve
    /// (cut-in 3 m/s, rated 12 m/s) driven by an AR(1) wind speed. All loads
    /// carry 5% multiplicative Gaussian noise.
    pub fn synthetic(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = |rng: &mut ChaCha8Rng| 1.0 + 0.05 * rng.sample::<f64, _>(StandardNormal);

        let residential_avg = 162_500.0 / 8760.0;
        let shape: Vec<f64> = (0..24)
            .map(|h| {
                let h = h as f64;
                0.55 + 0.5 * (-((h - 8.0) / 1.8).powi(2)).exp() + 1.1 * (-((h - 20.5) / 2.4).powi(2)).exp()
            })
            .collect();
        let shape_mean = shape.iter().sum::<f64>() / 24.0;
        let l1: Vec<f64> =
            (0..HORIZON).map(|t| (residential_avg * shape[t % 24] / shape_mean * noise(&mut rng)).max(0.0)).collect();

        let industrial_avg = 200_000.0 / 8760.0;
        let raw: Vec<f64> = (0..HORIZON)
            .map(|t| {
                let (day, h) = (t / 24, t % 24);
                if day < 5 && (8..18).contains(&h) {
                    1.0
                } else {
                    0.25
                }
            })
            .collect();
        let raw_mean = raw.iter().sum::<f64>() / HORIZON as f64;
        let l2: Vec<f64> = raw.iter().map(|r| (industrial_avg * r / raw_mean * noise(&mut rng)).max(0.0)).collect();

        let clearness: Vec<f64> = (0..7).map(|_| rng.random_range(0.25..=1.0)).collect();
        let solar: Vec<f64> = (0..HORIZON)
            .map(|t| {
                let h = (t % 24) as f64;
                if (6.0..=20.0).contains(&h) {
                    100.0 * clearness[t / 24] * (PI * (h - 6.0) / 14.0).sin().powi(2)
                } else {
                    0.0
                }
            })
            .collect();

        let mut x = 0.0f64;
        let wind: Vec<f64> = (0..HORIZON)
            .map(|_| {
                x = 0.9 * x + 0.436 * rng.sample::<f64, _>(StandardNormal);
                let speed = (6.5 + 2.8 * x).max(0.0);
                100.0 * wind_power_fraction(speed)
            })
            .collect();

        Self { l1, l2, wind, solar, battery: BatterySpec::default(), tariff: Tariff::default() }
    }
}

/// Share of rated power produced at wind speed `v` (m/s).
fn wind_power_fraction(v: f64) -> f64 {
    const CUT_IN: f64 = 3.0;
    const RATED: f64 = 12.0;
    const CUT_OUT: f64 = 25.0;
    if !(CUT_IN..CUT_OUT).contains(&v) {
        0.0
    } else if v >= RATED {
        1.0
    } else {
        (v.powi(3) - CUT_IN.powi(3)) / (RATED.powi(3) - CUT_IN.powi(3))
    }
}
