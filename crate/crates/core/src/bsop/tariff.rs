use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

pub const PERIODS: usize = 3;
/// Hours per period for the three-period access tariff.
pub const PERIOD_HOURS: [usize; PERIODS] = [4, 12, 8];

/// Three-period access tariff with banded invoiced power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tariff {
    /// Power-term prices (€/kW/year).
    pub alpha: [f64; PERIODS],
    /// Energy prices (€/kWh).
    pub beta: [f64; PERIODS],
    /// Hired power per period (kW).
    pub hp: [f64; PERIODS],
    /// Period (1, 2 or 3) of each hour of the day.
    pub calendar: Vec<u8>,
    /// Divisor turning the annual power term into the billed horizon.
    pub proration_weeks: f64,
}

impl Default for Tariff {
    fn default() -> Self {
        let mut calendar = vec![3u8; 24];
        for h in 8..24 {
            calendar[h] = 2;
        }
        for h in 10..14 {
            calendar[h] = 1;
        }
        Self {
            alpha: [59.1735, 36.4907, 8.3677],
            beta: [0.1044496, 0.089868, 0.065655],
            hp: [72.0, 66.0, 58.0],
            calendar,
            proration_weeks: 52.0,
        }
    }
}

impl Tariff {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.calendar.len() != 24 {
            return Err(ConfigError::Invalid(format!("tariff calendar needs 24 hours, got {}", self.calendar.len())));
        }
        for (j, want) in PERIOD_HOURS.iter().enumerate() {
            let got = self.calendar.iter().filter(|&&p| p as usize == j + 1).count();
            if got != *want {
                return Err(ConfigError::Invalid(format!(
                    "tariff period P{} must cover {want} hours, got {got}",
                    j + 1
                )));
            }
        }
        let all = self.alpha.iter().chain(&self.beta).chain(&self.hp);
        if all.clone().any(|v| !(*v >= 0.0) || !v.is_finite()) || self.hp.iter().any(|&h| h <= 0.0) {
            return Err(ConfigError::Invalid("tariff prices must be non-negative and hired powers positive".into()));
        }
        if !(self.proration_weeks > 0.0) {
            return Err(ConfigError::OutOfRange {
                name: "proration_weeks",
                value: self.proration_weeks,
                range: "(0, inf)",
            });
        }
        Ok(())
    }

    /// 0-based period index of hour `t` of the horizon.
    pub fn period(&self, t: usize) -> usize {
        self.calendar[t % 24] as usize - 1
    }
}

/// Invoiced power for a period whose peak consumption is `m`, with the
/// band edges `0.85·hp` and `1.05·hp` billed at `hp`.
pub fn invoiced_power(m: f64, hp: f64) -> f64 {
    if m < 0.85 * hp {
        0.85 * hp
    } else if m <= 1.05 * hp {
        hp
    } else {
        m + 2.0 * (m - hp)
    }
}

/// Bill breakdown for one horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bill {
    pub et: f64,
    pub pt: f64,
    pub total: f64,
    /// Energy drawn from the grid per period (kWh).
    pub energy: [f64; PERIODS],
    /// Peak grid draw per period (kW, floored at 0).
    pub peak: [f64; PERIODS],
}

/// Bill an hourly grid exchange profile `p` (kW, positive = consumption).
pub fn billing(p: &[f64], tariff: &Tariff) -> Bill {
    let mut energy = [0.0; PERIODS];
    let mut peak = [0.0f64; PERIODS];
    for (t, &pt) in p.iter().enumerate() {
        let j = tariff.period(t);
        energy[j] += pt.max(0.0);
        peak[j] = peak[j].max(pt);
    }
    let et: f64 = (0..PERIODS).map(|j| tariff.beta[j] * energy[j]).sum();
    let pt: f64 =
        (0..PERIODS).map(|j| tariff.alpha[j] / tariff.proration_weeks * invoiced_power(peak[j], tariff.hp[j])).sum();
    Bill { et, pt, total: et + pt, energy, peak }
}
