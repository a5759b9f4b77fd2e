use serde::{Deserialize, Serialize};

/// Linear interpolation from `start` at iteration 0 to `end` at the last
/// iteration. A single-iteration run stays at `start`.
pub fn schedule_value(start: f64, end: f64, iteration: usize, total_iterations: usize) -> f64 {
    if total_iterations <= 1 {
        return start;
    }
    let t = iteration.min(total_iterations - 1) as f64 / (total_iterations - 1) as f64;
    start + (end - start) * t
}

/// A parameter that is either constant or varies linearly over the run.
///
/// Deserializes from a bare number or from `{"start": a, "end": b}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ScheduleRepr", into = "ScheduleRepr")]
pub struct Schedule {
    pub start: f64,
    pub end: f64,
}

impl Schedule {
    pub const fn constant(value: f64) -> Self {
        Self { start: value, end: value }
    }

    pub const fn linear(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn at(&self, iteration: usize, total_iterations: usize) -> f64 {
        schedule_value(self.start, self.end, iteration, total_iterations)
    }

    pub fn is_finite(&self) -> bool {
        self.start.is_finite() && self.end.is_finite()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScheduleRepr {
    Constant(f64),
    Linear { start: f64, end: f64 },
}

impl From<ScheduleRepr> for Schedule {
    fn from(r: ScheduleRepr) -> Self {
        match r {
            ScheduleRepr::Constant(v) => Schedule::constant(v),
            ScheduleRepr::Linear { start, end } => Schedule::linear(start, end),
        }
    }
}

impl From<Schedule> for ScheduleRepr {
    fn from(s: Schedule) -> Self {
        if s.start == s.end {
            ScheduleRepr::Constant(s.start)
        } else {
            ScheduleRepr::Linear { start: s.start, end: s.end }
        }
    }
}

/// How a step-size schedule maps onto each gene.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepScale {
    /// The schedule value is the step itself.
    #[default]
    Absolute,
    /// The schedule value multiplies each gene's range (upper − lower).
    RangeFraction,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(schedule_value(20.0, 5.0, 0, 1000), 20.0);
        assert_eq!(schedule_value(20.0, 5.0, 999, 1000), 5.0);
        assert_eq!(schedule_value(20.0, 5.0, 0, 1), 20.0);
    }

    #[test]
    fn interior_point_is_linear() {
        // 0.4 - 0.3 * 333/999 = 0.3
        let v = schedule_value(0.4, 0.1, 333, 1000);
        assert!((v - 0.3).abs() < 1e-15, "{v}");
    }

    #[test]
    fn parses_number_or_pair() {
        let c: Schedule = serde_json::from_str("0.9").unwrap();
        assert_eq!(c, Schedule::constant(0.9));
        let l: Schedule = serde_json::from_str(r#"{"start": 2, "end": 0.5}"#).unwrap();
        assert_eq!(l, Schedule::linear(2.0, 0.5));
        assert_eq!(serde_json::to_string(&l).unwrap(), r#"{"start":2.0,"end":0.5}"#);
    }
}
