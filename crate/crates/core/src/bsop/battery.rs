use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BatterySpec {
    pub capacity_kwh: f64,
    pub soc_min_fraction: f64,
    pub soc_initial_fraction: f64,
    pub p_max_charge_kw: f64,
    pub p_max_discharge_kw: f64,
}

impl Default for BatterySpec {
    fn default() -> Self {
        Self {
            capacity_kwh: 300.0,
            soc_min_fraction: 0.2,
            soc_initial_fraction: 0.2,
            p_max_charge_kw: 50.0,
            p_max_discharge_kw: 50.0,
        }
    }
}

impl BatterySpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.capacity_kwh > 0.0 && self.capacity_kwh.is_finite()) {
            return Err(ConfigError::OutOfRange { name: "capacity_kwh", value: self.capacity_kwh, range: "(0, inf)" });
        }
        if !(0.0..1.0).contains(&self.soc_min_fraction) {
            return Err(ConfigError::OutOfRange {
                name: "soc_min_fraction",
                value: self.soc_min_fraction,
                range: "[0, 1)",
            });
        }
        if !(self.soc_min_fraction..=1.0).contains(&self.soc_initial_fraction) {
            return Err(ConfigError::OutOfRange {
                name: "soc_initial_fraction",
                value: self.soc_initial_fraction,
                range: "[soc_min_fraction, 1]",
            });
        }
        for (name, v) in [("p_max_charge_kw", self.p_max_charge_kw), ("p_max_discharge_kw", self.p_max_discharge_kw)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::OutOfRange { name, value: v, range: "(0, inf)" });
            }
        }
        Ok(())
    }

    pub fn soc_min(&self) -> f64 {
        self.soc_min_fraction * self.capacity_kwh
    }

    pub fn soc_initial(&self) -> f64 {
        self.soc_initial_fraction * self.capacity_kwh
    }
}

/// Make a schedule (kW per hour, positive = charging) feasible in place: clamp
/// each hour to the power limits, then to what keeps the state of charge in
/// `[soc_min, capacity]`. Returns the SOC trace, one point longer than the schedule.
pub fn simulate_soc_repair(schedule: &mut [f64], battery: &BatterySpec) -> Vec<f64> {
    let lo = battery.soc_min();
    let hi = battery.capacity_kwh;
    let mut soc = battery.soc_initial();
    let mut trace = Vec::with_capacity(schedule.len() + 1);
    trace.push(soc);
    for b in schedule.iter_mut() {
        let mut v = if b.is_nan() { 0.0 } else { *b };
        v = v.clamp(-battery.p_max_discharge_kw, battery.p_max_charge_kw);
        v = v.max(lo - soc).min(hi - soc);
        *b = v;
        soc += v;
        trace.push(soc);
    }
    trace
}

/// Charge every surplus hour as hard as possible and discharge every deficit
/// hour without exporting. `net_load[t]` is load minus generation.
pub fn deterministic_schedule(net_load: &[f64], battery: &BatterySpec) -> Vec<f64> {
    let lo = battery.soc_min();
    let hi = battery.capacity_kwh;
    let mut soc = battery.soc_initial();
    net_load
        .iter()
        .map(|&net| {
            let b = if net < 0.0 {
                (-net).min(battery.p_max_charge_kw).min(hi - soc).max(0.0)
            } else {
                -net.min(battery.p_max_discharge_kw).min(soc - lo).max(0.0)
            };
            soc += b;
            b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_schedule_is_untouched() {
        let b = BatterySpec::default();
        let mut s = vec![0.0; 168];
        let trace = simulate_soc_repair(&mut s, &b);
        assert_eq!(s, vec![0.0; 168]);
        assert_eq!(trace.len(), 169);
        assert!(trace.iter().all(|&x| x == 60.0));
    }

    #[test]
    fn discharge_at_minimum_is_blocked() {
        let mut s = vec![-10.0];
        simulate_soc_repair(&mut s, &BatterySpec::default());
        assert_eq!(s, [0.0]);
    }

    #[test]
    fn headroom_limits_charge() {
        let b = BatterySpec { soc_initial_fraction: 290.0 / 300.0, ..BatterySpec::default() };
        let mut s = vec![50.0];
        simulate_soc_repair(&mut s, &b);
        assert!((s[0] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn power_limits_clamp() {
        let b = BatterySpec { soc_initial_fraction: 0.5, ..BatterySpec::default() };
        let mut s = vec![80.0, -200.0];
        simulate_soc_repair(&mut s, &b);
        assert_eq!(s, [50.0, -50.0]);
    }

    #[test]
    fn deterministic_examples() {
        let b = BatterySpec::default();
        assert_eq!(deterministic_schedule(&[20.0, 5.0, 30.0], &b), [0.0, 0.0, 0.0]);
        assert_eq!(deterministic_schedule(&[-30.0, -30.0], &b), [30.0, 30.0]);
        assert_eq!(deterministic_schedule(&[-80.0], &b), [50.0]);
        assert_eq!(deterministic_schedule(&[-30.0, 10.0, 100.0], &b), [30.0, -10.0, -20.0]);
    }

    #[test]
    fn validation() {
        assert!(BatterySpec::default().validate().is_ok());
        assert!(BatterySpec { soc_min_fraction: 1.0, ..Default::default() }.validate().is_err());
        assert!(BatterySpec { soc_initial_fraction: 0.1, ..Default::default() }.validate().is_err());
        assert!(BatterySpec { p_max_charge_kw: 0.0, ..Default::default() }.validate().is_err());
    }
}
