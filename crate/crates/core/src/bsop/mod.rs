//! Micro-grid battery scheduling under a three-period access tariff.

mod battery;
mod problem;
mod scenario;
mod tariff;

pub use battery::{deterministic_schedule, simulate_soc_repair, BatterySpec};
pub use problem::BsopProblem;
pub use scenario::{MicroGridScenario, HORIZON};
pub use tariff::{billing, invoiced_power, Bill, Tariff, PERIODS, PERIOD_HOURS};
