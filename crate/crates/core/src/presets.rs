//! Engine settings and substrate mixes for the three applications.

use crate::engine::{InitParams, RunParams};
use crate::substrates::{Schedule, StepScale, SubstrateConfig};

/// Battery scheduling: HS, DE, 2Px, GM, MPx(10) on a 200-slot reef with
/// stagnation-triggered regeneration around the best schedule.
pub fn bsop_substrates() -> Vec<SubstrateConfig> {
    vec![
        SubstrateConfig::harmony(0.9, 0.2, vec![Schedule::linear(20.0, 5.0)]),
        SubstrateConfig::differential(Schedule::linear(0.4, 0.1)),
        SubstrateConfig::two_point(),
        SubstrateConfig::gaussian(Schedule::linear(20.0, 5.0), StepScale::Absolute),
        SubstrateConfig::multi_point(10),
    ]
}

pub fn bsop_params(iterations: usize, seed: u64) -> RunParams {
    RunParams {
        reef_size: 200,
        substrates: bsop_substrates(),
        rho0: 0.9,
        pb: 0.97,
        kappa: 3,
        fa: 0.0,
        budding_enabled: false,
        fd: 0.4,
        pd: 0.01,
        iterations,
        stagnation_window: Some(100),
        seed,
        init: InitParams::default(),
    }
}

/// TMD design: HS with one δ per gene group (mass, damping, frequency,
/// floor), DE, 2Px, GM with a range-relative σ, MPx(3).
pub fn tmd_substrates() -> Vec<SubstrateConfig> {
    vec![
        SubstrateConfig::harmony(0.9, 0.2, [0.01, 0.02, 0.3, 0.5].map(Schedule::constant).to_vec()),
        SubstrateConfig::differential(Schedule::linear(2.0, 0.5)),
        SubstrateConfig::two_point(),
        SubstrateConfig::gaussian(Schedule::linear(0.10, 0.01), StepScale::RangeFraction),
        SubstrateConfig::multi_point(3),
    ]
}

pub fn tmd_params(iterations: usize, seed: u64) -> RunParams {
    RunParams {
        reef_size: 120,
        substrates: tmd_substrates(),
        rho0: 0.9,
        pb: 0.97,
        kappa: 3,
        fa: 0.0,
        budding_enabled: false,
        fd: 0.15,
        pd: 0.1,
        iterations,
        stagnation_window: None,
        seed,
        init: InitParams::default(),
    }
}

/// Antenna matching: HS, DE, 2Px, GM and the strange-attractor mutation on a
/// 20×10 reef with budding.
pub fn antenna_substrates() -> Vec<SubstrateConfig> {
    vec![
        SubstrateConfig::harmony(0.9, 0.2, vec![Schedule::constant(1.5)]),
        SubstrateConfig::differential(Schedule::linear(2.0, 0.5)),
        SubstrateConfig::two_point(),
        SubstrateConfig::gaussian(Schedule::linear(0.2, 0.02), StepScale::RangeFraction),
        SubstrateConfig::strange_attractor(),
    ]
}

pub fn antenna_params(iterations: usize, seed: u64) -> RunParams {
    RunParams {
        reef_size: 200,
        substrates: antenna_substrates(),
        rho0: 0.9,
        pb: 0.8,
        kappa: 3,
        fa: 0.05,
        budding_enabled: true,
        fd: 0.15,
        pd: 0.05,
        iterations,
        stagnation_window: None,
        seed,
        init: InitParams::default(),
    }
}
