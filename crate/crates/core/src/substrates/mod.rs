//! Broadcast-spawning operators, one per substrate layer.

pub mod attractor;
pub mod crossover;
pub mod de;
pub mod gaussian;
pub mod hs;
pub mod schedule;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;
use crate::error::ConfigError;

pub use attractor::{quadratic_map_iterate, sabm_mutate, AttractorSpec, SabmLarva, Unbounded};
pub use crossover::{crossover_2p, crossover_2p_at, crossover_mp, crossover_mp_at};
pub use de::de_mutate;
pub use gaussian::gaussian_mutate;
pub use hs::hs_mutate;
pub use schedule::{schedule_value, Schedule, StepScale};

/// One substrate's operator and parameters, as written in run configs:
/// `{"kind": "DE", "f": {"start": 0.4, "end": 0.1}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SubstrateConfig {
    #[serde(rename = "HS")]
    HarmonySearch {
        #[serde(default = "default_hmcr")]
        hmcr: f64,
        #[serde(default = "default_par")]
        par: f64,
        /// One schedule shared by all gene groups, or one per group.
        delta: Vec<Schedule>,
    },
    #[serde(rename = "DE")]
    DifferentialEvolution { f: Schedule },
    #[serde(rename = "2Px")]
    TwoPoint {},
    #[serde(rename = "MPx")]
    MultiPoint { points: usize },
    #[serde(rename = "GM")]
    Gaussian {
        sigma: Schedule,
        #[serde(default)]
        scale: StepScale,
    },
    #[serde(rename = "SAbM")]
    StrangeAttractor {
        /// Range-fraction σ used when no bounded attractor is found.
        #[serde(default = "default_sabm_fallback")]
        fallback_sigma: Schedule,
    },
}

fn default_hmcr() -> f64 {
    0.9
}

fn default_par() -> f64 {
    0.2
}

fn default_sabm_fallback() -> Schedule {
    Schedule::linear(0.2, 0.02)
}

impl SubstrateConfig {
    pub fn harmony(hmcr: f64, par: f64, delta: Vec<Schedule>) -> Self {
        Self::HarmonySearch { hmcr, par, delta }
    }

    pub fn differential(f: Schedule) -> Self {
        Self::DifferentialEvolution { f }
    }

    pub fn two_point() -> Self {
        Self::TwoPoint {}
    }

    pub fn multi_point(points: usize) -> Self {
        Self::MultiPoint { points }
    }

    pub fn gaussian(sigma: Schedule, scale: StepScale) -> Self {
        Self::Gaussian { sigma, scale }
    }

    pub fn strange_attractor() -> Self {
        Self::StrangeAttractor { fallback_sigma: default_sabm_fallback() }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::HarmonySearch { .. } => "HS",
            Self::DifferentialEvolution { .. } => "DE",
            Self::TwoPoint {} => "2Px",
            Self::MultiPoint { .. } => "MPx",
            Self::Gaussian { .. } => "GM",
            Self::StrangeAttractor { .. } => "SAbM",
        }
    }

    pub fn validate(&self, encoding: &EncodingSpec) -> Result<(), ConfigError> {
        let fail = |reason: String| ConfigError::Substrate { substrate: self.label().into(), reason };
        let finite = |s: &Schedule, name: &str| {
            if s.is_finite() {
                Ok(())
            } else {
                Err(fail(format!("{name} schedule must be finite")))
            }
        };
        match self {
            Self::HarmonySearch { hmcr, par, delta, .. } => {
                for (name, p) in [("hmcr", hmcr), ("par", par)] {
                    if !(0.0..=1.0).contains(p) {
                        return Err(fail(format!("{name} = {p} is outside [0, 1]")));
                    }
                }
                let groups = encoding.group_count();
                if delta.len() != 1 && delta.len() != groups {
                    return Err(fail(format!(
                        "delta needs 1 or {groups} entries (one per gene group), got {}",
                        delta.len()
                    )));
                }
                delta.iter().try_for_each(|d| finite(d, "delta"))
            }
            Self::DifferentialEvolution { f } => finite(f, "f"),
            Self::TwoPoint {} => Ok(()),
            Self::MultiPoint { points } => {
                if *points == 0 {
                    Err(fail("multi-point crossover needs at least one cut point".into()))
                } else if *points >= encoding.len() {
                    Err(ConfigError::TooManyCutPoints { points: *points, genes: encoding.len() })
                } else {
                    Ok(())
                }
            }
            Self::Gaussian { sigma, .. } => finite(sigma, "sigma"),
            Self::StrangeAttractor { fallback_sigma } => finite(fallback_sigma, "fallback_sigma"),
        }
    }

    /// Operator parameters at one iteration of a run.
    pub fn resolve(&self, iteration: usize, total: usize, encoding: &EncodingSpec) -> OperatorStep {
        match self {
            Self::HarmonySearch { hmcr, par, delta } => OperatorStep::Harmony {
                hmcr: *hmcr,
                par: *par,
                delta_by_group: (0..encoding.group_count())
                    .map(|g| delta[if delta.len() == 1 { 0 } else { g }].at(iteration, total))
                    .collect(),
            },
            Self::DifferentialEvolution { f } => OperatorStep::Differential { f: f.at(iteration, total) },
            Self::TwoPoint {} => OperatorStep::TwoPoint,
            Self::MultiPoint { points } => OperatorStep::MultiPoint { points: *points },
            Self::Gaussian { sigma, scale } => {
                OperatorStep::Gaussian { sigma: gaussian::steps_by_gene(sigma.at(iteration, total), *scale, encoding) }
            }
            Self::StrangeAttractor { fallback_sigma } => OperatorStep::StrangeAttractor {
                fallback_sigma: gaussian::steps_by_gene(
                    fallback_sigma.at(iteration, total),
                    StepScale::RangeFraction,
                    encoding,
                ),
            },
        }
    }
}

/// Display names for a substrate list; repeated kinds get a `#k` suffix.
pub fn substrate_names(substrates: &[SubstrateConfig]) -> Vec<String> {
    let mut names = Vec::with_capacity(substrates.len());
    for (i, s) in substrates.iter().enumerate() {
        let label = s.label();
        let earlier = substrates[..i].iter().filter(|o| o.label() == label).count();
        let total = substrates.iter().filter(|o| o.label() == label).count();
        names.push(if total > 1 { format!("{label}#{}", earlier + 1) } else { label.to_string() });
    }
    names
}

/// Resolved numeric parameters for one iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorStep {
    Harmony { hmcr: f64, par: f64, delta_by_group: Vec<f64> },
    Differential { f: f64 },
    TwoPoint,
    MultiPoint { points: usize },
    Gaussian { sigma: Vec<f64> },
    StrangeAttractor { fallback_sigma: Vec<f64> },
}

impl OperatorStep {
    /// Larvae produced by `population[self_index]`. `None` means the operator
    /// cannot act on this reef (DE with fewer than three corals) and the
    /// coral broods instead.
    pub fn spawn<R: Rng + ?Sized>(
        &self,
        population: &[&[f64]],
        self_index: usize,
        encoding: &EncodingSpec,
        rng: &mut R,
    ) -> Option<Vec<Vec<f64>>> {
        let coral = population[self_index];
        let larvae = match self {
            Self::Harmony { hmcr, par, delta_by_group } => {
                vec![hs_mutate(coral, population, *hmcr, *par, delta_by_group, encoding, rng)]
            }
            Self::Differential { f } => vec![de_mutate(population, self_index, *f, encoding, rng)?],
            Self::TwoPoint => {
                let mate = pick_partner(population, self_index, rng);
                let (a, b) = crossover_2p(coral, mate, rng);
                vec![a, b]
            }
            Self::MultiPoint { points } => {
                let mate = pick_partner(population, self_index, rng);
                let (a, b) = crossover_mp(coral, mate, *points, rng);
                vec![a, b]
            }
            Self::Gaussian { sigma } => vec![gaussian_mutate(coral, sigma, encoding, rng)],
            Self::StrangeAttractor { fallback_sigma } => {
                vec![sabm_mutate(coral, encoding, fallback_sigma, rng).genome]
            }
        };
        Some(larvae)
    }
}

/// Uniform mate from the whole reef, other than the coral itself when possible.
fn pick_partner<'a, R: Rng + ?Sized>(population: &[&'a [f64]], self_index: usize, rng: &mut R) -> &'a [f64] {
    if population.len() < 2 {
        return population[self_index];
    }
    let mut j = rng.random_range(0..population.len() - 1);
    if j >= self_index {
        j += 1;
    }
    population[j]
}
