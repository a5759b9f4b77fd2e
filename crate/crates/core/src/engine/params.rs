use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::encoding::EncodingSpec;
use crate::error::ConfigError;
use crate::substrates::SubstrateConfig;

/// Engine settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    /// Number of reef slots P.
    pub reef_size: usize,
    /// Substrate layers; each owns `reef_size / substrates.len()` contiguous slots.
    #[serde(default)]
    pub substrates: Vec<SubstrateConfig>,
    /// Fraction of slots occupied at initialization.
    pub rho0: f64,
    /// Per-coral probability of broadcast spawning (otherwise brooding).
    pub pb: f64,
    /// Settlement attempts per larva.
    pub kappa: usize,
    /// Budding fraction of the best corals.
    #[serde(default)]
    pub fa: f64,
    #[serde(default)]
    pub budding_enabled: bool,
    /// Depredation fraction of the worst corals.
    pub fd: f64,
    /// Depredation probability per iteration.
    pub pd: f64,
    pub iterations: usize,
    /// Regenerate the reef after this many iterations without improvement.
    #[serde(default)]
    pub stagnation_window: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub init: InitParams,
}

/// How non-seed corals are generated when the problem supplies seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitParams {
    /// Share of the non-seed occupied slots filled with Gaussian perturbations of the first seed.
    pub perturbed_fraction: f64,
    /// Perturbation σ as a fraction of each gene's range.
    pub perturbation_sigma: f64,
}

impl Default for InitParams {
    fn default() -> Self {
        Self { perturbed_fraction: 0.5, perturbation_sigma: 0.1 }
    }
}

impl RunParams {
    /// Slots occupied right after initialization, `round(rho0·P)`.
    pub fn initial_occupied(&self) -> usize {
        (self.rho0 * self.reef_size as f64).round() as usize
    }

    pub fn slots_per_substrate(&self) -> usize {
        self.reef_size / self.substrates.len().max(1)
    }

    pub fn validate(&self, encoding: &EncodingSpec) -> Result<(), ConfigError> {
        encoding.validate()?;
        if self.substrates.is_empty() {
            return Err(ConfigError::NoSubstrates);
        }
        if self.reef_size == 0 || !self.reef_size.is_multiple_of(self.substrates.len()) {
            return Err(ConfigError::UnevenPartition { reef_size: self.reef_size, substrates: self.substrates.len() });
        }
        let open = |name, value: f64| {
            if value > 0.0 && value < 1.0 {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { name, value, range: "(0, 1)" })
            }
        };
        let closed = |name, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { name, value, range: "[0, 1]" })
            }
        };
        open("rho0", self.rho0)?;
        closed("pb", self.pb)?;
        closed("fa", self.fa)?;
        closed("fd", self.fd)?;
        closed("pd", self.pd)?;
        closed("init.perturbed_fraction", self.init.perturbed_fraction)?;
        if !(self.init.perturbation_sigma >= 0.0) {
            return Err(ConfigError::OutOfRange {
                name: "init.perturbation_sigma",
                value: self.init.perturbation_sigma,
                range: "[0, inf)",
            });
        }
        if self.fa + self.fd > 1.0 {
            return Err(ConfigError::FractionOverlap(self.fa + self.fd));
        }
        if self.kappa == 0 {
            return Err(ConfigError::OutOfRange { name: "kappa", value: 0.0, range: "[1, inf)" });
        }
        if self.stagnation_window == Some(0) {
            return Err(ConfigError::OutOfRange { name: "stagnation_window", value: 0.0, range: "[1, inf)" });
        }
        for s in &self.substrates {
            s.validate(encoding)?;
        }
        Ok(())
    }

    /// Short hex digest of the canonical JSON form, recorded with telemetry.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("params serialize");
        let hash = Sha256::digest(&json);
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// The same run restricted to a single substrate (for comparisons).
    pub fn single_substrate(&self, index: usize) -> Self {
        Self { substrates: vec![self.substrates[index].clone()], ..self.clone() }
    }
}
