//! Run configuration files.
//!
//! A config is a single JSON document with four blocks: `problem`, `engine`,
//! `substrates` and `output_dir`. Unknown keys are rejected everywhere.
//! Relative paths inside the problem block resolve against the config file's
//! directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use reefopt_core::antenna::{AntennaProblem, ResonatorBounds, S11Trace, Window};
use reefopt_core::bsop::{BatterySpec, BsopProblem, MicroGridScenario, Tariff};
use reefopt_core::engine::{InitParams, Problem, RunParams, Sphere};
use reefopt_core::tmd::{BuildingSpec, FrfGrid, TmdBounds, TmdProblem};
use reefopt_core::SubstrateConfig;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub engine: EngineConfig,
    pub substrates: Vec<SubstrateConfig>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Every [`RunParams`] field except the substrate list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineConfig {
    pub reef_size: usize,
    pub rho0: f64,
    pub pb: f64,
    pub kappa: usize,
    #[serde(default)]
    pub fa: f64,
    #[serde(default)]
    pub budding_enabled: bool,
    pub fd: f64,
    pub pd: f64,
    pub iterations: usize,
    #[serde(default)]
    pub stagnation_window: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub init: InitParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    Bsop {
        /// `hour,L1,L2,W,F` CSV; mutually exclusive with `synthetic_seed`.
        #[serde(default)]
        profiles: Option<PathBuf>,
        #[serde(default)]
        synthetic_seed: Option<u64>,
        #[serde(default)]
        battery: BatterySpec,
        #[serde(default)]
        tariff: Tariff,
    },
    Tmd {
        building: BuildingChoice,
        tmds: usize,
        #[serde(default)]
        bounds: TmdBounds,
        /// Grid the optimizer evaluates on.
        #[serde(default)]
        grid: FrfGrid,
        /// Grid used for reported fitness values, `eval` and `frf`.
        #[serde(default)]
        report_grid: FrfGrid,
        #[serde(default)]
        fixed_floors: Option<Vec<usize>>,
    },
    AntennaTrace {
        /// Measured or simulated trace scored by `eval` when no solution is given.
        #[serde(default)]
        trace: Option<PathBuf>,
        #[serde(default)]
        window: Window,
        #[serde(default)]
        bounds: ResonatorBounds,
        #[serde(default = "default_step_mhz")]
        step_mhz: f64,
    },
    Sphere {
        dimension: usize,
        #[serde(default = "default_sphere_lower")]
        lower: f64,
        #[serde(default = "default_sphere_upper")]
        upper: f64,
    },
}

fn default_step_mhz() -> f64 {
    2.0
}

fn default_sphere_lower() -> f64 {
    -5.0
}

fn default_sphere_upper() -> f64 {
    5.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BuildingChoice {
    Preset(BuildingPreset),
    Custom(BuildingSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildingPreset {
    TwoStorey,
    FourStorey,
    LaboratoryRig,
}

impl BuildingChoice {
    pub fn spec(&self) -> BuildingSpec {
        match self {
            Self::Preset(BuildingPreset::TwoStorey) => BuildingSpec::two_storey(),
            Self::Preset(BuildingPreset::FourStorey) => BuildingSpec::four_storey(),
            Self::Preset(BuildingPreset::LaboratoryRig) => BuildingSpec::laboratory_rig(),
            Self::Custom(spec) => spec.clone(),
        }
    }
}

impl ProblemConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Bsop { .. } => "bsop",
            Self::Tmd { .. } => "tmd",
            Self::AntennaTrace { .. } => "antenna_trace",
            Self::Sphere { .. } => "sphere",
        }
    }
}

impl EngineConfig {
    pub fn run_params(&self, substrates: Vec<SubstrateConfig>) -> RunParams {
        RunParams {
            reef_size: self.reef_size,
            substrates,
            rho0: self.rho0,
            pb: self.pb,
            kappa: self.kappa,
            fa: self.fa,
            budding_enabled: self.budding_enabled,
            fd: self.fd,
            pd: self.pd,
            iterations: self.iterations,
            stagnation_window: self.stagnation_window,
            seed: self.seed,
            init: self.init.clone(),
        }
    }
}

/// A parsed config together with the directory its relative paths refer to.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub base_dir: PathBuf,
}

impl LoadedConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: cannot read config: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), strip_position(&e)))
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Self { config, base_dir })
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    pub fn run_params(&self) -> RunParams {
        self.config.engine.run_params(self.config.substrates.clone())
    }

    /// Build the problem and check the engine settings against its encoding.
    pub fn build(&self) -> Result<BuiltProblem, CliError> {
        let problem = self.build_problem()?;
        self.run_params().validate(problem.as_problem().encoding()).map_err(CliError::from)?;
        Ok(problem)
    }

    fn build_problem(&self) -> Result<BuiltProblem, CliError> {
        match &self.config.problem {
            ProblemConfig::Bsop { profiles, synthetic_seed, battery, tariff } => {
                let scenario = match (profiles, synthetic_seed) {
                    (Some(p), None) => {
                        MicroGridScenario::load_profiles(&self.resolve(p), battery.clone(), tariff.clone())?
                    }
                    (None, Some(seed)) => MicroGridScenario {
                        battery: battery.clone(),
                        tariff: tariff.clone(),
                        ..MicroGridScenario::synthetic(*seed)
                    },
                    _ => {
                        return Err(CliError::Config(
                            "bsop problem needs exactly one of `profiles` or `synthetic_seed`".into(),
                        ))
                    }
                };
                Ok(BuiltProblem::Bsop(BsopProblem::new(scenario)?))
            }
            ProblemConfig::Tmd { building, tmds, bounds, grid, report_grid, fixed_floors } => {
                let spec = building.spec();
                let fixed = fixed_floors.as_deref();
                let optimize = TmdProblem::new(spec.clone(), *tmds, *bounds, *grid, fixed)?;
                let report = TmdProblem::new(spec, *tmds, *bounds, *report_grid, fixed)?;
                Ok(BuiltProblem::Tmd { optimize, report })
            }
            ProblemConfig::AntennaTrace { trace, window, bounds, step_mhz } => {
                let trace = match trace {
                    Some(p) => Some(S11Trace::from_csv(&self.resolve(p))?),
                    None => None,
                };
                Ok(BuiltProblem::Antenna {
                    problem: AntennaProblem::new(*bounds, *window, *step_mhz)?,
                    trace,
                    window: *window,
                })
            }
            ProblemConfig::Sphere { dimension, lower, upper } => {
                Ok(BuiltProblem::Sphere(Sphere::new(*dimension, *lower, *upper)?))
            }
        }
    }
}

/// serde_json appends " at line L column C"; the caller prints the position up front.
fn strip_position(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg,
    }
}

pub enum BuiltProblem {
    Bsop(BsopProblem),
    Tmd { optimize: TmdProblem, report: TmdProblem },
    Antenna { problem: AntennaProblem, trace: Option<S11Trace>, window: Window },
    Sphere(Sphere),
}

impl BuiltProblem {
    /// The objective the engine minimizes.
    pub fn as_problem(&self) -> &dyn Problem {
        match self {
            Self::Bsop(p) => p,
            Self::Tmd { optimize, .. } => optimize,
            Self::Antenna { problem, .. } => problem,
            Self::Sphere(p) => p,
        }
    }

    /// Cost of a genome as reported to users; TMD designs are re-checked on the report grid.
    pub fn report_cost(&self, genome: &[f64]) -> f64 {
        match self {
            Self::Tmd { report, .. } => report.evaluate(genome),
            other => other.as_problem().evaluate(genome),
        }
    }
}
