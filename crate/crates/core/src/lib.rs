//! Coral reef optimization with substrate layers, plus the problems it is
//! applied to: battery scheduling, tuned mass dampers and antenna matching.

pub mod antenna;
pub mod bsop;
pub mod encoding;
pub mod engine;
pub mod error;
pub mod presets;
pub mod substrates;
pub mod telemetry;
pub mod tmd;

pub use encoding::{EncodingSpec, GeneKind, GeneSpec};
pub use engine::{run, Coral, CroSl, Problem, Reef, RunParams, RunResult};
pub use error::{ConfigError, DataError};
pub use substrates::{Schedule, StepScale, SubstrateConfig};
pub use telemetry::RunTelemetry;
