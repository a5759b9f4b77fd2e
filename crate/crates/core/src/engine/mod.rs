//! The coral-reef engine: reef state, settlement, reproduction and the run loop.

mod cro;
mod params;
mod problem;
mod reef;

pub use cro::{brood, initialize_reef, run, CroSl, RunResult, SlotOrigin};
pub use params::{InitParams, RunParams};
pub use problem::{FnProblem, Problem, Sphere};
pub use reef::{sanitize, BuddingOutcome, Coral, Reef};
