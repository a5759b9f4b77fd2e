//! Tuned-mass-damper design and placement on shear buildings.

mod building;
mod design;
mod frf;

pub use building::{
    assemble_matrices, modal_damping, natural_frequencies, rayleigh_coefficients, BuildingSpec, Matrices, Modes,
    RayleighPair,
};
pub use design::{
    fitness_g, TmdBounds, TmdDesign, TmdProblem, GROUP_DAMPING, GROUP_FLOOR, GROUP_FREQUENCY, GROUP_MASS,
};
pub use frf::{tmd_transfer, to_db, FrfCurves, FrfGrid, Structure, Tmd, Workspace, MAGNITUDE_CAP};
