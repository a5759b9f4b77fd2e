use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Which two undamped modes calibrate the Rayleigh coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RayleighPair {
    Lowest,
    #[default]
    Highest,
}

/// Shear building: floor `i` is tied to floor `i-1` (or the ground) by `stiffness[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingSpec {
    /// Inter-storey stiffnesses (N/m), ground floor first.
    pub stiffness: Vec<f64>,
    /// Floor masses (kg).
    pub mass: Vec<f64>,
    /// Proportional damping ratio.
    pub xi_s: f64,
    #[serde(default)]
    pub rayleigh: RayleighPair,
}

impl BuildingSpec {
    pub fn new(stiffness: Vec<f64>, mass: Vec<f64>, xi_s: f64) -> Result<Self, ConfigError> {
        let spec = Self { stiffness, mass, xi_s, rayleigh: RayleighPair::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_rayleigh(mut self, pair: RayleighPair) -> Self {
        self.rayleigh = pair;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let n = self.stiffness.len();
        if n == 0 || self.mass.len() != n {
            return Err(ConfigError::Invalid(format!(
                "building needs matching non-empty stiffness and mass lists (got {} and {})",
                n,
                self.mass.len()
            )));
        }
        let positive = |name, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { name, value: v, range: "(0, inf)" })
            }
        };
        for &k in &self.stiffness {
            positive("stiffness", k)?;
        }
        for &m in &self.mass {
            positive("mass", m)?;
        }
        positive("xi_s", self.xi_s)
    }

    pub fn floors(&self) -> usize {
        self.stiffness.len()
    }

    /// The two-storey benchmark building.
    pub fn two_storey() -> Self {
        Self::new(vec![1000.0, 500.0], vec![2.0, 1.0], 0.01).expect("valid preset")
    }

    /// The four-storey benchmark building.
    pub fn four_storey() -> Self {
        Self::new(vec![2000.0, 1500.0, 1000.0, 500.0], vec![2.0, 2.0, 2.0, 1.0], 0.01).expect("valid preset")
    }

    /// Identified parameters of the two-storey laboratory model.
    pub fn laboratory_rig() -> Self {
        Self::new(vec![1111.8, 389.1], vec![2.14, 1.88], 0.006).expect("valid preset")
    }

    /// Diagonal of the tridiagonal stiffness matrix.
    pub(crate) fn stiffness_diagonal(&self) -> Vec<f64> {
        let k = &self.stiffness;
        (0..k.len()).map(|i| k[i] + k.get(i + 1).copied().unwrap_or(0.0)).collect()
    }

    /// Off-diagonal `K[i][i+1]` entries.
    pub(crate) fn stiffness_off_diagonal(&self) -> Vec<f64> {
        self.stiffness[1..].iter().map(|k| -k).collect()
    }
}

/// Dense structural matrices with the Rayleigh coefficients `C = a·M + b·K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrices {
    pub m: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub a: f64,
    pub b: f64,
}

pub fn assemble_matrices(spec: &BuildingSpec) -> Matrices {
    let n = spec.floors();
    let m = DMatrix::from_diagonal(&DVector::from_vec(spec.mass.clone()));
    let mut k = DMatrix::zeros(n, n);
    for (i, d) in spec.stiffness_diagonal().into_iter().enumerate() {
        k[(i, i)] = d;
    }
    for (i, o) in spec.stiffness_off_diagonal().into_iter().enumerate() {
        k[(i, i + 1)] = o;
        k[(i + 1, i)] = o;
    }
    let (a, b) = rayleigh_coefficients(spec, &natural_frequencies(&spec.mass, &k).omega);
    let c = &m * a + &k * b;
    Matrices { m, k, c, a, b }
}

/// `(a, b)` giving damping ratio `xi_s` at the two calibration modes.
pub fn rayleigh_coefficients(spec: &BuildingSpec, omega: &[f64]) -> (f64, f64) {
    let n = omega.len();
    let (w1, w2) = match (n, spec.rayleigh) {
        (1, _) => (omega[0], omega[0]),
        (_, RayleighPair::Lowest) => (omega[0], omega[1]),
        (_, RayleighPair::Highest) => (omega[n - 2], omega[n - 1]),
    };
    let xi = spec.xi_s;
    (2.0 * xi * w1 * w2 / (w1 + w2), 2.0 * xi / (w1 + w2))
}

/// Undamped modes, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Modes {
    /// Natural frequencies (rad/s).
    pub omega: Vec<f64>,
    /// Mass-normalized mode shapes, one per column.
    pub shapes: DMatrix<f64>,
}

/// Solve `K·φ = ω²·M·φ` for diagonal `M` through the symmetric form `M^-½ K M^-½`.
pub fn natural_frequencies(mass: &[f64], k: &DMatrix<f64>) -> Modes {
    let n = mass.len();
    let inv_sqrt: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let a = DMatrix::from_fn(n, n, |i, j| inv_sqrt[i] * k[(i, j)] * inv_sqrt[j]);
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let omega = order.iter().map(|&i| eig.eigenvalues[i].max(0.0).sqrt()).collect();
    let shapes = DMatrix::from_fn(n, n, |r, c| inv_sqrt[r] * eig.eigenvectors[(r, order[c])]);
    Modes { omega, shapes }
}

/// Modal damping ratios implied by the Rayleigh matrix: `a/(2ω) + b·ω/2`.
pub fn modal_damping(spec: &BuildingSpec) -> Vec<f64> {
    let mats = assemble_matrices(spec);
    let modes = natural_frequencies(&spec.mass, &mats.k);
    modes.omega.iter().map(|w| mats.a / (2.0 * w) + mats.b * w / 2.0).collect()
}
