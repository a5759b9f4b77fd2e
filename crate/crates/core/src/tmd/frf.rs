use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::tmd::building::{assemble_matrices, BuildingSpec};

/// Response magnitudes above this (including non-finite ones) are reported as this.
pub const MAGNITUDE_CAP: f64 = 1e9;
/// Local envelope maxima within this fraction of the grid maximum get refined.
const REFINE_FRACTION: f64 = 0.9;
const GOLDEN_ITERATIONS: usize = 40;

/// Uniform sampling of the jω axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrfGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub step: f64,
}

impl Default for FrfGrid {
    fn default() -> Self {
        Self { omega_min: 0.5, omega_max: 60.0, step: 0.005 }
    }
}

impl FrfGrid {
    pub fn new(omega_min: f64, omega_max: f64, step: f64) -> Result<Self, ConfigError> {
        let grid = Self { omega_min, omega_max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.omega_min > 0.0 && self.omega_min.is_finite()) {
            return Err(ConfigError::OutOfRange { name: "omega_min", value: self.omega_min, range: "(0, inf)" });
        }
        if !(self.omega_max >= self.omega_min && self.omega_max.is_finite()) {
            return Err(ConfigError::OutOfRange {
                name: "omega_max",
                value: self.omega_max,
                range: "[omega_min, inf)",
            });
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(ConfigError::OutOfRange { name: "step", value: self.step, range: "(0, inf)" });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.omega_max - self.omega_min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        self.omega_min + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Same range at half the step.
    pub fn halved(&self) -> Self {
        Self { step: self.step / 2.0, ..*self }
    }
}

/// One TMD: natural frequency (rad/s), damping ratio, mass (kg) and 0-based floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tmd {
    pub omega: f64,
    pub xi: f64,
    pub mass: f64,
    pub floor: usize,
}

/// `H(s) = −m·(2ξω·s + ω²) / (s² + 2ξω·s + ω²)`: force on the floor per unit floor acceleration.
pub fn tmd_transfer(omega_t: f64, xi_t: f64, m_t: f64, s: Complex64) -> Complex64 {
    if m_t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let num = s * (2.0 * xi_t * omega_t) + omega_t * omega_t;
    -m_t * num / (s * s + num)
}

/// Tridiagonal structural model used for the frequency sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    mass: Vec<f64>,
    k_diag: Vec<f64>,
    k_off: Vec<f64>,
    c_diag: Vec<f64>,
    c_off: Vec<f64>,
}

/// Reusable buffers for [`Structure::response_into`].
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    h: Vec<Complex64>,
    upper: Vec<Complex64>,
}

impl Structure {
    pub fn new(spec: &BuildingSpec) -> Self {
        let mats = assemble_matrices(spec);
        let k_diag = spec.stiffness_diagonal();
        let k_off = spec.stiffness_off_diagonal();
        let c_diag = k_diag.iter().zip(&spec.mass).map(|(k, m)| mats.a * m + mats.b * k).collect();
        let c_off = k_off.iter().map(|k| mats.b * k).collect();
        Self { mass: spec.mass.clone(), k_diag, k_off, c_diag, c_off }
    }

    pub fn floors(&self) -> usize {
        self.mass.len()
    }

    /// Absolute floor accelerations per unit ground acceleration at `s = jω`.
    ///
    /// The TMD forces `h_i·Y_i` are folded into the dynamic stiffness, so with
    /// `U` the relative displacements
    /// `(M s² + C s + K − s² diag(h)) U = (diag(h) − M) 1` and `Y = s² U + 1`.
    pub fn response_into(&self, omega: f64, tmds: &[Tmd], work: &mut Workspace, y: &mut [Complex64]) {
        let n = self.floors();
        let s = Complex64::new(0.0, omega);
        let s2 = -omega * omega;
        let zero = Complex64::new(0.0, 0.0);
        work.h.resize(n, zero);
        work.upper.resize(n, zero);
        work.h.iter_mut().for_each(|h| *h = zero);
        for t in tmds {
            work.h[t.floor] += tmd_transfer(t.omega, t.xi, t.mass, s);
        }

        // Thomas algorithm; the matrix is symmetric so sub- and super-diagonals coincide.
        let off = |i: usize| s * self.c_off[i] + self.k_off[i];
        let mut prev_upper = Complex64::new(0.0, 0.0);
        let mut prev_rhs = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut diag = s * self.c_diag[i] + (self.mass[i] * s2 + self.k_diag[i]) - work.h[i] * s2;
            let mut rhs = work.h[i] - self.mass[i];
            if i > 0 {
                let e = off(i - 1);
                diag -= e * prev_upper;
                rhs -= e * prev_rhs;
            }
            prev_upper = if i + 1 < n { off(i) / diag } else { Complex64::new(0.0, 0.0) };
            prev_rhs = rhs / diag;
            work.upper[i] = prev_upper;
            y[i] = prev_rhs;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            let next = y[i + 1];
            y[i] -= work.upper[i] * next;
        }
        for v in y.iter_mut() {
            *v = *v * s2 + 1.0;
        }
    }

    /// Largest floor magnitude at one frequency, capped.
    pub fn envelope(&self, omega: f64, tmds: &[Tmd], work: &mut Workspace, y: &mut [Complex64]) -> f64 {
        self.response_into(omega, tmds, work, y);
        let mut best: f64 = 0.0;
        for v in y.iter() {
            let a = v.norm_sqr();
            if !(a < MAGNITUDE_CAP * MAGNITUDE_CAP) {
                return MAGNITUDE_CAP;
            }
            best = best.max(a);
        }
        best.sqrt()
    }

    /// Per-floor magnitude curves over the grid.
    pub fn frf(&self, tmds: &[Tmd], grid: &FrfGrid) -> FrfCurves {
        let n = self.floors();
        let mut work = Workspace::default();
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        let omega: Vec<f64> = grid.points().collect();
        let mut magnitude = vec![Vec::with_capacity(omega.len()); n];
        for &w in &omega {
            self.response_into(w, tmds, &mut work, &mut y);
            for (curve, v) in magnitude.iter_mut().zip(&y) {
                curve.push(v.norm());
            }
        }
        FrfCurves { omega, magnitude }
    }

    /// Infinity norm of the closed-loop FRF over the grid: the grid maximum of
    /// the floor envelope, sharpened by a golden-section search around every
    /// local maximum that comes close to it.
    pub fn peak_response(&self, tmds: &[Tmd], grid: &FrfGrid) -> f64 {
        let n = self.floors();
        let mut work = Workspace::default();
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        let len = grid.len();
        let mut env = Vec::with_capacity(len);
        for i in 0..len {
            let e = self.envelope(grid.point(i), tmds, &mut work, &mut y);
            if e >= MAGNITUDE_CAP {
                return MAGNITUDE_CAP;
            }
            env.push(e);
        }
        let grid_max = env.iter().copied().fold(0.0, f64::max);
        let mut best = grid_max;
        for i in 1..len.saturating_sub(1) {
            if env[i] >= env[i - 1] && env[i] >= env[i + 1] && env[i] >= REFINE_FRACTION * grid_max {
                let f = |w: f64| self.envelope(w, tmds, &mut work, &mut y);
                best = best.max(golden_max(f, grid.point(i - 1), grid.point(i + 1)));
            }
        }
        best.min(MAGNITUDE_CAP)
    }
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERATIONS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Magnitude curves, one per floor, sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrfCurves {
    pub omega: Vec<f64>,
    /// `magnitude[floor][grid index]`, linear.
    pub magnitude: Vec<Vec<f64>>,
}

impl FrfCurves {
    pub fn db(&self) -> Vec<Vec<f64>> {
        self.magnitude.iter().map(|c| c.iter().map(|m| to_db(*m)).collect()).collect()
    }

    /// `(floor, grid index, magnitude)` of the largest sample.
    pub fn peak(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (f, curve) in self.magnitude.iter().enumerate() {
            for (i, &m) in curve.iter().enumerate() {
                if m > best.2 {
                    best = (f, i, m);
                }
            }
        }
        best
    }
}

pub fn to_db(magnitude: f64) -> f64 {
    20.0 * magnitude.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transfer_examples() {
        let s = c(0.0, 10.0);
        assert_eq!(tmd_transfer(10.0, 0.1, 0.0, s), c(0.0, 0.0));
        let h = tmd_transfer(10.0, 0.1, 0.05, s);
        assert!((h - c(-0.05, 0.25)).norm() < 1e-14, "{h}");
        let h0 = tmd_transfer(12.0, 0.2, 0.03, c(0.0, 0.0));
        assert!((h0 - c(-0.03, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn grid_counts() {
        let g = FrfGrid::default();
        assert_eq!(g.len(), 11901);
        assert!((g.point(g.len() - 1) - 60.0).abs() < 1e-9);
        assert_eq!(FrfGrid::new(1.0, 2.0, 0.25).unwrap().len(), 5);
        assert!(FrfGrid::new(0.0, 2.0, 0.25).is_err());
        assert!(FrfGrid::new(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn static_limit_is_rigid_body() {
        let st = Structure::new(&BuildingSpec::four_storey());
        let mut y = vec![c(0.0, 0.0); 4];
        st.response_into(1e-4, &[], &mut Workspace::default(), &mut y);
        assert!(y.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-6));
    }

    #[test]
    fn golden_section_finds_parabola_top() {
        let top = golden_max(|x| 3.0 - (x - 0.3).powi(2), 0.0, 1.0);
        assert!((top - 3.0).abs() < 1e-12);
    }

    #[test]
    fn undamped_pole_is_capped() {
        let st = Structure::new(&BuildingSpec::two_storey());
        let grid = FrfGrid::new(1.0, 2.0, 0.5).unwrap();
        let tmd = Tmd { omega: 1.5, xi: 0.0, mass: 0.05, floor: 1 };
        assert_eq!(st.peak_response(&[tmd], &grid), MAGNITUDE_CAP);
    }
}
