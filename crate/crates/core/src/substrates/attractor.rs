//! Strange-attractor based mutation.
//!
//! A random two-dimensional quadratic map
//!
//! ```text
//! x' = a1 + a2·x + a3·x² + a4·x·y + a5·y + a6·y²
//! y' = a7 + a8·x + a9·x² + a10·x·y + a11·y + a12·y²
//! ```
//!
//! is iterated from (0.05, 0.05); randomly chosen trajectory coordinates,
//! with random signs, are added to the coral.

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::encoding::EncodingSpec;
use crate::substrates::gaussian::gaussian_mutate;

pub const COEFFICIENT_BOUND: f64 = 1.2;
pub const MIN_STEPS: usize = 2;
pub const MAX_STEPS: usize = 5000;
pub const DIVERGENCE_BOUND: f64 = 1e6;
pub const START_POINT: (f64, f64) = (0.05, 0.05);
/// Unbounded attractors tolerated before falling back to Gaussian mutation.
pub const MAX_ATTRACTOR_DRAWS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorSpec {
    pub a: [f64; 12],
    pub s_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("quadratic map left |x|,|y| <= 1e6 at step {step}")]
pub struct Unbounded {
    pub step: usize,
}

impl AttractorSpec {
    /// Coefficients uniform in [−1.2, 1.2]; step count uniform in
    /// `[max(min_steps, 2), 5000]`.
    pub fn random<R: Rng + ?Sized>(min_steps: usize, rng: &mut R) -> Self {
        let mut a = [0.0; 12];
        for c in &mut a {
            *c = rng.random_range(-COEFFICIENT_BOUND..=COEFFICIENT_BOUND);
        }
        let lo = min_steps.clamp(MIN_STEPS, MAX_STEPS);
        Self { a, s_iterations: rng.random_range(lo..=MAX_STEPS) }
    }

    pub fn step(&self, x: f64, y: f64) -> (f64, f64) {
        let a = &self.a;
        (
            a[0] + a[1] * x + a[2] * x * x + a[3] * x * y + a[4] * y + a[5] * y * y,
            a[6] + a[7] * x + a[8] * x * x + a[9] * x * y + a[10] * y + a[11] * y * y,
        )
    }
}

/// The `steps` points visited after the start point.
pub fn quadratic_map_iterate(spec: &AttractorSpec, steps: usize) -> Result<Vec<(f64, f64)>, Unbounded> {
    let mut out = Vec::with_capacity(steps);
    let (mut x, mut y) = START_POINT;
    for step in 0..steps {
        (x, y) = spec.step(x, y);
        // NaN fails both comparisons and is treated as divergence too.
        if !(x.abs() <= DIVERGENCE_BOUND && y.abs() <= DIVERGENCE_BOUND) {
            return Err(Unbounded { step });
        }
        out.push((x, y));
    }
    Ok(out)
}

/// One perturbation drawn from an attractor trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorPick {
    pub step: usize,
    pub use_y: bool,
    pub sign: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SabmLarva {
    pub genome: Vec<f64>,
    /// Empty when the Gaussian fallback was used.
    pub picks: Vec<AttractorPick>,
    pub attractor_draws: usize,
    pub fell_back: bool,
}

/// Strange-attractor mutation. After [`MAX_ATTRACTOR_DRAWS`] unbounded
/// attractors in a row it falls back to Gaussian mutation with `fallback_sigma`.
pub fn sabm_mutate<R: Rng + ?Sized>(
    coral: &[f64],
    encoding: &EncodingSpec,
    fallback_sigma: &[f64],
    rng: &mut R,
) -> SabmLarva {
    let n = coral.len();
    for draw in 1..=MAX_ATTRACTOR_DRAWS {
        let spec = AttractorSpec::random(n, rng);
        if let Ok(z) = quadratic_map_iterate(&spec, spec.s_iterations) {
            let steps = index::sample(rng, z.len(), n).into_vec();
            let mut genome = Vec::with_capacity(n);
            let mut picks = Vec::with_capacity(n);
            for (&x, step) in coral.iter().zip(steps) {
                let use_y = rng.random_bool(0.5);
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                let value = if use_y { z[step].1 } else { z[step].0 };
                genome.push(x + value * sign);
                picks.push(AttractorPick { step, use_y, sign, value });
            }
            encoding.clamp_round(&mut genome);
            return SabmLarva { genome, picks, attractor_draws: draw, fell_back: false };
        }
    }
    SabmLarva {
        genome: gaussian_mutate(coral, fallback_sigma, encoding, rng),
        picks: Vec::new(),
        attractor_draws: MAX_ATTRACTOR_DRAWS,
        fell_back: true,
    }
}
