//! Mixed integer/real genome encodings.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Absolute tolerance under which two real genes count as equal.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneKind {
    Real,
    Integer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneSpec {
    pub kind: GeneKind,
    pub lower: f64,
    pub upper: f64,
    /// Tag selecting per-group operator parameters (e.g. a harmony-search δ).
    #[serde(default)]
    pub group: usize,
}

impl GeneSpec {
    pub fn real(lower: f64, upper: f64) -> Self {
        Self { kind: GeneKind::Real, lower, upper, group: 0 }
    }

    pub fn integer(lower: i64, upper: i64) -> Self {
        Self { kind: GeneKind::Integer, lower: lower as f64, upper: upper as f64, group: 0 }
    }

    pub fn with_group(mut self, group: usize) -> Self {
        self.group = group;
        self
    }

    pub fn range(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_integer(&self) -> bool {
        self.kind == GeneKind::Integer
    }

    /// Clamp (and for integer genes, round half away from zero) a single value.
    pub fn clamp_round(&self, value: f64) -> f64 {
        let v = match self.kind {
            GeneKind::Real => value,
            GeneKind::Integer => value.round(),
        };
        if v.is_nan() {
            return self.lower;
        }
        v.clamp(self.lower, self.upper)
    }

    /// Uniform draw within bounds; integer genes draw uniformly over the integers.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            GeneKind::Real if self.upper > self.lower => rng.random_range(self.lower..=self.upper),
            GeneKind::Real => self.lower,
            GeneKind::Integer => {
                let lo = self.lower as i64;
                let hi = self.upper as i64;
                rng.random_range(lo..=hi) as f64
            }
        }
    }
}

/// Ordered per-gene types and bounds, shared by the engine, the operators and the problems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EncodingSpec {
    genes: Vec<GeneSpec>,
}

impl EncodingSpec {
    pub fn new(genes: Vec<GeneSpec>) -> Result<Self, ConfigError> {
        let spec = Self { genes };
        spec.validate()?;
        Ok(spec)
    }

    /// `n` real genes sharing one interval, all in group 0.
    pub fn uniform_real(n: usize, lower: f64, upper: f64) -> Result<Self, ConfigError> {
        Self::new(vec![GeneSpec::real(lower, upper); n])
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.genes.is_empty() {
            return Err(ConfigError::EmptyEncoding);
        }
        let mut seen = Vec::new();
        for (index, g) in self.genes.iter().enumerate() {
            if !(g.lower <= g.upper) || !g.lower.is_finite() || !g.upper.is_finite() {
                return Err(ConfigError::InvertedBounds { index, lower: g.lower, upper: g.upper });
            }
            if g.is_integer() && (g.lower.fract() != 0.0 || g.upper.fract() != 0.0) {
                return Err(ConfigError::FractionalIntegerBounds { index, lower: g.lower, upper: g.upper });
            }
            if seen.len() <= g.group {
                seen.resize(g.group + 1, false);
            }
            seen[g.group] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(ConfigError::GroupGap(missing));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn genes(&self) -> &[GeneSpec] {
        &self.genes
    }

    pub fn gene(&self, i: usize) -> &GeneSpec {
        &self.genes[i]
    }

    pub fn group_count(&self) -> usize {
        self.genes.iter().map(|g| g.group + 1).max().unwrap_or(0)
    }

    /// Clamp real genes into bounds; round integer genes half away from zero, then clamp.
    pub fn clamp_round(&self, genome: &mut [f64]) {
        debug_assert_eq!(genome.len(), self.genes.len());
        for (x, g) in genome.iter_mut().zip(&self.genes) {
            *x = g.clamp_round(*x);
        }
    }

    pub fn clamped(&self, genome: &[f64]) -> Vec<f64> {
        let mut out = genome.to_vec();
        self.clamp_round(&mut out);
        out
    }

    pub fn contains(&self, genome: &[f64]) -> bool {
        genome.len() == self.genes.len()
            && genome
                .iter()
                .zip(&self.genes)
                .all(|(&x, g)| x >= g.lower && x <= g.upper && (!g.is_integer() || x.fract() == 0.0))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.genes.iter().map(|g| g.sample(rng)).collect()
    }

    /// Genome equality under the duplicate-exclusion rule: exact for integer
    /// genes, within [`DUPLICATE_TOLERANCE`] for real genes.
    pub fn same_genome(&self, a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len()
            && a.iter().zip(b).zip(&self.genes).all(|((x, y), g)| match g.kind {
                GeneKind::Integer => x == y,
                GeneKind::Real => (x - y).abs() <= DUPLICATE_TOLERANCE,
            })
    }
}
