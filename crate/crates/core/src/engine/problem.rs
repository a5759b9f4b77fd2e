use crate::encoding::EncodingSpec;

/// Objective contract. The engine minimizes `evaluate`.
pub trait Problem: Sync {
    fn encoding(&self) -> &EncodingSpec;

    /// Cost of a genome (lower is better). Must be pure and deterministic.
    fn evaluate(&self, genome: &[f64]) -> f64;

    /// Map an in-bounds genome onto the feasible set.
    fn repair(&self, _genome: &mut [f64]) {}

    /// Genomes placed in the reef at initialization, before any random corals.
    fn seed_solutions(&self) -> Vec<Vec<f64>> {
        Vec::new()
    }
}

impl<P: Problem + ?Sized> Problem for &P {
    fn encoding(&self) -> &EncodingSpec {
        (**self).encoding()
    }
    fn evaluate(&self, genome: &[f64]) -> f64 {
        (**self).evaluate(genome)
    }
    fn repair(&self, genome: &mut [f64]) {
        (**self).repair(genome)
    }
    fn seed_solutions(&self) -> Vec<Vec<f64>> {
        (**self).seed_solutions()
    }
}

impl<P: Problem + ?Sized> Problem for Box<P> {
    fn encoding(&self) -> &EncodingSpec {
        (**self).encoding()
    }
    fn evaluate(&self, genome: &[f64]) -> f64 {
        (**self).evaluate(genome)
    }
    fn repair(&self, genome: &mut [f64]) {
        (**self).repair(genome)
    }
    fn seed_solutions(&self) -> Vec<Vec<f64>> {
        (**self).seed_solutions()
    }
}

/// A problem built from a closure, mostly for tests and quick experiments.
pub struct FnProblem<F> {
    encoding: EncodingSpec,
    objective: F,
    seeds: Vec<Vec<f64>>,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnProblem<F> {
    pub fn new(encoding: EncodingSpec, objective: F) -> Self {
        Self { encoding, objective, seeds: Vec::new() }
    }

    pub fn with_seeds(mut self, seeds: Vec<Vec<f64>>) -> Self {
        self.seeds = seeds;
        self
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Problem for FnProblem<F> {
    fn encoding(&self) -> &EncodingSpec {
        &self.encoding
    }
    fn evaluate(&self, genome: &[f64]) -> f64 {
        (self.objective)(genome)
    }
    fn seed_solutions(&self) -> Vec<Vec<f64>> {
        self.seeds.clone()
    }
}

/// Σ xᵢ² over a box.
pub struct Sphere {
    encoding: EncodingSpec,
}

impl Sphere {
    pub fn new(dimension: usize, lower: f64, upper: f64) -> Result<Self, crate::error::ConfigError> {
        Ok(Self { encoding: EncodingSpec::uniform_real(dimension, lower, upper)? })
    }
}

impl Problem for Sphere {
    fn encoding(&self) -> &EncodingSpec {
        &self.encoding
    }
    fn evaluate(&self, genome: &[f64]) -> f64 {
        genome.iter().map(|x| x * x).sum()
    }
}
