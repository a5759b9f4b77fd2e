use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::encoding::EncodingSpec;
use crate::engine::params::RunParams;
use crate::engine::problem::Problem;
use crate::engine::reef::{sanitize, Coral, Reef};
use crate::error::ConfigError;
use crate::substrates::{substrate_names, OperatorStep};
use crate::telemetry::{LarvaEvent, RunMeta, RunTelemetry, RNG_NAME};

/// Where an initial coral came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotOrigin {
    Empty,
    Seed,
    Perturbed,
    Random,
}

/// Draws that could not avoid duplicating an existing coral before the slot is left empty.
const INIT_DUPLICATE_RETRIES: usize = 32;

/// Fill a fresh reef: seeds in the first slots, then Gaussian perturbations of
/// the first seed and uniform randoms in randomly chosen slots, up to
/// `round(rho0·P)` occupants. Returns the provenance of every slot.
pub fn initialize_reef<P: Problem + ?Sized, R: Rng + ?Sized>(
    params: &RunParams,
    problem: &P,
    seeds: &[Vec<f64>],
    rng: &mut R,
    evaluations: &mut u64,
) -> Result<(Reef, Vec<SlotOrigin>), ConfigError> {
    let encoding = problem.encoding();
    let budget = params.initial_occupied();
    if seeds.len() > budget {
        return Err(ConfigError::TooManySeeds { given: seeds.len(), budget });
    }
    for (index, s) in seeds.iter().enumerate() {
        if s.len() != encoding.len() {
            return Err(ConfigError::SeedLength { index, len: s.len(), expected: encoding.len() });
        }
    }
    let mut reef = Reef::new(params.reef_size, params.substrates.len());
    let mut origins = vec![SlotOrigin::Empty; params.reef_size];
    let mut evaluate = |genome: Vec<f64>| {
        *evaluations += 1;
        let f = problem.evaluate(&genome);
        Coral::new(genome, f)
    };

    for (slot, s) in seeds.iter().enumerate() {
        let genome = prepare(problem, encoding, s.clone());
        if !reef.contains_genome(encoding, &genome) {
            reef.place(slot, evaluate(genome));
            origins[slot] = SlotOrigin::Seed;
        }
    }

    let mut free: Vec<usize> = (seeds.len()..params.reef_size).collect();
    free.shuffle(rng);
    let remaining = budget - seeds.len();
    let perturbed =
        if seeds.is_empty() { 0 } else { (params.init.perturbed_fraction * remaining as f64).round() as usize };
    let sigma: Vec<f64> = encoding.genes().iter().map(|g| params.init.perturbation_sigma * g.range()).collect();

    for (k, &slot) in free.iter().take(remaining).enumerate() {
        let origin = if k < perturbed { SlotOrigin::Perturbed } else { SlotOrigin::Random };
        for _ in 0..INIT_DUPLICATE_RETRIES {
            let raw = match origin {
                SlotOrigin::Perturbed => {
                    seeds[0].iter().zip(&sigma).map(|(x, s)| x + s * rng.sample::<f64, _>(StandardNormal)).collect()
                }
                _ => encoding.sample(rng),
            };
            let genome = prepare(problem, encoding, raw);
            if !reef.contains_genome(encoding, &genome) {
                reef.place(slot, evaluate(genome));
                origins[slot] = origin;
                break;
            }
        }
    }
    reef.refresh_best();
    Ok((reef, origins))
}

/// Clamp/round, repair, and clamp again.
fn prepare<P: Problem + ?Sized>(problem: &P, encoding: &EncodingSpec, mut genome: Vec<f64>) -> Vec<f64> {
    encoding.clamp_round(&mut genome);
    problem.repair(&mut genome);
    encoding.clamp_round(&mut genome);
    genome
}

/// Result of a complete run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub best: Coral,
    pub telemetry: RunTelemetry,
    pub seconds: f64,
}

/// The CRO-SL state machine for one run.
pub struct CroSl<'p, P: Problem + ?Sized> {
    params: RunParams,
    problem: &'p P,
    reef: Reef,
    rng: ChaCha8Rng,
    iteration: usize,
    stagnation: usize,
    telemetry: RunTelemetry,
}

impl<'p, P: Problem + ?Sized> CroSl<'p, P> {
    /// Validate the configuration and build the initial reef.
    pub fn new(params: RunParams, problem: &'p P) -> Result<Self, ConfigError> {
        params.validate(problem.encoding())?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut meta = RunMeta {
            seed: params.seed,
            rng: RNG_NAME.to_string(),
            params_digest: params.digest(),
            ..RunMeta::default()
        };
        let seeds = problem.seed_solutions();
        let (reef, _) = initialize_reef(&params, problem, &seeds, &mut rng, &mut meta.evaluations)?;
        let telemetry = RunTelemetry::new(&substrate_names(&params.substrates), meta);
        Ok(Self { params, problem, reef, rng, iteration: 0, stagnation: 0, telemetry })
    }

    pub fn reef(&self) -> &Reef {
        &self.reef
    }

    pub fn telemetry(&self) -> &RunTelemetry {
        &self.telemetry
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn params(&self) -> &RunParams {
        &self.params
    }

    fn evaluate(&mut self, genome: &[f64]) -> f64 {
        self.telemetry.meta.evaluations += 1;
        sanitize(self.problem.evaluate(genome))
    }

    /// One full iteration: reproduction, settlement, budding, depredation,
    /// best-so-far update, stagnation check, telemetry.
    pub fn step(&mut self) {
        let encoding = self.problem.encoding();
        let t = self.params.substrates.len();
        let total = self.params.iterations;
        let operators: Vec<OperatorStep> =
            self.params.substrates.iter().map(|s| s.resolve(self.iteration, total, encoding)).collect();

        // Reproduction from a snapshot of the current reef.
        let mut larvae: Vec<(Vec<f64>, usize)> = Vec::new();
        {
            let occupied: Vec<(usize, &Coral)> = self.reef.occupied().collect();
            let population: Vec<&[f64]> = occupied.iter().map(|(_, c)| c.genome.as_slice()).collect();
            for (k, &(slot, coral)) in occupied.iter().enumerate() {
                let sub = self.reef.substrate_of_slot(slot);
                let spawned = if self.rng.random_bool(self.params.pb) {
                    operators[sub].spawn(&population, k, encoding, &mut self.rng)
                } else {
                    None
                };
                match spawned {
                    Some(ls) => larvae.extend(ls.into_iter().map(|l| (l, sub))),
                    None => larvae.push((brood(&coral.genome, encoding, &mut self.rng), t)),
                }
            }
        }

        let mut evaluated: Vec<(Coral, usize)> = Vec::with_capacity(larvae.len());
        for (genome, origin) in larvae {
            let genome = prepare(self.problem, encoding, genome);
            let fitness = self.evaluate(&genome);
            evaluated.push((Coral { genome, fitness }, origin));
        }

        // Settlement in random order so no substrate gets systematic first pick.
        evaluated.shuffle(&mut self.rng);
        let mut events = Vec::with_capacity(evaluated.len());
        for (larva, origin) in evaluated {
            let fitness = larva.fitness;
            let settled = self.reef.settle(larva, self.params.kappa, encoding, &mut self.rng);
            events.push(LarvaEvent { origin, fitness, settled });
        }

        if self.params.budding_enabled {
            let out = self.reef.budding(self.params.fa, self.params.kappa, encoding, &mut self.rng);
            self.telemetry.meta.budding_attempts += out.attempts as u64;
            self.telemetry.meta.budding_settled += out.settled as u64;
        }

        let removed = self.reef.depredation(self.params.fd, self.params.pd, &mut self.rng);
        self.telemetry.meta.depredated += removed as u64;

        if self.reef.refresh_best() {
            self.stagnation = 0;
        } else {
            self.stagnation += 1;
        }
        if let Some(window) = self.params.stagnation_window {
            if self.stagnation >= window {
                self.regenerate();
            }
        }

        let best = self.reef.best_ever().map_or(f64::INFINITY, |c| c.fitness);
        self.telemetry.record_iteration(self.iteration, best, &events);
        self.iteration += 1;
    }

    /// Rebuild the reef around the best coral found so far.
    fn regenerate(&mut self) {
        let best = self.reef.best_ever().cloned();
        let seeds: Vec<Vec<f64>> = best.iter().map(|c| c.genome.clone()).collect();
        let (mut reef, _) =
            initialize_reef(&self.params, self.problem, &seeds, &mut self.rng, &mut self.telemetry.meta.evaluations)
                .expect("configuration validated at construction");
        reef.set_best_ever(best);
        reef.refresh_best();
        self.reef = reef;
        self.stagnation = 0;
        self.telemetry.meta.regenerations.push(self.iteration);
    }

    /// Run the remaining iterations and return the best coral found.
    pub fn finish(mut self) -> RunResult {
        let start = Instant::now();
        while self.iteration < self.params.iterations {
            self.step();
        }
        let best = self.reef.best_ever().cloned().expect("initial reef is never empty");
        RunResult { best, telemetry: self.telemetry, seconds: start.elapsed().as_secs_f64() }
    }
}

/// Brooding: resample one uniformly chosen gene within its bounds.
pub fn brood<R: Rng + ?Sized>(genome: &[f64], encoding: &EncodingSpec, rng: &mut R) -> Vec<f64> {
    let mut larva = genome.to_vec();
    let i = rng.random_range(0..larva.len());
    larva[i] = encoding.gene(i).sample(rng);
    larva
}

/// Execute a whole run; fully determined by `(params, problem)`.
pub fn run<P: Problem + ?Sized>(params: &RunParams, problem: &P) -> Result<RunResult, ConfigError> {
    let start = Instant::now();
    let mut result = CroSl::new(params.clone(), problem)?.finish();
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}
