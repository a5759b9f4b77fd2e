use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;

/// An evaluated candidate solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coral {
    pub genome: Vec<f64>,
    /// Cost; lower is better. Always finite.
    pub fitness: f64,
}

impl Coral {
    pub fn new(genome: Vec<f64>, fitness: f64) -> Self {
        Self { genome, fitness: sanitize(fitness) }
    }
}

/// Non-finite costs become the worst finite value.
pub fn sanitize(fitness: f64) -> f64 {
    if fitness.is_finite() {
        fitness
    } else {
        f64::MAX
    }
}

/// Linear array of slots; slot `i` belongs to substrate `i / (P / T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reef {
    slots: Vec<Option<Coral>>,
    slots_per_substrate: usize,
    best_ever: Option<Coral>,
}

impl Reef {
    pub fn new(reef_size: usize, substrates: usize) -> Self {
        assert!(substrates > 0 && reef_size.is_multiple_of(substrates));
        Self { slots: vec![None; reef_size], slots_per_substrate: reef_size / substrates, best_ever: None }
    }

    pub fn size(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<Coral>] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> Option<&Coral> {
        self.slots[i].as_ref()
    }

    pub fn occupancy(&self) -> Vec<bool> {
        self.slots.iter().map(Option::is_some).collect()
    }

    pub fn occupied_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn occupied(&self) -> impl Iterator<Item = (usize, &Coral)> {
        self.slots.iter().enumerate().filter_map(|(i, s)| s.as_ref().map(|c| (i, c)))
    }

    pub fn substrate_of_slot(&self, slot: usize) -> usize {
        slot / self.slots_per_substrate
    }

    pub fn best_ever(&self) -> Option<&Coral> {
        self.best_ever.as_ref()
    }

    /// Best occupant, lowest slot index on ties.
    pub fn best_occupant(&self) -> Option<(usize, &Coral)> {
        self.occupied().fold(None, |best, (i, c)| match best {
            Some((_, b)) if b.fitness <= c.fitness => best,
            _ => Some((i, c)),
        })
    }

    /// Copy a strictly better occupant into `best_ever`. Returns whether it improved.
    pub fn refresh_best(&mut self) -> bool {
        let candidate = match self.best_occupant() {
            Some((_, c)) => c,
            None => return false,
        };
        match &self.best_ever {
            Some(b) if b.fitness <= candidate.fitness => false,
            _ => {
                self.best_ever = Some(candidate.clone());
                true
            }
        }
    }

    pub(crate) fn set_best_ever(&mut self, coral: Option<Coral>) {
        self.best_ever = coral;
    }

    pub fn place(&mut self, slot: usize, coral: Coral) {
        self.slots[slot] = Some(coral);
    }

    pub fn clear(&mut self) {
        self.slots.iter_mut().for_each(|s| *s = None);
    }

    pub fn contains_genome(&self, encoding: &EncodingSpec, genome: &[f64]) -> bool {
        self.occupied().any(|(_, c)| encoding.same_genome(&c.genome, genome))
    }

    /// Settle with slot draws supplied by `draw_slot` (called at most `kappa`
    /// times). Returns the slot taken, if any.
    pub fn settle_with(
        &mut self,
        larva: Coral,
        kappa: usize,
        encoding: &EncodingSpec,
        mut draw_slot: impl FnMut() -> usize,
    ) -> Option<usize> {
        if self.contains_genome(encoding, &larva.genome) {
            return None;
        }
        for _ in 0..kappa {
            let slot = draw_slot();
            let free = match &self.slots[slot] {
                None => true,
                Some(occupant) => larva.fitness < occupant.fitness,
            };
            if free {
                self.slots[slot] = Some(larva);
                return Some(slot);
            }
        }
        None
    }

    /// Up to `kappa` uniform draws over all slots: take the first empty slot
    /// or displace a strictly worse occupant. Larvae equal to any occupant are
    /// rejected outright.
    pub fn settle<R: Rng + ?Sized>(
        &mut self,
        larva: Coral,
        kappa: usize,
        encoding: &EncodingSpec,
        rng: &mut R,
    ) -> bool {
        let p = self.slots.len();
        self.settle_with(larva, kappa, encoding, || rng.random_range(0..p)).is_some()
    }

    /// Duplicate the best `⌈fa·occupied⌉` corals and try to settle each clone.
    pub fn budding<R: Rng + ?Sized>(
        &mut self,
        fa: f64,
        kappa: usize,
        encoding: &EncodingSpec,
        rng: &mut R,
    ) -> BuddingOutcome {
        let count = (fa * self.occupied_count() as f64).ceil() as usize;
        let mut ranked: Vec<(usize, f64)> = self.occupied().map(|(i, c)| (i, c.fitness)).collect();
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        let clones: Vec<Coral> = ranked.iter().take(count).filter_map(|&(i, _)| self.slots[i].clone()).collect();
        let mut outcome = BuddingOutcome { attempts: clones.len(), settled: 0 };
        for clone in clones {
            if self.settle(clone, kappa, encoding, rng) {
                outcome.settled += 1;
            }
        }
        outcome
    }

    /// With probability `pd`, remove the `⌊fd·occupied⌋` worst corals
    /// (lower slot index survives ties). Returns how many were removed.
    pub fn depredation<R: Rng + ?Sized>(&mut self, fd: f64, pd: f64, rng: &mut R) -> usize {
        if pd <= 0.0 || !rng.random_bool(pd.min(1.0)) {
            return 0;
        }
        self.remove_worst(fd)
    }

    /// Unconditional depredation of the `⌊fd·occupied⌋` worst corals.
    pub fn remove_worst(&mut self, fd: f64) -> usize {
        let count = (fd * self.occupied_count() as f64).floor() as usize;
        let mut ranked: Vec<(usize, f64)> = self.occupied().map(|(i, c)| (i, c.fitness)).collect();
        // Worst first; among equals, higher slot index goes first.
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(b.0.cmp(&a.0)));
        for &(i, _) in ranked.iter().take(count) {
            self.slots[i] = None;
        }
        count.min(ranked.len())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuddingOutcome {
    pub attempts: usize,
    pub settled: usize,
}
