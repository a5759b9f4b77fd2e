//! Differential-evolution mutation.

use rand::Rng;

use crate::encoding::EncodingSpec;

/// `x1 + f·(x2 − x3)` with `x2`, `x3` drawn from `population`, distinct from
/// each other and from `population[self_index]` (which is `x1`).
///
/// Returns `None` when fewer than three corals are available.
pub fn de_mutate<R: Rng + ?Sized>(
    population: &[&[f64]],
    self_index: usize,
    f: f64,
    encoding: &EncodingSpec,
    rng: &mut R,
) -> Option<Vec<f64>> {
    let n = population.len();
    if n < 3 {
        return None;
    }
    // Draw two distinct indices from the n - 1 others.
    let mut a = rng.random_range(0..n - 1);
    let mut b = rng.random_range(0..n - 2);
    if b >= a {
        b += 1;
    }
    if a >= self_index {
        a += 1;
    }
    if b >= self_index {
        b += 1;
    }
    Some(de_combine(population[self_index], population[a], population[b], f, encoding))
}

/// Deterministic core of [`de_mutate`].
pub fn de_combine(x1: &[f64], x2: &[f64], x3: &[f64], f: f64, encoding: &EncodingSpec) -> Vec<f64> {
    let mut larva: Vec<f64> = x1.iter().zip(x2).zip(x3).map(|((a, b), c)| a + f * (b - c)).collect();
    encoding.clamp_round(&mut larva);
    larva
}
