//! Harmony-search mutation.

use rand::Rng;

use crate::encoding::EncodingSpec;

/// Per gene: with probability `hmcr` copy that gene from a uniformly chosen
/// member of `population` (the whole reef), otherwise resample it in bounds;
/// then with probability `par` shift it by ±δ of the gene's group.
///
/// An empty population degrades to uniform resampling of every gene.
pub fn hs_mutate<R: Rng + ?Sized>(
    coral: &[f64],
    population: &[&[f64]],
    hmcr: f64,
    par: f64,
    delta_by_group: &[f64],
    encoding: &EncodingSpec,
    rng: &mut R,
) -> Vec<f64> {
    debug_assert_eq!(coral.len(), encoding.len());
    let mut larva = Vec::with_capacity(coral.len());
    for (i, gene) in encoding.genes().iter().enumerate() {
        let mut v = if !population.is_empty() && rng.random_bool(hmcr) {
            population[rng.random_range(0..population.len())][i]
        } else {
            gene.sample(rng)
        };
        if rng.random_bool(par) {
            let delta = delta_by_group[gene.group];
            v += if rng.random_bool(0.5) { delta } else { -delta };
        }
        larva.push(v);
    }
    encoding.clamp_round(&mut larva);
    larva
}
