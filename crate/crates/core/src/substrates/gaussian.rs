//! Gaussian mutation.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::encoding::EncodingSpec;
use crate::substrates::schedule::StepScale;

/// `coral + N(0, σ_i)` elementwise, then clamp/round.
pub fn gaussian_mutate<R: Rng + ?Sized>(
    coral: &[f64],
    sigma_by_gene: &[f64],
    encoding: &EncodingSpec,
    rng: &mut R,
) -> Vec<f64> {
    let mut larva: Vec<f64> = coral
        .iter()
        .zip(sigma_by_gene)
        .map(|(&x, &s)| {
            let z: f64 = rng.sample(StandardNormal);
            x + s * z
        })
        .collect();
    encoding.clamp_round(&mut larva);
    larva
}

/// Per-gene step sizes for a scheduled value under the given scaling.
pub fn steps_by_gene(value: f64, scale: StepScale, encoding: &EncodingSpec) -> Vec<f64> {
    encoding
        .genes()
        .iter()
        .map(|g| match scale {
            StepScale::Absolute => value,
            StepScale::RangeFraction => value * g.range(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::GeneSpec;
    use crate::substrates::schedule::Schedule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_sigma_is_identity() {
        let enc = EncodingSpec::uniform_real(3, -1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = [0.1, -0.2, 0.3];
        assert_eq!(gaussian_mutate(&x, &[0.0; 3], &enc, &mut rng), x);
    }

    #[test]
    fn range_fraction_schedule_at_start() {
        let enc = EncodingSpec::new(vec![GeneSpec::real(0.0, 50.0)]).unwrap();
        let sigma = Schedule::linear(0.2, 0.02).at(0, 100);
        assert_eq!(steps_by_gene(sigma, StepScale::RangeFraction, &enc), vec![10.0]);
    }

    #[test]
    fn deltas_replay_the_normal_stream() {
        let enc = EncodingSpec::uniform_real(6, -1e9, 1e9).unwrap();
        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let sigma = [0.5, 1.0, 2.0, 0.1, 3.0, 7.0];
        let larva = gaussian_mutate(&x, &sigma, &enc, &mut ChaCha8Rng::seed_from_u64(11));
        let mut replay = ChaCha8Rng::seed_from_u64(11);
        for i in 0..6 {
            let z: f64 = replay.sample(StandardNormal);
            assert!((larva[i] - x[i] - sigma[i] * z).abs() < 1e-12);
        }
    }

    #[test]
    fn sample_mean_is_centred() {
        let n = 100_000;
        let enc = EncodingSpec::uniform_real(3, -1e9, 1e9).unwrap();
        let sigma = [1.0, 5.0, 0.01];
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut sums = [0.0; 3];
        for _ in 0..n {
            let l = gaussian_mutate(&[0.0; 3], &sigma, &enc, &mut rng);
            for i in 0..3 {
                sums[i] += l[i];
            }
        }
        for i in 0..3 {
            let mean = sums[i] / n as f64;
            assert!(mean.abs() < 5.0 * sigma[i] / (n as f64).sqrt(), "gene {i} mean {mean}");
        }
    }
}
