//! Two-point and multi-point crossover.
//!
//! Cut points are interior gene boundaries in `1..len`. A cut at `c` means
//! genes `c..` start a new segment.

use rand::seq::index;
use rand::Rng;

/// Two children from two random cut points `i <= j`. When `i == j` this is a
/// one-point crossover at `i`.
pub fn crossover_2p<R: Rng + ?Sized>(a: &[f64], b: &[f64], rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n < 2 {
        return (b.to_vec(), a.to_vec());
    }
    let x = rng.random_range(1..n);
    let y = rng.random_range(1..n);
    crossover_2p_at(a, b, x.min(y), x.max(y))
}

/// Swap the segment `[i, j)`; `i == j` swaps the tail `[i, len)`.
pub fn crossover_2p_at(a: &[f64], b: &[f64], i: usize, j: usize) -> (Vec<f64>, Vec<f64>) {
    if i == j {
        crossover_mp_at(a, b, &[i])
    } else {
        crossover_mp_at(a, b, &[i, j])
    }
}

/// Children from `m` distinct random cut points.
///
/// Panics if `m_points >= a.len()`; configurations are validated up front.
pub fn crossover_mp<R: Rng + ?Sized>(a: &[f64], b: &[f64], m_points: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    assert!(m_points < n, "{m_points} cut points for {n} genes");
    let mut cuts: Vec<usize> = index::sample(rng, n - 1, m_points).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    crossover_mp_at(a, b, &cuts)
}

/// Alternate segments between the parents at sorted cut points; the first
/// segment of `child1` comes from `a`.
pub fn crossover_mp_at(a: &[f64], b: &[f64], cuts: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = Vec::with_capacity(a.len());
    let mut c2 = Vec::with_capacity(a.len());
    let mut from_a = true;
    let mut next = cuts.iter().copied().peekable();
    for i in 0..a.len() {
        while next.peek() == Some(&i) {
            from_a = !from_a;
            next.next();
        }
        if from_a {
            c1.push(a[i]);
            c2.push(b[i]);
        } else {
            c1.push(b[i]);
            c2.push(a[i]);
        }
    }
    (c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_parents_give_identical_children() {
        let a = [3.0, 1.0, 4.0, 1.0, 5.0];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (c1, c2) = crossover_2p(&a, &a, &mut rng);
        assert_eq!((c1.as_slice(), c2.as_slice()), (&a[..], &a[..]));
        let (c1, c2) = crossover_mp(&a, &a, 3, &mut rng);
        assert_eq!((c1.as_slice(), c2.as_slice()), (&a[..], &a[..]));
    }

    #[test]
    fn segment_swap() {
        let (c1, c2) = crossover_2p_at(&[1.0; 4], &[2.0; 4], 1, 3);
        assert_eq!(c1, [1.0, 2.0, 2.0, 1.0]);
        assert_eq!(c2, [2.0, 1.0, 1.0, 2.0]);
    }

    #[test]
    fn coincident_cuts_are_one_point() {
        let (c1, c2) = crossover_2p_at(&[1.0; 4], &[2.0; 4], 2, 2);
        assert_eq!(c1, [1.0, 1.0, 2.0, 2.0]);
        assert_eq!(c2, [2.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn multi_point_alternates() {
        let (c1, c2) = crossover_mp_at(&[1.0; 5], &[2.0; 5], &[1, 2, 3]);
        assert_eq!(c1, [1.0, 2.0, 1.0, 2.0, 2.0]);
        assert_eq!(c2, [2.0, 1.0, 2.0, 1.0, 1.0]);
        let (c1, _) = crossover_mp_at(&[1.0; 5], &[2.0; 5], &[1, 2, 3, 4]);
        assert_eq!(c1, [1.0, 2.0, 1.0, 2.0, 1.0]);
    }

    #[test]
    fn one_cut_multi_point_equals_one_point() {
        let a: Vec<f64> = (0..8).map(f64::from).collect();
        let b: Vec<f64> = (10..18).map(f64::from).collect();
        for c in 1..8 {
            assert_eq!(crossover_mp_at(&a, &b, &[c]), crossover_2p_at(&a, &b, c, c));
        }
    }

    #[test]
    fn random_multi_point_uses_distinct_interior_cuts() {
        let a = vec![0.0; 12];
        let b = vec![1.0; 12];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let (c1, _) = crossover_mp(&a, &b, 10, &mut rng);
            let switches = c1.windows(2).filter(|w| w[0] != w[1]).count();
            assert_eq!(switches, 10);
            assert_eq!(c1[0], 0.0);
        }
    }

    #[test]
    fn single_gene_parents_swap() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(crossover_2p(&[1.0], &[2.0], &mut rng), (vec![2.0], vec![1.0]));
    }
}
