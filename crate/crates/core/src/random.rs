//! Seeded generators for test-bed subsets and set systems.

use crate::bitset::Subset;
use crate::rational::Rational;
use crate::setsystem::SetSystem;
use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each element kept independently with probability `density`.
pub fn bernoulli_subset<R: Rng>(universe: usize, density: &Rational, rng: &mut R) -> Subset {
    let (p, q) = (*density.numer(), *density.denom());
    let mut s = Subset::empty(universe);
    for x in 0..universe {
        if rng.gen_range(0..q) < p {
            s.insert(x);
        }
    }
    s
}

/// `{start, .., start+len-1}` taken mod `n`.
pub fn cyclic_interval(n: usize, start: usize, len: usize) -> Subset {
    let mut s = Subset::empty(n);
    for i in 0..len.min(n) {
        s.insert((start + i) % n);
    }
    s
}

/// Union of `count` cyclic intervals with random starts and lengths in
/// `1..=max_len`.
pub fn union_of_intervals<R: Rng>(n: usize, count: usize, max_len: usize, rng: &mut R) -> Subset {
    let mut s = Subset::empty(n);
    for _ in 0..count {
        let start = rng.gen_range(0..n);
        let len = rng.gen_range(1..=max_len.max(1));
        s.union_with(&cyclic_interval(n, start, len));
    }
    s
}

/// Flips exactly `count` distinct positions.
pub fn flip_positions<R: Rng>(s: &Subset, count: usize, rng: &mut R) -> Subset {
    let mut out = s.clone();
    for x in sample_indices(rng, s.universe(), count.min(s.universe())).into_iter() {
        out.toggle(x);
    }
    out
}

/// A family of `family_size` Bernoulli sets over `0..base`, deduplicated.
pub fn random_set_system<R: Rng>(base: usize, family_size: usize, density: &Rational, rng: &mut R) -> SetSystem {
    let sets: Vec<Subset> = (0..family_size).map(|_| bernoulli_subset(base, density, rng)).collect();
    SetSystem::new(base, sets).expect("sets share the base")
}
