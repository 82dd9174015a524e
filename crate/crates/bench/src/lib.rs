//! Benchmark fixtures for the exact searches.
use grouplab_core::{random, ratio, translate_family, FiniteGroup, SetSystem, Subset, TranslateFamilySpec, TranslateMode};

/// Seeded subset of `g` with density `num/den`.
pub fn random_set(g: &FiniteGroup, num: i64, den: i64, seed: u64) -> Subset {
    let mut r = random::rng(seed);
    random::bernoulli_subset(g.order(), &ratio(num, den), &mut r)
}

/// Left-translate family of a union of `count` intervals in `Z_n`.
pub fn interval_family(n: usize, count: usize, len: usize) -> SetSystem {
    let g = FiniteGroup::cyclic(n).expect("cyclic group");
    let a = g.subset((0..count).flat_map(|i| (i * n / count..i * n / count + len).map(move |x| x % n))).expect("in range");
    translate_family(&TranslateFamilySpec { group: &g, a, mode: TranslateMode::Left }).expect("family")
}
