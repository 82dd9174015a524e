use grouplab_core::approx::{self, ApproxParams, LevelMode};
use grouplab_core::random::{self, rng};
use grouplab_core::regularity::irregular_fraction;
use grouplab_core::stabilizers::{self, covering_number, stab_eps, verify_cover, CoverMode};
use grouplab_core::*;
use proptest::prelude::*;
use rand::Rng;

fn small_group(pick: u8, n: usize) -> FiniteGroup {
    match pick % 5 {
        0 => FiniteGroup::cyclic(n.max(1)).unwrap(),
        1 => FiniteGroup::dihedral(n.clamp(3, 12)).unwrap(),
        2 => FiniteGroup::symmetric(3 + n % 2).unwrap(),
        3 => FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(n.clamp(2, 10)).unwrap())
            .unwrap(),
        _ => FiniteGroup::elementary_abelian_2(1 + n % 4).unwrap(),
    }
}

fn subset_from_mask(g: &FiniteGroup, mask: u64) -> Subset {
    g.subset((0..g.order()).filter(|&x| mask >> (x % 64) & 1 == 1)).unwrap()
}

fn brute_vc(sys: &SetSystem) -> usize {
    let m = sys.base_size();
    let mut best = 0;
    for mask in 1u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let sample = Subset::from_indices(m, (0..m).filter(|&i| mask >> i & 1 == 1)).unwrap();
        let mut traces: Vec<Subset> = sys.family().iter().map(|s| s.intersection(&sample)).collect();
        traces.sort_by_key(|t| t.to_vec());
        traces.dedup();
        if traces.len() == 1 << size {
            best = size;
        }
    }
    best
}

fn brute_stab(g: &FiniteGroup, a: &Subset) -> Subset {
    g.subset((0..g.order()).filter(|&x| g.left_translate(x, a) == *a)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_tables_are_latin_and_associative(pick in 0u8..5, n in 1usize..12) {
        let g = small_group(pick, n);
        let t = g.table();
        let o = g.order();
        for r in 0..o {
            let mut row: Vec<u32> = t[r * o..(r + 1) * o].to_vec();
            row.sort_unstable();
            prop_assert!(row.iter().enumerate().all(|(i, &v)| v as usize == i));
            let mut col: Vec<u32> = (0..o).map(|c| t[c * o + r]).collect();
            col.sort_unstable();
            prop_assert!(col.iter().enumerate().all(|(i, &v)| v as usize == i));
        }
        for a in 0..o {
            for b in 0..o {
                for c in 0..o {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        let reparsed = FiniteGroup::from_cayley_table(&g.to_cayley_text()).unwrap();
        prop_assert_eq!(reparsed.table(), t);
    }

    #[test]
    fn cosets_partition_the_group(pick in 0u8..5, n in 1usize..12, gens in any::<u64>()) {
        let g = small_group(pick, n);
        let h = generated_subgroup(&g, &subset_from_mask(&g, gens & 0b111)).unwrap();
        prop_assert!(is_subgroup(&g, &h));
        let cosets = left_cosets(&g, &h).unwrap();
        prop_assert_eq!(cosets.len() * h.len(), g.order());
        let mut union = Subset::empty(g.order());
        for c in &cosets {
            prop_assert_eq!(c.len(), h.len());
            prop_assert!(!union.intersects(c));
            union.union_with(c);
        }
        prop_assert!(union.is_full());
        let core = normal_core(&g, &h).unwrap();
        prop_assert!(is_normal(&g, &core) && core.is_subset(&h));
    }

    #[test]
    fn shatter_values_are_monotone_and_bounded(seed in any::<u64>(), base in 3usize..10, size in 1usize..20) {
        let sys = random::random_set_system(base, size, &ratio(1, 2), &mut rng(seed));
        let k = vc_dimension(&sys, 16).unwrap().exact().unwrap();
        prop_assert_eq!(k, brute_vc(&sys));
        let mut prev = 1u64;
        for n in 0..=base {
            let v = shatter_function(&sys, n, ShatterMode::Exact { budget: DEFAULT_BUDGET }).unwrap();
            prop_assert!(v.exact);
            prop_assert!(v.value >= prev);
            prop_assert!(num_bigint::BigUint::from(v.value) <= sauer_shelah_bound(k, n));
            prop_assert!(v.value as usize <= sys.len());
            if n <= k {
                prop_assert_eq!(v.value, 1u64 << n);
            }
            prev = v.value;
        }
    }

    #[test]
    fn shattering_is_downward_closed(seed in any::<u64>(), base in 3usize..9) {
        let sys = random::random_set_system(base, 24, &ratio(1, 2), &mut rng(seed));
        let search = vc_dimension_with_budget(&sys, 16, DEFAULT_BUDGET).unwrap();
        let w = Subset::from_indices(base, search.witness.iter().copied()).unwrap();
        prop_assert!(is_shattered(&sys, &w).unwrap());
        for x in w.iter() {
            let mut smaller = w.clone();
            smaller.remove(x);
            prop_assert!(is_shattered(&sys, &smaller).unwrap());
        }
    }

    #[test]
    fn dual_vc_is_bounded(seed in any::<u64>(), base in 2usize..8, size in 1usize..12) {
        let sys = random::random_set_system(base, size, &ratio(1, 2), &mut rng(seed));
        let k = vc_dimension(&sys, 16).unwrap().exact().unwrap();
        let dual = dual_system(&sys);
        let kd = vc_dimension(&dual, 16).unwrap().exact().unwrap();
        prop_assert!(kd < 1 << (k + 1));
    }

    #[test]
    fn two_sided_family_dominates(pick in 0u8..5, n in 3usize..9, mask in any::<u64>()) {
        let g = small_group(pick, n);
        let a = subset_from_mask(&g, mask);
        prop_assume!(!a.is_empty());
        let vc = |mode| {
            let sys = translate_family(&TranslateFamilySpec { group: &g, a: a.clone(), mode }).unwrap();
            vc_dimension(&sys, 16).unwrap().exact().unwrap()
        };
        let bi = vc(TranslateMode::Bi);
        prop_assert!(bi >= vc(TranslateMode::Left));
        prop_assert!(bi >= vc(TranslateMode::Right));
    }

    #[test]
    fn stabilizers_are_symmetric_and_monotone(pick in 0u8..5, n in 2usize..12, mask in any::<u64>()) {
        let g = small_group(pick, n);
        let a = subset_from_mask(&g, mask);
        let grid = [ratio(0, 1), ratio(1, 10), ratio(1, 4), ratio(1, 2), ratio(1, 1)];
        let mut prev: Option<Subset> = None;
        for eps in &grid {
            let s = stab_eps(&g, &a, eps).unwrap();
            prop_assert!(s.contains(g.identity()));
            prop_assert_eq!(g.inverse_set(&s), s.clone());
            if let Some(p) = &prev {
                prop_assert!(p.is_subset(&s));
            }
            prev = Some(s);
        }
        prop_assert!(prev.unwrap().is_full());
        let zero = stabilizers::stab_zero_subgroup(&g, &a).unwrap();
        prop_assert_eq!(zero, brute_stab(&g, &a));
    }

    #[test]
    fn g_star_is_the_core_of_the_stabilizer(pick in 0u8..5, n in 2usize..12, mask in any::<u64>()) {
        let g = small_group(pick, n);
        let a = subset_from_mask(&g, mask);
        let stab = brute_stab(&g, &a);
        let core = g
            .subset((0..g.order()).filter(|&x| (0..g.order()).all(|y| stab.contains(g.mul(g.mul(y, x), g.inv(y))))))
            .unwrap();
        prop_assert_eq!(stabilizers::g_star(&g, &a).unwrap(), core);
    }

    #[test]
    fn greedy_cover_is_never_smaller(pick in 0u8..5, n in 2usize..10, mask in any::<u64>()) {
        let g = small_group(pick, n);
        let a = subset_from_mask(&g, mask | 1);
        let greedy = covering_number(&g, &a, Side::Left, CoverMode::Greedy).unwrap();
        let exact = covering_number(&g, &a, Side::Left, CoverMode::exact()).unwrap();
        prop_assert!(exact.optimal);
        prop_assert!(exact.size <= greedy.size);
        prop_assert!(verify_cover(&g, &a, Side::Left, &greedy.translators));
        prop_assert!(verify_cover(&g, &a, Side::Left, &exact.translators));
        prop_assert!(exact.size * a.len() >= g.order());
    }

    #[test]
    fn irregular_mass_is_antitone(pick in 0u8..5, n in 2usize..12, mask in any::<u64>(), gens in any::<u64>()) {
        let g = small_group(pick, n);
        let a = subset_from_mask(&g, mask);
        let h = generated_subgroup(&g, &subset_from_mask(&g, gens & 0b11)).unwrap();
        let grid = [ratio(0, 1), ratio(1, 20), ratio(1, 10), ratio(1, 4), ratio(2, 5)];
        let masses: Vec<Rational> = grid.iter().map(|e| irregular_fraction(&g, &h, &a, e).unwrap().irregular_mass).collect();
        prop_assert!(masses.windows(2).all(|w| w[0] >= w[1]));
        // a union of cosets is regular at every level
        let mut union = Subset::empty(g.order());
        for c in left_cosets(&g, &h).unwrap().iter().filter(|c| c.intersects(&a)) {
            union.union_with(c);
        }
        for e in &grid {
            prop_assert_eq!(irregular_fraction(&g, &h, &union, e).unwrap().irregular_mass, ratio(0, 1));
        }
    }
}

#[test]
fn translate_family_genericity_dichotomy() {
    // A set is left n-generic for n = covering number; a subgroup of index i needs exactly i translates.
    for m in [4usize, 6, 8, 12] {
        let g = FiniteGroup::cyclic(m).unwrap();
        for d in (1..=m).filter(|d| m % d == 0) {
            let h = g.subset((0..m).step_by(d)).unwrap();
            assert_eq!(covering_number(&g, &h, Side::Left, CoverMode::exact()).unwrap().size, d);
        }
    }
}

#[test]
fn level_sets_from_certificates_contain_the_exact_level_set() {
    let g = FiniteGroup::cyclic(60).unwrap();
    let mut r = rng(11);
    for trial in 0..10u64 {
        let a = random::union_of_intervals(60, 2, 12, &mut r);
        let sys = translate_family(&TranslateFamilySpec { group: &g, a, mode: TranslateMode::Left }).unwrap();
        let cert = approx::random_eps_approximation(&sys, &ApproxParams::new(ratio(1, 5), trial)).unwrap();
        assert!(cert.verified);
        let lo = ratio(r.gen_range(0..5), 10);
        let hi = lo + ratio(1, 5);
        let exact = approx::measure_level_set(&sys, &lo, &hi, LevelMode::Exact).unwrap();
        let approx = approx::measure_level_set(&sys, &lo, &hi, LevelMode::Approx(&cert)).unwrap();
        assert!(exact.iter().all(|i| approx.contains(i)));
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let g = FiniteGroup::cyclic(128).unwrap();
    let a = random::union_of_intervals(128, 3, 16, &mut rng(5));
    let sys = translate_family(&TranslateFamilySpec { group: &g, a: a.clone(), mode: TranslateMode::Left }).unwrap();
    let params = ApproxParams::new(ratio(1, 10), 42);
    assert_eq!(
        approx::random_eps_approximation(&sys, &params).unwrap(),
        approx::random_eps_approximation(&sys, &params).unwrap()
    );
    assert_eq!(random::union_of_intervals(128, 3, 16, &mut rng(5)), a);
    let w = stabilizers::stab_covering_witness(&g, &a, &ratio(1, 4), &Default::default()).unwrap();
    let w2 = stabilizers::stab_covering_witness(&g, &a, &ratio(1, 4), &Default::default()).unwrap();
    assert_eq!(w.covering_reps, w2.covering_reps);
    assert_eq!(w.net, w2.net);
}
