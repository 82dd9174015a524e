//! Measure stabilizers `Stab^ε(A) = {x : μ(xA △ A) ≤ ε}`, the generic cover
//! they admit, covering numbers, and the two-sided stabilizer intersection.

use crate::approx::greedy_hitting_set;
use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::{self, Rational};
use crate::setsystem::{
    sauer_shelah_bound, shatter_function_at_least, translate_family, vc_dimension_with_budget, SetSystem,
    TranslateFamilySpec, TranslateMode,
};
use crate::subgroup::{is_normal, is_subgroup, normal_core, setwise_stabilizer, Side};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Above this many candidate difference sets the cover construction nets the
/// left-translate family instead.
pub const PAIRWISE_FAMILY_LIMIT: usize = 4_000_000;

/// Element scans shard across threads from this group order on.
const PARALLEL_SCAN_MIN: usize = 2048;

fn check_epsilon(eps: &Rational) -> Result<()> {
    if !rational::in_unit_interval(eps) {
        return Err(Error::InvalidArgument("epsilon out of range".into()));
    }
    Ok(())
}

fn filter_elements(n: usize, keep: impl Fn(usize) -> bool + Sync) -> Subset {
    let members: Vec<usize> = if n >= PARALLEL_SCAN_MIN {
        (0..n).into_par_iter().filter(|&x| keep(x)).collect()
    } else {
        (0..n).filter(|&x| keep(x)).collect()
    };
    Subset::from_indices(n, members).expect("indices in range")
}

/// `{x : |xA △ A| ≤ ε·|G|}`, compared exactly by cross-multiplication.
pub fn stab_eps(g: &FiniteGroup, a: &Subset, epsilon: &Rational) -> Result<Subset> {
    g.check_subset(a)?;
    check_epsilon(epsilon)?;
    let n = g.order();
    Ok(filter_elements(n, |x| {
        let moved = g.left_translate(x, a);
        rational::fraction_le(moved.symmetric_difference_len(a), n, epsilon)
    }))
}

/// `Stab^0(A)`, cross-checked against the setwise stabilizer and the
/// subgroup test.
pub fn stab_zero_subgroup(g: &FiniteGroup, a: &Subset) -> Result<Subset> {
    let stab = stab_eps(g, a, &Rational::zero())?;
    if stab != setwise_stabilizer(g, a, Side::Left)? {
        return Err(Error::Consistency("Stab^0 differs from the setwise stabilizer".into()));
    }
    if !is_subgroup(g, &stab) {
        return Err(Error::Consistency("Stab^0 is not a subgroup".into()));
    }
    Ok(stab)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetFamily {
    /// Net over `{g₁A △ g₂A}`; the cover is guaranteed.
    PairwiseDifference,
    /// Net over `{gA}`; the cover is checked after the fact.
    LeftTranslate,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub stab: Vec<usize>,
    pub stab_size: usize,
    pub is_subgroup: bool,
    pub covering_reps: Vec<usize>,
    pub class_count: usize,
    pub net: Vec<usize>,
    pub net_size: usize,
    pub net_family: NetFamily,
    /// `π(net_size)` for the left-translate family, when computed within budget.
    pub theoretical_class_bound: Option<u64>,
    /// `Σ_{i≤k} C(net_size, i)` for the VC parameter `k`, as a decimal string.
    pub sauer_shelah_class_bound: Option<String>,
    pub vc_parameter: Option<usize>,
    pub cover_verified: bool,
}

#[derive(Debug, Clone)]
pub struct WitnessOptions {
    /// VC parameter for the Sauer–Shelah bound; searched for when absent.
    pub k_hint: Option<usize>,
    pub vc_cap: usize,
    pub budget: u64,
    /// Node budget for the exact `π(net_size)` bound; the bound is omitted when it runs out.
    pub shatter_budget: u64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { k_hint: None, vc_cap: 12, budget: crate::setsystem::DEFAULT_BUDGET, shatter_budget: 200_000 }
    }
}

/// Builds the generic cover of `G` by left translates of `Stab^ε(A)`.
///
/// `F` is an ε-net for the pairwise differences `g₁A △ g₂A`. Elements with
/// the same trace `F ∩ xA` differ by an element of `Stab^ε`, so one least
/// representative per trace class gives a cover, which is then checked.
pub fn stab_covering_witness(
    g: &FiniteGroup,
    a: &Subset,
    epsilon: &Rational,
    opts: &WitnessOptions,
) -> Result<StabilizerReport> {
    g.check_subset(a)?;
    if *epsilon <= Rational::zero() || *epsilon > Rational::one() {
        return Err(Error::InvalidArgument("epsilon out of range".into()));
    }
    let n = g.order();
    let stab = stab_eps(g, a, epsilon)?;
    let translates: Vec<Subset> = (0..n).map(|x| g.left_translate(x, a)).collect();

    let moved: Vec<usize> = (0..n).filter(|&u| !stab.contains(u)).collect();
    let (net, net_family) = if moved.len().saturating_mul(n) <= PAIRWISE_FAMILY_LIMIT {
        let mut seen = HashSet::new();
        let mut diffs = Vec::new();
        for &u in &moved {
            let d = a.symmetric_difference(&translates[u]);
            for x in 0..n {
                let s = g.left_translate(x, &d);
                if seen.insert(s.clone()) {
                    diffs.push(s);
                }
            }
        }
        let refs: Vec<&Subset> = diffs.iter().collect();
        (greedy_hitting_set(n, &refs), NetFamily::PairwiseDifference)
    } else {
        let heavy: Vec<&Subset> =
            translates.iter().filter(|s| !rational::fraction_le(s.len(), n, epsilon)).collect();
        (greedy_hitting_set(n, &heavy), NetFamily::LeftTranslate)
    };

    let net_set = Subset::from_indices(n, net.iter().copied()).expect("net points in range");
    let mut class_of: HashMap<Subset, usize> = HashMap::new();
    let mut reps = Vec::new();
    for (x, t) in translates.iter().enumerate() {
        class_of.entry(t.intersection(&net_set)).or_insert_with(|| {
            reps.push(x);
            x
        });
    }

    let mut covered = Subset::empty(n);
    for &r in &reps {
        covered.union_with(&g.left_translate(r, &stab));
    }
    let cover_verified = covered.is_full();
    if !cover_verified {
        return Err(Error::Consistency(format!(
            "translates of Stab^{} by {} class representatives miss {} elements",
            rational::format_rational(epsilon),
            reps.len(),
            n - covered.len()
        )));
    }

    let left = translate_family(&TranslateFamilySpec { group: g, a: a.clone(), mode: TranslateMode::Left })?;
    let theoretical_class_bound = match shatter_function_at_least(&left, net.len(), opts.shatter_budget, reps.len() as u64) {
        Ok(v) => Some(v.value),
        Err(Error::BudgetExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    let vc_parameter = match opts.k_hint {
        Some(k) => Some(k),
        None => vc_dimension_with_budget(&left, opts.vc_cap, opts.budget)?.result.exact(),
    };
    let sauer_shelah_class_bound = vc_parameter.map(|k| sauer_shelah_bound(k, net.len()).to_string());

    Ok(StabilizerReport {
        epsilon: *epsilon,
        stab_size: stab.len(),
        is_subgroup: is_subgroup(g, &stab),
        stab: stab.to_vec(),
        class_count: reps.len(),
        covering_reps: reps,
        net_size: net.len(),
        net,
        net_family,
        theoretical_class_bound,
        sauer_shelah_class_bound,
        vc_parameter,
        cover_verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Greedy,
    /// Branch and bound, allowed only for `|G| <= limit`.
    Exact { limit: usize, budget: u64 },
}

impl CoverMode {
    pub fn exact() -> Self {
        CoverMode::Exact { limit: 60, budget: crate::setsystem::DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub side: Side,
    pub translators: Vec<usize>,
    pub size: usize,
    pub optimal: bool,
}

fn translate_by(g: &FiniteGroup, a: &Subset, side: Side, x: usize) -> Subset {
    match side {
        Side::Left => g.left_translate(x, a),
        Side::Right => g.right_translate(a, x),
    }
}

/// True iff the given translates of `a` cover the group.
pub fn verify_cover(g: &FiniteGroup, a: &Subset, side: Side, translators: &[usize]) -> bool {
    let mut covered = Subset::empty(g.order());
    for &x in translators {
        covered.union_with(&translate_by(g, a, side, x));
    }
    covered.is_full()
}

/// Fewest left (right) translates of `a` covering the group.
pub fn covering_number(g: &FiniteGroup, a: &Subset, side: Side, mode: CoverMode) -> Result<CoverResult> {
    g.check_subset(a)?;
    if a.is_empty() {
        return Err(Error::EmptyCoverTarget);
    }
    let n = g.order();
    // distinct translates, keeping the least translator for each
    let mut seen = HashSet::new();
    let mut translates: Vec<(usize, Subset)> = Vec::new();
    for x in 0..n {
        let t = translate_by(g, a, side, x);
        if seen.insert(t.clone()) {
            translates.push((x, t));
        }
    }
    let greedy = greedy_cover(n, &translates);
    match mode {
        CoverMode::Greedy => Ok(CoverResult { side, size: greedy.len(), translators: greedy, optimal: false }),
        CoverMode::Exact { limit, budget } => {
            if n > limit {
                return Err(Error::InvalidArgument(format!("exact cover limited to groups of order <= {limit}")));
            }
            let mut containing = vec![Vec::new(); n];
            for (i, (_, t)) in translates.iter().enumerate() {
                for u in t.iter() {
                    containing[u].push(i);
                }
            }
            let mut bb = CoverSearch { translates: &translates, containing, best: greedy.clone(), chosen: Vec::new(), nodes: 0, budget };
            // translating a cover gives a cover, so some optimal cover contains `a` itself
            let own = translates.iter().position(|(_, t)| t == a).expect("a is its own translate");
            bb.chosen.push(translates[own].0);
            bb.dfs(&Subset::full(n).difference(a))?;
            let mut best = bb.best;
            best.sort_unstable();
            Ok(CoverResult { side, size: best.len(), translators: best, optimal: true })
        }
    }
}

fn greedy_cover(n: usize, translates: &[(usize, Subset)]) -> Vec<usize> {
    let mut uncovered = Subset::full(n);
    let mut out = Vec::new();
    while !uncovered.is_empty() {
        let (mut pick, mut gain) = (0, 0);
        for (i, (_, t)) in translates.iter().enumerate() {
            let c = t.intersection_len(&uncovered);
            if c > gain {
                pick = i;
                gain = c;
            }
        }
        out.push(translates[pick].0);
        uncovered = uncovered.difference(&translates[pick].1);
    }
    out
}

struct CoverSearch<'a> {
    translates: &'a [(usize, Subset)],
    /// Translate indices containing each element.
    containing: Vec<Vec<usize>>,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    /// Branches on the uncovered element in the fewest translates.
    fn dfs(&mut self, uncovered: &Subset) -> Result<()> {
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        let max_gain = self.translates.iter().map(|(_, t)| t.intersection_len(uncovered)).max().unwrap_or(0);
        let lower = self.chosen.len() + uncovered.len().div_ceil(max_gain.max(1));
        if lower >= self.best.len() {
            return Ok(());
        }
        let u = uncovered.iter().min_by_key(|&u| self.containing[u].len()).expect("nonempty");
        let options = self.containing[u].clone();
        for i in options {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { budget: self.budget });
            }
            let (x, t) = &self.translates[i];
            self.chosen.push(*x);
            self.dfs(&uncovered.difference(t))?;
            self.chosen.pop();
            if self.chosen.len() + 1 >= self.best.len() {
                break;
            }
        }
        Ok(())
    }
}

/// `⋂_S Stab^0(S)` over the family; the whole group for an empty family.
pub fn intersect_stabilizers(g: &FiniteGroup, family: &SetSystem) -> Result<Subset> {
    if family.base_size() != g.order() {
        return Err(Error::UniverseMismatch { expected: g.order(), found: family.base_size() });
    }
    let mut current: Vec<usize> = (0..g.order()).collect();
    for s in family.family() {
        current.retain(|&x| s.iter().all(|y| s.contains(g.mul(x, y))));
        if current.len() == 1 {
            break;
        }
    }
    g.subset(current)
}

/// Intersection of exact stabilizers over all two-sided translates `xAy`,
/// checked on every call to equal the normal core of the setwise stabilizer
/// of `A` and to be normal.
pub fn g_star(g: &FiniteGroup, a: &Subset) -> Result<Subset> {
    let bi = translate_family(&TranslateFamilySpec { group: g, a: a.clone(), mode: TranslateMode::Bi })?;
    let result = intersect_stabilizers(g, &bi)?;
    if !is_normal(g, &result) {
        return Err(Error::Consistency("two-sided stabilizer intersection is not normal".into()));
    }
    let core = normal_core(g, &setwise_stabilizer(g, a, Side::Left)?)?;
    if core != result {
        return Err(Error::Consistency("two-sided stabilizer intersection differs from the normal core".into()));
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurePartition {
    pub classes: Vec<Vec<usize>>,
    /// Set when `τ > 0`: classes are connected components of a
    /// non-transitive similarity, not an equivalence relation.
    pub transitive_closure: bool,
}

/// Groups family members with `|S_i △ S_j| ≤ τ·|G|`, closing transitively.
pub fn measure_equivalence_classes(g: &FiniteGroup, family: &SetSystem, tau: &Rational) -> Result<MeasurePartition> {
    check_epsilon(tau)?;
    if family.base_size() != g.order() {
        return Err(Error::UniverseMismatch { expected: g.order(), found: family.base_size() });
    }
    let f = family.len();
    let mut parent: Vec<usize> = (0..f).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let sets = family.family();
    for i in 0..f {
        for j in i + 1..f {
            if rational::fraction_le(sets[i].symmetric_difference_len(&sets[j]), g.order(), tau) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut index = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..f {
        let r = find(&mut parent, i);
        let slot = *index.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(i);
    }
    Ok(MeasurePartition { classes, transitive_closure: *tau > Rational::zero() })
}
