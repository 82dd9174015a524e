//! Set systems over finite bases: translate families, traces, the shatter
//! function and exact VC dimension.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Default node limit for exact searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A deduplicated family of subsets of `0..base_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    base_size: usize,
    family: Vec<Subset>,
    labels: Option<Vec<String>>,
    anchor: Option<usize>,
}

impl SetSystem {
    /// Builds a system, dropping repeated sets (first occurrence wins).
    pub fn new(base_size: usize, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        Self::build(base_size, sets.into_iter().map(|s| (s, None)))
    }

    pub fn with_labels(base_size: usize, sets: impl IntoIterator<Item = (Subset, String)>) -> Result<Self> {
        Self::build(base_size, sets.into_iter().map(|(s, l)| (s, Some(l))))
    }

    fn build(base_size: usize, sets: impl Iterator<Item = (Subset, Option<String>)>) -> Result<Self> {
        let mut seen: HashMap<Subset, ()> = HashMap::new();
        let mut family = Vec::new();
        let mut labels = Vec::new();
        let mut any_label = false;
        for (s, label) in sets {
            if s.universe() != base_size {
                return Err(Error::UniverseMismatch { expected: base_size, found: s.universe() });
            }
            if seen.insert(s.clone(), ()).is_none() {
                family.push(s);
                any_label |= label.is_some();
                labels.push(label.unwrap_or_default());
            }
        }
        Ok(SetSystem { base_size, family, labels: any_label.then_some(labels), anchor: None })
    }

    /// The powerset of `0..m`; intended for small `m`.
    pub fn powerset(m: usize) -> Self {
        assert!(m < 20, "powerset of {m} points is too large");
        let sets = (0u64..1 << m).map(|mask| Subset::from_indices(m, (0..m).filter(|i| mask >> i & 1 == 1)).unwrap());
        SetSystem::new(m, sets).unwrap()
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// A base point that every shattered set can be moved onto by a
    /// family-preserving transitive action (set for translate families).
    pub fn anchor(&self) -> Option<usize> {
        self.anchor
    }

    /// Declares a symmetry anchor. The caller guarantees the family is
    /// invariant under a group acting transitively on the base.
    pub fn set_anchor(&mut self, point: Option<usize>) {
        self.anchor = point.filter(|&p| p < self.base_size);
    }

    /// `{x ∈ S_i}` for every base point `x`, as subsets of family indices.
    pub fn columns(&self) -> Vec<Subset> {
        let f = self.family.len();
        let mut cols = vec![Subset::empty(f); self.base_size];
        for (i, s) in self.family.iter().enumerate() {
            for x in s {
                cols[x].insert(i);
            }
        }
        cols
    }

    pub fn check_sample(&self, sample: &Subset) -> Result<()> {
        if sample.universe() != self.base_size {
            return Err(Error::UniverseMismatch { expected: self.base_size, found: sample.universe() });
        }
        Ok(())
    }

    /// Parses the text format: base size on line 1, then one set per line as
    /// sorted indices, `-` for the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (no, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let m: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: no + 1, message: format!("expected base size, found {first:?}") })?;
        let mut sets = Vec::new();
        for (no, line) in lines {
            let line = line.trim();
            let mut s = Subset::empty(m);
            if line != "-" {
                for tok in line.split_whitespace() {
                    let v: usize =
                        tok.parse().map_err(|_| Error::Parse { line: no + 1, message: format!("bad index {tok:?}") })?;
                    if v >= m {
                        return Err(Error::Parse { line: no + 1, message: format!("index {v} outside base 0..{m}") });
                    }
                    s.insert(v);
                }
            }
            sets.push(s);
        }
        SetSystem::new(m, sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.base_size);
        for s in &self.family {
            if s.is_empty() {
                out.push('-');
            } else {
                let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                out.push_str(&items.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

struct FamilyBuilder {
    seen: HashSet<Subset>,
    family: Vec<Subset>,
    labels: Vec<String>,
}

impl FamilyBuilder {
    fn new() -> Self {
        FamilyBuilder { seen: HashSet::new(), family: Vec::new(), labels: Vec::new() }
    }

    fn push(&mut self, s: Subset, label: impl FnOnce() -> String) {
        if !self.seen.contains(&s) {
            self.seen.insert(s.clone());
            self.family.push(s);
            self.labels.push(label());
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslateMode {
    Left,
    Right,
    Bi,
}

#[derive(Debug, Clone)]
pub struct TranslateFamilySpec<'a> {
    pub group: &'a FiniteGroup,
    pub a: Subset,
    pub mode: TranslateMode,
}

/// `{gA}`, `{Ag}` or `{gAh}`, deduplicated. Labels name the translating
/// elements of the first occurrence. The group identity is recorded as the
/// symmetry anchor: translation acts transitively and preserves each family.
pub fn translate_family(spec: &TranslateFamilySpec<'_>) -> Result<SetSystem> {
    let g = spec.group;
    g.check_subset(&spec.a)?;
    let n = g.order();
    let a = &spec.a;
    let mut b = FamilyBuilder::new();
    match spec.mode {
        TranslateMode::Left => {
            for x in 0..n {
                b.push(g.left_translate(x, a), || format!("g={}", g.element_label(x)));
            }
        }
        TranslateMode::Right => {
            for x in 0..n {
                b.push(g.right_translate(a, x), || format!("h={}", g.element_label(x)));
            }
        }
        TranslateMode::Bi => {
            let mut rights = FamilyBuilder::new();
            for h in 0..n {
                rights.push(g.right_translate(a, h), || g.element_label(h));
            }
            for (r, hl) in rights.family.iter().zip(&rights.labels) {
                for x in 0..n {
                    b.push(g.left_translate(x, r), || format!("g={},h={hl}", g.element_label(x)));
                }
            }
        }
    }
    let mut sys = SetSystem { base_size: n, family: b.family, labels: Some(b.labels), anchor: None };
    sys.set_anchor(Some(g.identity()));
    Ok(sys)
}

/// Distinct traces `sample ∩ S`, in order of first occurrence.
pub fn trace(sys: &SetSystem, sample: &Subset) -> Result<Vec<Subset>> {
    sys.check_sample(sample)?;
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for s in sys.family() {
        let t = sample.intersection(s);
        if seen.insert(t.clone(), ()).is_none() {
            out.push(t);
        }
    }
    Ok(out)
}

/// Splits every class by `col`; `None` if some class is not split.
#[inline]
fn split_all(classes: &[Subset], col: &Subset) -> Option<Vec<Subset>> {
    let mut out = Vec::with_capacity(classes.len() * 2);
    for c in classes {
        if !c.is_split_by(col) {
            return None;
        }
        out.push(c.intersection(col));
        out.push(c.difference(col));
    }
    Some(out)
}

#[inline]
fn splits_all(classes: &[Subset], col: &Subset) -> bool {
    classes.iter().all(|c| c.is_split_by(col))
}

/// Refines classes by `col`, keeping empty halves out.
fn refine(classes: &[Subset], col: &Subset) -> Vec<Subset> {
    let mut out = Vec::with_capacity(classes.len() * 2);
    for c in classes {
        let inside = c.intersection(col);
        let outside = c.difference(col);
        if !inside.is_empty() {
            out.push(inside);
        }
        if !outside.is_empty() {
            out.push(outside);
        }
    }
    out
}

pub fn is_shattered(sys: &SetSystem, sample: &Subset) -> Result<bool> {
    sys.check_sample(sample)?;
    let k = sample.len();
    if k > 30 {
        return Err(Error::SampleTooLarge(k));
    }
    if sys.is_empty() {
        return Ok(false);
    }
    let f = sys.len();
    if k < usize::BITS as usize - 1 && (1usize << k) > f {
        return Ok(false);
    }
    let mut classes = vec![Subset::full(f)];
    for x in sample {
        let col = Subset::from_indices(f, (0..f).filter(|&i| sys.family()[i].contains(x))).expect("in range");
        match split_all(&classes, &col) {
            Some(next) => classes = next,
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatterMode {
    Exact { budget: u64 },
    Sampled { seed: u64, tries: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShatterValue {
    pub n: usize,
    pub value: u64,
    /// False when `value` is only a lower bound from sampling.
    pub exact: bool,
    /// Samples examined (exact mode counts search nodes).
    pub work: u64,
}

fn pow2_saturating(n: usize) -> u64 {
    if n >= 63 { u64::MAX } else { 1u64 << n }
}

/// `π(n)`, the largest number of traces on an `n`-point sample.
///
/// Exact mode is a branch and bound over samples in increasing index order.
/// A class of `c` family members can split into at most `min(c, 2^r)` traces
/// with `r` points still to add, which bounds every subtree. The search stops
/// as soon as the ceiling `min(2^n, |family|)` is reached.
pub fn shatter_function(sys: &SetSystem, n: usize, mode: ShatterMode) -> Result<ShatterValue> {
    if n > sys.base_size() {
        return Err(Error::InvalidArgument(format!("sample size {n} exceeds base size {}", sys.base_size())));
    }
    if sys.is_empty() {
        return Ok(ShatterValue { n, value: 0, exact: true, work: 0 });
    }
    let f = sys.len() as u64;
    let ceiling = pow2_saturating(n).min(f);
    if n == 0 {
        return Ok(ShatterValue { n, value: 1, exact: true, work: 0 });
    }
    let cols = sys.columns();
    match mode {
        ShatterMode::Sampled { seed, tries } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = 0u64;
            let mut work = 0;
            for _ in 0..tries {
                work += 1;
                let mut classes = vec![Subset::full(sys.len())];
                for x in sample_indices(&mut rng, sys.base_size(), n).into_iter() {
                    classes = refine(&classes, &cols[x]);
                }
                best = best.max(classes.len() as u64);
                if best == ceiling {
                    break;
                }
            }
            Ok(ShatterValue { n, value: best, exact: best == ceiling, work })
        }
        ShatterMode::Exact { budget } => exact_shatter(sys, &cols, n, ceiling, budget, 0),
    }
}

/// Exact `π(n)`, given a value `lower` already known to be attained.
pub(crate) fn shatter_function_at_least(sys: &SetSystem, n: usize, budget: u64, lower: u64) -> Result<ShatterValue> {
    if n > sys.base_size() {
        return Err(Error::InvalidArgument(format!("sample size {n} exceeds base size {}", sys.base_size())));
    }
    if sys.is_empty() || n == 0 {
        return shatter_function(sys, n, ShatterMode::Exact { budget });
    }
    let ceiling = pow2_saturating(n).min(sys.len() as u64);
    exact_shatter(sys, &sys.columns(), n, ceiling, budget, lower)
}

fn exact_shatter(sys: &SetSystem, cols: &[Subset], n: usize, ceiling: u64, budget: u64, lower: u64) -> Result<ShatterValue> {
    let order: Vec<usize> = match sys.anchor() {
        Some(p) => std::iter::once(p).chain((0..sys.base_size()).filter(|&x| x != p)).collect(),
        None => (0..sys.base_size()).collect(),
    };
    let mut search = ShatterSearch::new(cols, sys.len(), n, ceiling, budget, order);
    search.best = search.greedy_lower_bound(sys.anchor(), sys.len()).max(lower);
    if search.best < ceiling {
        search.best = search.best.max(swap_lower_bound(cols, sys.len(), n, sys.anchor(), ceiling));
    }
    if search.best < ceiling {
        match sys.anchor() {
            Some(p) => {
                search.refine_level(0, p);
                let rest = search.order[1..].to_vec();
                search.dfs(1, &rest)?;
            }
            None => {
                let all = search.order.clone();
                search.dfs(0, &all)?
            }
        }
    }
    Ok(ShatterValue { n, value: search.best, exact: true, work: search.nodes })
}

fn count_traces(cols: &[Subset], f: usize, sample: &[usize]) -> u64 {
    let mut labels = vec![0u32; f];
    let mut k = 1usize;
    let mut remap = Vec::new();
    for &x in sample {
        remap.clear();
        remap.resize(2 * k, u32::MAX);
        let mut next = 0u32;
        for (i, l) in labels.iter_mut().enumerate() {
            let key = 2 * *l as usize + cols[x].contains(i) as usize;
            if remap[key] == u32::MAX {
                remap[key] = next;
                next += 1;
            }
            *l = remap[key];
        }
        k = next as usize;
    }
    k as u64
}

/// Local search from an evenly spread sample: swap a sample point for an
/// outside point while the trace count grows.
fn swap_lower_bound(cols: &[Subset], f: usize, n: usize, anchor: Option<usize>, ceiling: u64) -> u64 {
    let m = cols.len();
    // evenly spread start, anchor first
    let start = anchor.unwrap_or(0);
    let mut sample: Vec<usize> = anchor.into_iter().collect();
    for x in (0..n).map(|i| (start + i * m / n) % m).chain(0..m) {
        if sample.len() == n {
            break;
        }
        if !sample.contains(&x) {
            sample.push(x);
        }
    }
    let mut best = count_traces(cols, f, &sample);
    let fixed = anchor.is_some() as usize;
    let mut evaluations = 4 * m * n;
    let mut improved = true;
    while improved && best < ceiling && evaluations > 0 {
        improved = false;
        'outer: for i in fixed..sample.len() {
            for y in 0..m {
                if sample.contains(&y) {
                    continue;
                }
                if evaluations == 0 {
                    break 'outer;
                }
                evaluations -= 1;
                let old = sample[i];
                sample[i] = y;
                let v = count_traces(cols, f, &sample);
                if v > best {
                    best = v;
                    improved = true;
                    break 'outer;
                }
                sample[i] = old;
            }
        }
    }
    best
}

/// Depth-first search over samples. Level `d` holds the trace class of each
/// family member after `d` points, and the class sizes.
struct ShatterSearch<'a> {
    cols: &'a [Subset],
    n: usize,
    ceiling: u64,
    best: u64,
    nodes: u64,
    budget: u64,
    order: Vec<usize>,
    labels: Vec<Vec<u32>>,
    sizes: Vec<Vec<u32>>,
    remap: Vec<u32>,
    counts: Vec<u32>,
}

impl<'a> ShatterSearch<'a> {
    fn new(cols: &'a [Subset], f: usize, n: usize, ceiling: u64, budget: u64, order: Vec<usize>) -> Self {
        let mut labels = vec![Vec::with_capacity(f); n + 1];
        labels[0] = vec![0; f];
        let mut sizes = vec![Vec::new(); n + 1];
        sizes[0] = vec![f as u32];
        ShatterSearch { cols, n, ceiling, best: 0, nodes: 0, budget, order, labels, sizes, remap: Vec::new(), counts: Vec::new() }
    }

    /// Splits the classes of level `depth` by point `x` into level `depth + 1`.
    fn refine_level(&mut self, depth: usize, x: usize) {
        let col = &self.cols[x];
        let (lo, hi) = self.labels.split_at_mut(depth + 1);
        let (src, dst) = (&lo[depth], &mut hi[0]);
        let (slo, shi) = self.sizes.split_at_mut(depth + 1);
        let dst_sizes = &mut shi[0];
        let k = slo[depth].len();
        self.remap.clear();
        self.remap.resize(2 * k, u32::MAX);
        dst.clear();
        dst_sizes.clear();
        for (i, &l) in src.iter().enumerate() {
            let key = 2 * l as usize + col.contains(i) as usize;
            let id = &mut self.remap[key];
            if *id == u32::MAX {
                *id = dst_sizes.len() as u32;
                dst_sizes.push(0);
            }
            dst_sizes[*id as usize] += 1;
            dst.push(*id);
        }
    }

    fn greedy_lower_bound(&self, anchor: Option<usize>, f: usize) -> u64 {
        let mut classes = vec![Subset::full(f)];
        let mut used = vec![false; self.cols.len()];
        let mut size = 0;
        if let Some(p) = anchor {
            classes = refine(&classes, &self.cols[p]);
            used[p] = true;
            size = 1;
        }
        while size < self.n {
            let mut pick = None;
            let mut pick_count = 0;
            for x in 0..self.cols.len() {
                if used[x] {
                    continue;
                }
                let c = classes.iter().filter(|c| c.is_split_by(&self.cols[x])).count();
                if pick.is_none() || c > pick_count {
                    pick = Some(x);
                    pick_count = c;
                }
            }
            let x = pick.expect("n <= base size");
            used[x] = true;
            classes = refine(&classes, &self.cols[x]);
            size += 1;
        }
        classes.len() as u64
    }

    /// Classes of level `depth` that `x` could still split at any later level:
    /// `Σ_C min(|C ∩ x|, |C \ x|)`.
    fn split_potential(&mut self, depth: usize, x: usize) -> u64 {
        let sizes = &self.sizes[depth];
        let labels = &self.labels[depth];
        self.counts.clear();
        self.counts.resize(sizes.len(), 0);
        for i in self.cols[x].iter() {
            self.counts[labels[i] as usize] += 1;
        }
        self.counts.iter().zip(sizes).map(|(&c, &s)| c.min(s - c) as u64).sum()
    }

    /// Every level-`depth` partition is attained by some `n`-point sample,
    /// since adding points never merges classes. Candidates are searched in
    /// decreasing split potential, and the `r` largest potentials bound the
    /// gain of any completion.
    fn dfs(&mut self, depth: usize, cands: &[usize]) -> Result<()> {
        let k = self.sizes[depth].len() as u64;
        self.best = self.best.max(k);
        if depth == self.n || self.best >= self.ceiling {
            return Ok(());
        }
        let remaining = self.n - depth;
        let cap = pow2_saturating(remaining);
        if self.sizes[depth].iter().map(|&c| (c as u64).min(cap)).sum::<u64>() <= self.best {
            return Ok(());
        }
        let mut scored: Vec<(u64, usize)> = Vec::with_capacity(cands.len());
        for &x in cands {
            let u = self.split_potential(depth, x);
            if u > 0 {
                scored.push((u, x));
            }
        }
        scored.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let next: Vec<usize> = scored.iter().map(|&(_, x)| x).collect();
        for i in 0..scored.len() {
            let gain: u64 = scored[i..].iter().take(remaining).map(|&(u, _)| u).sum();
            if k + gain <= self.best || self.best >= self.ceiling {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { budget: self.budget });
            }
            self.refine_level(depth, next[i]);
            self.dfs(depth + 1, &next[i + 1..])?;
        }
        Ok(())
    }
}

/// Outcome of a VC-dimension search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VcDimension {
    Exact { value: usize },
    /// A shattered set of size `cap` exists; the search stopped there.
    AtLeast { value: usize },
    /// The node budget ran out; `value` is the largest size certified so far.
    Unknown { at_least: usize, budget: u64 },
}

impl VcDimension {
    pub fn exact(self) -> Option<usize> {
        match self {
            VcDimension::Exact { value } => Some(value),
            _ => None,
        }
    }

    /// Largest certified shattered-set size.
    pub fn lower_bound(self) -> usize {
        match self {
            VcDimension::Exact { value } | VcDimension::AtLeast { value } => value,
            VcDimension::Unknown { at_least, .. } => at_least,
        }
    }
}

/// A shattered set of maximum size, plus the search outcome.
#[derive(Debug, Clone)]
pub struct VcSearch {
    pub result: VcDimension,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

pub fn vc_dimension(sys: &SetSystem, cap: usize) -> Result<VcDimension> {
    vc_dimension_with_budget(sys, cap, DEFAULT_BUDGET).map(|s| s.result)
}

/// Exact VC dimension below `cap`.
///
/// Depth-first over shattered sets in increasing index order. Shattering is
/// downward closed, so a child may only add points that already extend the
/// parent: the candidate list shrinks monotonically and doubles as the
/// pruning certificate `|S| + |candidates| <= best`.
pub fn vc_dimension_with_budget(sys: &SetSystem, cap: usize, budget: u64) -> Result<VcSearch> {
    if sys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let cols = sys.columns();
    let f = sys.len();
    let mut search = VcSearchState { cols: &cols, family: f, cap, best: 0, witness: Vec::new(), nodes: 0, budget, exhausted: false };
    if cap == 0 {
        return Ok(VcSearch { result: VcDimension::AtLeast { value: 0 }, witness: Vec::new(), nodes: 0 });
    }
    let root = vec![Subset::full(f)];
    let mut path = Vec::new();
    match sys.anchor() {
        Some(p) => {
            if let Some(classes) = split_all(&root, &cols[p]) {
                path.push(p);
                let viable: Vec<usize> =
                    (0..sys.base_size()).filter(|&y| y != p && splits_all(&classes, &cols[y])).collect();
                search.dfs(&classes, &viable, &mut path);
            }
        }
        None => {
            let viable: Vec<usize> = (0..sys.base_size()).filter(|&y| splits_all(&root, &cols[y])).collect();
            search.dfs(&root, &viable, &mut path);
        }
    }
    let result = if search.best >= cap {
        VcDimension::AtLeast { value: cap }
    } else if search.exhausted {
        VcDimension::Unknown { at_least: search.best, budget }
    } else {
        VcDimension::Exact { value: search.best }
    };
    let mut witness = search.witness;
    witness.sort_unstable();
    Ok(VcSearch { result, witness, nodes: search.nodes })
}

struct VcSearchState<'a> {
    cols: &'a [Subset],
    family: usize,
    cap: usize,
    best: usize,
    witness: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl VcSearchState<'_> {
    fn done(&self) -> bool {
        self.exhausted || self.best >= self.cap
    }

    fn dfs(&mut self, classes: &[Subset], viable: &[usize], path: &mut Vec<usize>) {
        if path.len() > self.best {
            self.best = path.len();
            self.witness = path.clone();
        }
        if self.done() || path.len() + viable.len() <= self.best || classes.len() * 2 > self.family {
            return;
        }
        for (i, &y) in viable.iter().enumerate() {
            if self.done() || path.len() + (viable.len() - i) <= self.best {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let child = split_all(classes, &self.cols[y]).expect("viable points split every class");
            let child_viable: Vec<usize> = if child.len() * 2 > self.family {
                Vec::new()
            } else {
                viable[i + 1..].iter().copied().filter(|&z| splits_all(&child, &self.cols[z])).collect()
            };
            path.push(y);
            self.dfs(&child, &child_viable, path);
            path.pop();
        }
    }
}

/// True iff the VC dimension is below `k`.
pub fn nip_check(sys: &SetSystem, k: usize, budget: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("nip_check needs k >= 1".into()));
    }
    match vc_dimension_with_budget(sys, k, budget)?.result {
        VcDimension::Exact { value } => Ok(value < k),
        VcDimension::AtLeast { .. } => Ok(false),
        VcDimension::Unknown { at_least, budget } => {
            if at_least >= k {
                Ok(false)
            } else {
                Err(Error::BudgetExhausted { budget })
            }
        }
    }
}

/// `Σ_{i=0..k} C(n, i)`.
pub fn sauer_shelah_bound(k: usize, n: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..=k.min(n) {
        if i > 0 {
            term = term * BigUint::from(n - i + 1) / BigUint::from(i);
        }
        total += &term;
    }
    total
}

/// The dual system: base = family indices, one set `{i : x ∈ S_i}` per
/// original base point.
pub fn dual_system(sys: &SetSystem) -> SetSystem {
    SetSystem::new(sys.len(), sys.columns()).expect("columns share the family universe")
}
