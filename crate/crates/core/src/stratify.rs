//! Two-sided translates can destroy VC bounds: in `S_{k+1}` the left cosets
//! of the point stabilizer `H` have VC dimension 1, while the family
//! `{x : x·b·x ∈ H}` shatters the `k` transpositions `(1 n)`.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm;
use crate::setsystem::{
    is_shattered, translate_family, vc_dimension_with_budget, SetSystem, TranslateFamilySpec, TranslateMode,
    VcDimension,
};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct StratificationWitness {
    pub k: usize,
    /// `S_{k+1}` acting on `{1, .., k+1}`.
    pub group: FiniteGroup,
    /// Permutations fixing 1.
    pub h: Subset,
    /// `a_n = (1 n)` for `n = 2..=k+1`.
    pub transpositions: Vec<usize>,
    /// `(I, b_I)` with `I ⊆ {2..k+1}` (1-based points), `I` ordered by bitmask.
    pub parameters: Vec<(Vec<usize>, usize)>,
    /// `membership[n][I]` is `a_n·b_I·a_n ∈ H`.
    pub membership: Vec<Vec<bool>>,
    pub verified: bool,
}

/// The stabilizer of point 1 in a symmetric group.
pub fn point_stabilizer(g: &FiniteGroup) -> Result<Subset> {
    if g.degree().is_none() {
        return Err(Error::InvalidArgument("point stabilizer needs a symmetric group".into()));
    }
    g.subset((0..g.order()).filter(|&x| g.permutation(x).expect("symmetric")[0] == 0))
}

/// `b_I`: identity when `I` is everything, `(1 x)` when one point `x` is
/// missing, otherwise the increasing cycle through the missing points.
fn parameter_perm(degree: usize, moved: &[usize]) -> Vec<u8> {
    match moved {
        [] => perm::identity(degree),
        [x] => perm::transposition(degree, 0, *x),
        _ => perm::cycle(degree, moved),
    }
}

pub fn build_witness(k: usize) -> Result<StratificationWitness> {
    if !(2..=6).contains(&k) {
        return Err(Error::InvalidArgument(format!("witness needs 2 <= k <= 6, got {k}")));
    }
    let degree = k + 1;
    let group = FiniteGroup::symmetric(degree)?;
    let h = point_stabilizer(&group)?;
    let transpositions: Vec<usize> = (1..degree)
        .map(|p| group.perm_index(&perm::transposition(degree, 0, p)).expect("degree matches"))
        .collect();

    let mut parameters = Vec::with_capacity(1 << k);
    for mask in 0u32..1 << k {
        // 0-based point p+1 for bit p
        let fixed: Vec<usize> = (0..k).filter(|&p| mask >> p & 1 == 1).map(|p| p + 1).collect();
        let moved: Vec<usize> = (0..k).filter(|&p| mask >> p & 1 == 0).map(|p| p + 1).collect();
        let b = group.perm_index(&parameter_perm(degree, &moved)).expect("degree matches");
        parameters.push((fixed.iter().map(|p| p + 1).collect::<Vec<_>>(), b));
    }

    let mut membership = vec![vec![false; parameters.len()]; k];
    let mut verified = true;
    for (row, &a) in transpositions.iter().enumerate() {
        let n_point = row + 2;
        for (col, (fixed, b)) in parameters.iter().enumerate() {
            let inside = h.contains(group.mul(group.mul(a, *b), a));
            membership[row][col] = inside;
            verified &= inside == fixed.contains(&n_point);
        }
    }
    for (fixed, b) in &parameters {
        let p = group.permutation(*b).expect("symmetric");
        let fixed_in_x: Vec<usize> = (1..degree).filter(|&q| p[q] as usize == q).map(|q| q + 1).collect();
        verified &= &fixed_in_x == fixed;
    }
    if !verified {
        return Err(Error::Consistency("membership matrix differs from containment n ∈ I".into()));
    }
    Ok(StratificationWitness { k, group, h, transpositions, parameters, membership, verified })
}

/// `{ {x : x·b·x ∈ H} : b ∈ bs }`.
pub fn conjugation_family(g: &FiniteGroup, h: &Subset, bs: impl IntoIterator<Item = usize>) -> Result<SetSystem> {
    g.check_subset(h)?;
    let n = g.order();
    let sets: Vec<Subset> = bs
        .into_iter()
        .map(|b| Subset::from_indices(n, (0..n).filter(|&x| h.contains(g.mul(g.mul(x, b), x)))).expect("in range"))
        .collect();
    SetSystem::new(n, sets)
}

/// The transpositions, and the witness family that shatters them.
pub fn shattered_set_from_witness(w: &StratificationWitness) -> Result<(Subset, SetSystem)> {
    if !w.verified {
        return Err(Error::Consistency("witness is not verified".into()));
    }
    let sample = w.group.subset(w.transpositions.iter().copied())?;
    let family = conjugation_family(&w.group, &w.h, w.parameters.iter().map(|(_, b)| *b))?;
    if !is_shattered(&family, &sample)? {
        return Err(Error::Consistency("witness family does not shatter the transpositions".into()));
    }
    Ok((sample, family))
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyVc {
    pub sets: usize,
    pub vc: VcDimension,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VcGapReport {
    pub left: FamilyVc,
    pub right: FamilyVc,
    pub bi: FamilyVc,
}

fn family_vc(g: &FiniteGroup, a: &Subset, mode: TranslateMode, cap: usize, budget: u64) -> Result<FamilyVc> {
    let sys = translate_family(&TranslateFamilySpec { group: g, a: a.clone(), mode })?;
    let search = vc_dimension_with_budget(&sys, cap, budget)?;
    Ok(FamilyVc { sets: sys.len(), vc: search.result, witness: search.witness })
}

/// VC dimension of the left, right and two-sided translate families of `a`.
/// Budget exhaustion shows up per family as [`VcDimension::Unknown`].
pub fn vc_gap_report(g: &FiniteGroup, a: &Subset, cap: usize, budget: u64) -> Result<VcGapReport> {
    g.check_subset(a)?;
    let (left, (right, bi)) = rayon::join(
        || family_vc(g, a, TranslateMode::Left, cap, budget),
        || {
            rayon::join(
                || family_vc(g, a, TranslateMode::Right, cap, budget),
                || family_vc(g, a, TranslateMode::Bi, cap, budget),
            )
        },
    );
    Ok(VcGapReport { left: left?, right: right?, bi: bi? })
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessParameter {
    /// `I`, 1-based points of `{2..k+1}` fixed by `b_I`.
    pub fixed: Vec<usize>,
    pub perm: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub k: usize,
    pub group: String,
    pub transpositions: Vec<String>,
    pub parameters: Vec<WitnessParameter>,
    /// Rows indexed by `n = 2..k+1`, columns by the parameters.
    pub membership: Vec<Vec<u8>>,
    pub verified: bool,
}

impl StratificationWitness {
    pub fn summary(&self) -> WitnessSummary {
        let one_line = |x: usize| perm::one_line(self.group.permutation(x).expect("symmetric"));
        WitnessSummary {
            k: self.k,
            group: self.group.description().to_string(),
            transpositions: self.transpositions.iter().map(|&x| one_line(x)).collect(),
            parameters: self
                .parameters
                .iter()
                .map(|(fixed, b)| WitnessParameter { fixed: fixed.clone(), perm: one_line(*b) })
                .collect(),
            membership: self.membership.iter().map(|row| row.iter().map(|&b| b as u8).collect()).collect(),
            verified: self.verified,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::DEFAULT_BUDGET;

    #[test]
    fn k2_hand_checks() {
        let w = build_witness(2).unwrap();
        let g = &w.group;
        // I = {2,3}: b_I is the identity
        let (fixed, b) = &w.parameters[3];
        assert_eq!(fixed, &vec![2, 3]);
        assert_eq!(*b, g.identity());
        assert!(w.membership[0][3] && w.membership[1][3]);
        // I = ∅: b = (2 3); a_2·b·a_2 sends 1 -> 2 -> 3 -> 3
        let (fixed, b) = &w.parameters[0];
        assert!(fixed.is_empty());
        assert_eq!(perm::cycle_notation(g.permutation(*b).unwrap()), "(2 3)");
        let conj = g.mul(g.mul(w.transpositions[0], *b), w.transpositions[0]);
        assert_eq!(g.permutation(conj).unwrap()[0], 2);
        assert!(!w.membership[0][0] && !w.membership[1][0]);
    }

    #[test]
    fn k3_matrix_is_containment() {
        let w = build_witness(3).unwrap();
        assert_eq!(w.membership.len(), 3);
        assert_eq!(w.membership[0].len(), 8);
        for (row, r) in w.membership.iter().enumerate() {
            for (col, &bit) in r.iter().enumerate() {
                assert_eq!(bit, col >> row & 1 == 1);
            }
        }
        assert!(build_witness(1).is_err());
        assert!(build_witness(7).is_err());
    }

    #[test]
    fn witness_is_deterministic() {
        let a = build_witness(4).unwrap();
        let b = build_witness(4).unwrap();
        assert_eq!(a.transpositions, b.transpositions);
        assert_eq!(a.parameters, b.parameters);
    }

    #[test]
    fn witness_shatters() {
        for k in [2, 3] {
            let w = build_witness(k).unwrap();
            let (sample, fam) = shattered_set_from_witness(&w).unwrap();
            assert_eq!(sample.len(), k);
            assert_eq!(fam.len(), 1 << k);
        }
        let mut w = build_witness(2).unwrap();
        w.verified = false;
        assert!(shattered_set_from_witness(&w).is_err());
    }

    /// Brute force over all samples containing the identity, independent of
    /// the pruned search.
    fn brute_vc(sys: &SetSystem, max: usize) -> usize {
        fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if cur.len() == k {
                return out(cur);
            }
            for x in start..n {
                cur.push(x);
                if combos(n, k, x + 1, cur, out) {
                    return true;
                }
                cur.pop();
            }
            false
        }
        let n = sys.base_size();
        let mut best = 0;
        for k in 1..=max {
            let found = combos(n, k - 1, 1, &mut Vec::new(), &mut |rest| {
                let mut traces = std::collections::HashSet::new();
                for s in sys.family() {
                    let mut key = vec![s.contains(0)];
                    key.extend(rest.iter().map(|&x| s.contains(x)));
                    traces.insert(key);
                }
                traces.len() == 1 << k
            });
            if !found {
                break;
            }
            best = k;
        }
        best
    }

    #[test]
    fn gap_report_s4_point_stabilizer() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let h = point_stabilizer(&g).unwrap();
        let r = vc_gap_report(&g, &h, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.left.vc, VcDimension::Exact { value: 1 });
        assert_eq!(r.left.sets, 4);
        assert_eq!(r.bi.sets, 16);
        let bi = translate_family(&TranslateFamilySpec { group: &g, a: h, mode: TranslateMode::Bi }).unwrap();
        let oracle = brute_vc(&bi, 4);
        assert_eq!(oracle, 2);
        assert_eq!(r.bi.vc, VcDimension::Exact { value: oracle });
    }

    #[test]
    fn gap_report_trivial_cases() {
        let z8 = FiniteGroup::cyclic(8).unwrap();
        let a = z8.subset([0, 1, 3]).unwrap();
        let r = vc_gap_report(&z8, &a, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.left.vc, r.right.vc);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a3 = s3.subset([0, 3, 4]).unwrap();
        assert!(crate::subgroup::is_normal(&s3, &a3));
        let r = vc_gap_report(&s3, &a3, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bi.vc, r.left.vc);
    }
}
