//! Subgroups, cosets, setwise stabilizers and normal cores.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Smallest subgroup containing `s`, by closure under right multiplication
/// with the generators (positive words suffice in a finite group).
pub fn generated_subgroup(g: &FiniteGroup, s: &Subset) -> Result<Subset> {
    g.check_subset(s)?;
    let gens = s.to_vec();
    let mut out = Subset::singleton(g.order(), g.identity());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for &y in &gens {
            let z = g.mul(x, y);
            if !out.contains(z) {
                out.insert(z);
                queue.push(z);
            }
        }
    }
    Ok(out)
}

pub fn is_subgroup(g: &FiniteGroup, h: &Subset) -> bool {
    if h.universe() != g.order() || !h.contains(g.identity()) {
        return false;
    }
    let elems = h.to_vec();
    elems.iter().all(|&a| elems.iter().all(|&b| h.contains(g.mul(a, b))))
}

pub fn is_normal(g: &FiniteGroup, h: &Subset) -> bool {
    is_subgroup(g, h) && (0..g.order()).all(|x| h.iter().all(|a| h.contains(g.conjugate(x, a))))
}

/// Left cosets `xH`. The first coset is `h`; the rest follow in order of
/// least element.
pub fn left_cosets(g: &FiniteGroup, h: &Subset) -> Result<Vec<Subset>> {
    g.check_subset(h)?;
    if !is_subgroup(g, h) {
        return Err(Error::NotSubgroup);
    }
    let mut covered = h.clone();
    let mut out = vec![h.clone()];
    for x in 0..g.order() {
        if !covered.contains(x) {
            let c = g.left_translate(x, h);
            covered.union_with(&c);
            out.push(c);
        }
    }
    Ok(out)
}

/// `{x : xA = A}` (left) or `{x : Ax = A}` (right).
pub fn setwise_stabilizer(g: &FiniteGroup, a: &Subset, side: Side) -> Result<Subset> {
    g.check_subset(a)?;
    let mut out = Subset::empty(g.order());
    for x in 0..g.order() {
        let fixes = match side {
            Side::Left => a.iter().all(|y| a.contains(g.mul(x, y))),
            Side::Right => a.iter().all(|y| a.contains(g.mul(y, x))),
        };
        if fixes {
            out.insert(x);
        }
    }
    Ok(out)
}

/// `x·H·x⁻¹`.
pub fn conjugate_subset(g: &FiniteGroup, x: usize, h: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for a in h {
        out.insert(g.conjugate(x, a));
    }
    out
}

/// Intersection of all conjugates of `h`. Conjugates depend only on the left
/// coset of the conjugator, so one representative per coset is used.
pub fn normal_core(g: &FiniteGroup, h: &Subset) -> Result<Subset> {
    let cosets = left_cosets(g, h)?;
    let mut core = h.clone();
    for c in &cosets[1..] {
        let x = c.first().expect("cosets are nonempty");
        core.intersect_with(&conjugate_subset(g, x, h));
        if core.len() == 1 {
            break;
        }
    }
    Ok(core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm;

    fn s3_elem(s3: &FiniteGroup, p: Vec<u8>) -> usize {
        s3.perm_index(&p).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(generated_subgroup(&z6, &z6.subset([2]).unwrap()).unwrap().to_vec(), vec![0, 2, 4]);
        assert_eq!(generated_subgroup(&z6, &Subset::empty(6)).unwrap().to_vec(), vec![0]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t12 = s3_elem(&s3, perm::transposition(3, 0, 1));
        let t13 = s3_elem(&s3, perm::transposition(3, 0, 2));
        assert!(generated_subgroup(&s3, &s3.subset([t12, t13]).unwrap()).unwrap().is_full());
    }

    #[test]
    fn subgroup_and_normality() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let triv = z6.subset([0]).unwrap();
        assert!(is_subgroup(&z6, &triv) && is_normal(&z6, &triv));
        let h = z6.subset([0, 3]).unwrap();
        assert!(is_subgroup(&z6, &h) && is_normal(&z6, &h));
        assert!(!is_subgroup(&z6, &z6.subset([0, 1]).unwrap()));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t23 = s3_elem(&s3, perm::transposition(3, 1, 2));
        let k = s3.subset([0, t23]).unwrap();
        assert!(is_subgroup(&s3, &k));
        assert!(!is_normal(&s3, &k));
    }

    #[test]
    fn coset_enumeration() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let cs = left_cosets(&z6, &z6.subset([0, 3]).unwrap()).unwrap();
        let cs: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
        assert_eq!(cs, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(left_cosets(&z6, &z6.full_subset()).unwrap().len(), 1);
        assert_eq!(left_cosets(&z6, &z6.subset([0]).unwrap()).unwrap().len(), 6);
        assert_eq!(left_cosets(&z6, &z6.subset([1]).unwrap()), Err(Error::NotSubgroup));
    }

    #[test]
    fn stabilizer_examples() {
        let z12 = FiniteGroup::cyclic(12).unwrap();
        let full = z12.full_subset();
        assert!(setwise_stabilizer(&z12, &full, Side::Left).unwrap().is_full());
        assert!(setwise_stabilizer(&z12, &Subset::empty(12), Side::Left).unwrap().is_full());
        let interval = z12.subset(0..6).unwrap();
        // oracle: enumerate all 12 shifts by hand
        let fixing: Vec<usize> = (0..12).filter(|&s| (0..6).all(|i| (i + s) % 12 < 6)).collect();
        assert_eq!(fixing, vec![0]);
        assert_eq!(setwise_stabilizer(&z12, &interval, Side::Left).unwrap().to_vec(), fixing);
    }

    #[test]
    fn normal_core_examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(normal_core(&s3, &s3.full_subset()).unwrap().is_full());
        let a3 = generated_subgroup(&s3, &s3.subset([s3_elem(&s3, perm::cycle(3, &[0, 1, 2]))]).unwrap()).unwrap();
        assert_eq!(a3.len(), 3);
        assert_eq!(normal_core(&s3, &a3).unwrap(), a3);
        let t23 = s3_elem(&s3, perm::transposition(3, 1, 2));
        let k = s3.subset([0, t23]).unwrap();
        // the three conjugates are the three point stabilizers
        let conjugates: Vec<Subset> = (0..6).map(|x| conjugate_subset(&s3, x, &k)).collect();
        let oracle = conjugates.iter().fold(s3.full_subset(), |acc, c| acc.intersection(c));
        assert_eq!(oracle.to_vec(), vec![0]);
        assert_eq!(normal_core(&s3, &k).unwrap(), oracle);
    }

    #[test]
    fn coset_stabilizer_is_conjugate() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let t = s4.perm_index(&perm::transposition(4, 0, 1)).unwrap();
        let c = s4.perm_index(&perm::cycle(4, &[0, 1, 2])).unwrap();
        let h = generated_subgroup(&s4, &s4.subset([t, c]).unwrap()).unwrap();
        assert_eq!(h.len(), 6);
        for x in 0..24 {
            let coset = s4.left_translate(x, &h);
            assert_eq!(setwise_stabilizer(&s4, &coset, Side::Left).unwrap(), conjugate_subset(&s4, x, &h));
        }
    }
}
