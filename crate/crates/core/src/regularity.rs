//! Coset regularity: how much of each coset of a subgroup a set occupies,
//! and a search for a normal subgroup whose cosets are almost all regular.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::{self, fraction, Rational};
use crate::stabilizers::stab_eps;
use crate::subgroup::{generated_subgroup, left_cosets, normal_core};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub subgroup: Vec<usize>,
    pub subgroup_size: usize,
    pub index: usize,
    /// Least element of each coset, in coset order.
    pub coset_reps: Vec<usize>,
    #[serde(with = "rational::serde_str_vec")]
    pub densities: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub irregular_count: usize,
    #[serde(with = "rational::serde_str")]
    pub irregular_mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetRow {
    pub coset_rep: usize,
    pub size: usize,
    pub density: String,
    pub regular: bool,
}

impl RegularityReport {
    pub fn is_regular(&self, density: &Rational) -> bool {
        !(self.epsilon < *density && *density < Rational::one() - self.epsilon)
    }

    pub fn rows(&self) -> Vec<CosetRow> {
        self.coset_reps
            .iter()
            .zip(&self.densities)
            .map(|(&rep, d)| CosetRow {
                coset_rep: rep,
                size: self.subgroup_size,
                density: rational::format_rational(d),
                regular: self.is_regular(d),
            })
            .collect()
    }
}

/// `|A ∩ C| / |C|` for each left coset `C` of `h`.
pub fn coset_densities(g: &FiniteGroup, h: &Subset, a: &Subset) -> Result<Vec<Rational>> {
    g.check_subset(a)?;
    let cosets = left_cosets(g, h)?;
    Ok(cosets.iter().map(|c| fraction(c.intersection_len(a), c.len())).collect())
}

/// A coset is irregular when its density lies strictly between `ε` and `1 − ε`.
pub fn irregular_fraction(g: &FiniteGroup, h: &Subset, a: &Subset, epsilon: &Rational) -> Result<RegularityReport> {
    if *epsilon < Rational::zero() || *epsilon >= Rational::new(1, 2) {
        return Err(Error::InvalidArgument("epsilon out of range".into()));
    }
    g.check_subset(a)?;
    let cosets = left_cosets(g, h)?;
    let densities: Vec<Rational> = cosets.iter().map(|c| fraction(c.intersection_len(a), c.len())).collect();
    let upper = Rational::one() - epsilon;
    let irregular_count = densities.iter().filter(|d| *epsilon < **d && **d < upper).count();
    Ok(RegularityReport {
        subgroup: h.to_vec(),
        subgroup_size: h.len(),
        index: cosets.len(),
        coset_reps: cosets.iter().map(|c| c.first().expect("nonempty coset")).collect(),
        densities,
        epsilon: *epsilon,
        irregular_count,
        irregular_mass: fraction(irregular_count, cosets.len()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineCandidate {
    /// `None` for the trivial-subgroup fallback.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub epsilon_prime: Option<Rational>,
    pub subgroup_size: usize,
    pub index: usize,
    #[serde(with = "rational::serde_str")]
    pub irregular_mass: Rational,
    pub meets_target: bool,
}

fn serialize_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::format_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineOutcome {
    pub best: RegularityReport,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub best_epsilon_prime: Option<Rational>,
    /// A subgroup other than `{e}` met the target.
    pub nontrivial_found: bool,
    #[serde(with = "rational::serde_str")]
    pub target_mass: Rational,
    pub trace: Vec<PipelineCandidate>,
}

/// For each `ε′` in the grid, audits `H(ε′) = core(⟨Stab^ε′(A)⟩)` at `ε`.
///
/// The best candidate meeting `target_mass` wins, by smaller irregular mass,
/// then larger subgroup, then smaller `ε′`. When no subgroup other than the
/// identity qualifies, the trivial subgroup is returned and
/// `nontrivial_found` is false.
pub fn regularity_pipeline(
    g: &FiniteGroup,
    a: &Subset,
    grid: &[Rational],
    epsilon: &Rational,
    target_mass: &Rational,
) -> Result<PipelineOutcome> {
    if *epsilon < Rational::zero() || *epsilon >= Rational::new(1, 2) {
        return Err(Error::InvalidArgument("epsilon out of range".into()));
    }
    if grid.is_empty() {
        return Err(Error::InvalidArgument("epsilon grid must be nonempty".into()));
    }
    let mut trace = Vec::new();
    let mut best: Option<(RegularityReport, Rational)> = None;
    for eps_prime in grid {
        let stab = stab_eps(g, a, eps_prime)?;
        let h = normal_core(g, &generated_subgroup(g, &stab)?)?;
        let report = irregular_fraction(g, &h, a, epsilon)?;
        let meets = report.irregular_mass <= *target_mass;
        trace.push(PipelineCandidate {
            epsilon_prime: Some(*eps_prime),
            subgroup_size: report.subgroup_size,
            index: report.index,
            irregular_mass: report.irregular_mass,
            meets_target: meets,
        });
        if !meets || report.subgroup_size == 1 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, b_eps)) => {
                (report.irregular_mass, std::cmp::Reverse(report.subgroup_size), *eps_prime)
                    < (b.irregular_mass, std::cmp::Reverse(b.subgroup_size), *b_eps)
            }
        };
        if better {
            best = Some((report, *eps_prime));
        }
    }
    let trivial = irregular_fraction(g, &g.subset([g.identity()])?, a, epsilon)?;
    trace.push(PipelineCandidate {
        epsilon_prime: None,
        subgroup_size: 1,
        index: trivial.index,
        irregular_mass: trivial.irregular_mass,
        meets_target: trivial.irregular_mass <= *target_mass,
    });
    Ok(match best {
        Some((report, eps_prime)) => PipelineOutcome {
            best: report,
            best_epsilon_prime: Some(eps_prime),
            nontrivial_found: true,
            target_mass: *target_mass,
            trace,
        },
        None => PipelineOutcome {
            best: trivial,
            best_epsilon_prime: None,
            nontrivial_found: false,
            target_mass: *target_mass,
            trace,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::subgroup::is_normal;

    fn z6_setup() -> (FiniteGroup, Subset, Subset) {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = z6.subset([0, 3]).unwrap();
        let a = z6.subset([0, 1, 3]).unwrap();
        (z6, h, a)
    }

    #[test]
    fn densities() {
        let (z6, h, a) = z6_setup();
        assert_eq!(coset_densities(&z6, &h, &a).unwrap(), vec![ratio(1, 1), ratio(1, 2), ratio(0, 1)]);
        assert!(coset_densities(&z6, &h, &Subset::empty(6)).unwrap().iter().all(|d| *d == ratio(0, 1)));
        let union = z6.subset([0, 3, 2, 5]).unwrap();
        assert!(coset_densities(&z6, &h, &union).unwrap().iter().all(|d| *d == ratio(0, 1) || *d == ratio(1, 1)));
        assert!(coset_densities(&z6, &z6.subset([1]).unwrap(), &a).is_err());
    }

    #[test]
    fn irregularity() {
        let (z6, h, a) = z6_setup();
        let r = irregular_fraction(&z6, &h, &a, &ratio(1, 4)).unwrap();
        assert_eq!(r.irregular_count, 1);
        assert_eq!(r.irregular_mass, ratio(1, 3));
        assert_eq!(r.coset_reps, vec![0, 1, 2]);
        assert_eq!(r.rows()[1].regular, false);
        let r0 = irregular_fraction(&z6, &h, &a, &ratio(0, 1)).unwrap();
        assert_eq!(r0.irregular_count, 1);
        assert_eq!(irregular_fraction(&z6, &h, &a, &ratio(1, 2)).unwrap_err().to_string(), "epsilon out of range");
        let union = z6.subset([1, 4]).unwrap();
        for e in [0, 1, 2, 4] {
            assert_eq!(irregular_fraction(&z6, &h, &union, &ratio(e, 10)).unwrap().irregular_mass, ratio(0, 1));
        }
    }

    #[test]
    fn pipeline_recovers_coset_structure() {
        let g = FiniteGroup::elementary_abelian_2(4).unwrap();
        // H = elements with the low two bits clear, index 4; A = two of its cosets
        let h = g.subset((0..16).filter(|x| x & 3 == 0)).unwrap();
        assert!(is_normal(&g, &h));
        let a = g.subset((0..16).filter(|x| x & 3 == 0 || x & 3 == 3)).unwrap();
        let out = regularity_pipeline(&g, &a, &[ratio(1, 16), ratio(1, 8)], &ratio(1, 20), &ratio(1, 10)).unwrap();
        assert!(out.nontrivial_found);
        assert_eq!(out.best.irregular_mass, ratio(0, 1));
        assert!(h.iter().all(|x| out.best.subgroup.contains(&x)));
        assert!(is_normal(&g, &g.subset(out.best.subgroup.iter().copied()).unwrap()));
        assert_eq!(out.trace.len(), 3);

        let whole = regularity_pipeline(&g, &g.full_subset(), &[ratio(1, 4)], &ratio(0, 1), &ratio(0, 1)).unwrap();
        assert_eq!(whole.best.irregular_mass, ratio(0, 1));
        assert!(whole.best.densities.iter().all(|d| *d == ratio(1, 1)));
        assert!(regularity_pipeline(&g, &a, &[], &ratio(0, 1), &ratio(0, 1)).is_err());
    }
}
