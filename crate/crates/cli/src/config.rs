use grouplab_core::random::{self, rng};
use grouplab_core::{generated_subgroup, left_cosets, parse_rational, FiniteGroup, GroupLimits, Rational, Subset};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::report::Failure;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default)]
    pub output: Output,
    /// Sub-configurations for `batch`; missing group and set are inherited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tasks: Option<Vec<ExperimentConfig>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric { m: usize },
    Dihedral { m: usize },
    #[serde(rename = "elementary_abelian_2", alias = "elementary_abelian2")]
    ElementaryAbelian2 { d: usize },
    Product { factors: Vec<GroupSpec> },
    CayleyFile { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Explicit {
        elements: Vec<usize>,
    },
    /// `{start, .., start+len-1}` mod the group order.
    Interval {
        start: usize,
        len: usize,
    },
    /// Union of `count` random intervals of length at most `max_len`.
    RandomIntervals {
        count: usize,
        max_len: usize,
        seed: u64,
    },
    /// Union of the left cosets `r·H` with `H = ⟨generators⟩`, optionally
    /// with `flips` random positions toggled.
    Cosets {
        generators: Vec<usize>,
        reps: Vec<usize>,
        #[serde(default)]
        flips: usize,
        #[serde(default)]
        seed: u64,
    },
    Random {
        seed: u64,
        density: String,
    },
    /// Permutations fixing the point 1.
    PointStabilizer,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_mass: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// `left`, `right` or `bi` for translate families; `left` or `right` for covers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// `greedy` or `exact`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<String>,
    /// Sampled shatter values with this many random samples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_attempts: Option<usize>,
    /// Generators of a subgroup: `describe` reports it, `regularity` audits it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

pub fn validation(message: impl Into<String>) -> Failure {
    Failure::validation(message.into())
}

pub fn rational(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| validation(format!("{what}: {e}")))
}

/// `cyclic:12`, `symmetric:4`, `dihedral:5`, `z2:8`, `cayley:path`, and
/// products joined by `*`.
pub fn parse_group_shorthand(text: &str) -> Result<GroupSpec, Failure> {
    let factors: Vec<&str> = text.split('*').map(str::trim).collect();
    if factors.len() > 1 {
        return Ok(GroupSpec::Product {
            factors: factors.into_iter().map(parse_group_shorthand).collect::<Result<_, _>>()?,
        });
    }
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| validation(format!("group shorthand {text:?} must look like kind:argument")))?;
    if kind == "cayley" {
        return Ok(GroupSpec::CayleyFile { path: PathBuf::from(arg) });
    }
    let n: usize = arg.parse().map_err(|_| validation(format!("bad group argument {arg:?}")))?;
    match kind {
        "cyclic" | "z" => Ok(GroupSpec::Cyclic { n }),
        "symmetric" | "s" => Ok(GroupSpec::Symmetric { m: n }),
        "dihedral" | "d" => Ok(GroupSpec::Dihedral { m: n }),
        "z2" => Ok(GroupSpec::ElementaryAbelian2 { d: n }),
        _ => Err(validation(format!("unknown group kind {kind:?}"))),
    }
}

pub fn parse_index_list(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| validation(format!("bad element index {t:?}"))))
        .collect()
}

impl GroupSpec {
    pub fn build(&self, limits: &GroupLimits, base_dir: &Path) -> Result<FiniteGroup, Failure> {
        let g = match self {
            GroupSpec::Cyclic { n } => {
                if *n > limits.max_order {
                    return Err(Failure::from(grouplab_core::Error::OrderCap { order: *n, cap: limits.max_order }));
                }
                FiniteGroup::cyclic(*n)?
            }
            GroupSpec::Symmetric { m } => FiniteGroup::symmetric_with(*m, limits)?,
            GroupSpec::Dihedral { m } => FiniteGroup::dihedral_with(*m, limits)?,
            GroupSpec::ElementaryAbelian2 { d } => {
                if *d > 20 || (1usize << d) > limits.max_order {
                    return Err(validation(format!("2^{d} exceeds the order cap {}", limits.max_order)));
                }
                FiniteGroup::elementary_abelian_2(*d)?
            }
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| validation("product needs at least one factor"))?;
                let mut acc = first.build(limits, base_dir)?;
                for f in it {
                    acc = FiniteGroup::direct_product_with(&acc, &f.build(limits, base_dir)?, limits)?;
                }
                acc
            }
            GroupSpec::CayleyFile { path } => {
                let full = base_dir.join(path);
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| validation(format!("cannot read {}: {e}", full.display())))?;
                FiniteGroup::from_cayley_table_with(&text, limits)?
            }
        };
        Ok(g)
    }
}

impl SetSpec {
    pub fn build(&self, g: &FiniteGroup) -> Result<Subset, Failure> {
        let n = g.order();
        let s = match self {
            SetSpec::Explicit { elements } => g.subset(elements.iter().copied())?,
            SetSpec::Interval { start, len } => random::cyclic_interval(n, *start % n, *len),
            SetSpec::RandomIntervals { count, max_len, seed } => {
                random::union_of_intervals(n, *count, *max_len, &mut rng(*seed))
            }
            SetSpec::Cosets { generators, reps, flips, seed } => {
                let h = generated_subgroup(g, &g.subset(generators.iter().copied())?)?;
                let reps = g.subset(reps.iter().copied())?;
                let mut s = Subset::empty(n);
                for coset in left_cosets(g, &h)? {
                    if coset.intersects(&reps) {
                        s.union_with(&coset);
                    }
                }
                if *flips > 0 {
                    s = random::flip_positions(&s, *flips, &mut rng(*seed));
                }
                s
            }
            SetSpec::Random { seed, density } => {
                let d = rational(density, "density")?;
                if !grouplab_core::rational::in_unit_interval(&d) {
                    return Err(validation("density must lie in [0, 1]"));
                }
                random::bernoulli_subset(n, &d, &mut rng(*seed))
            }
            SetSpec::PointStabilizer => grouplab_core::stratify::point_stabilizer(g)?,
        };
        Ok(s)
    }
}
