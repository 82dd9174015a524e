//! Exact finite-group computations around VC dimension: translate set
//! systems, shatter functions, ε-approximations and ε-nets, measure
//! stabilizers, generic covers, the symmetric-group stratification witness
//! and coset-regularity audits.

pub mod approx;
pub mod bitset;
pub mod error;
pub mod group;
pub mod perm;
pub mod random;
pub mod rational;
pub mod regularity;
pub mod setsystem;
pub mod stabilizers;
pub mod stratify;
pub mod subgroup;

pub use bitset::{GroupSubset, Subset};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupLimits};
pub use rational::{format_rational, parse_rational, ratio, Rational};
pub use setsystem::{
    dual_system, is_shattered, nip_check, sauer_shelah_bound, shatter_function, trace, translate_family,
    vc_dimension, vc_dimension_with_budget, SetSystem, ShatterMode, ShatterValue, TranslateFamilySpec,
    TranslateMode, VcDimension, DEFAULT_BUDGET,
};
pub use subgroup::{generated_subgroup, is_normal, is_subgroup, left_cosets, normal_core, setwise_stabilizer, Side};
