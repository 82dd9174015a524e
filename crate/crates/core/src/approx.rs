//! ε-approximations and ε-nets for set systems, with exact rational
//! verification, and the trace-class description of measure level sets.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::rational::{self, abs_diff, fraction, Rational};
use crate::setsystem::{vc_dimension_with_budget, SetSystem, VcDimension, DEFAULT_BUDGET};
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// Constant in front of the sample-size formula.
pub const DEFAULT_SAMPLE_CONSTANT: i64 = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproximationCertificate {
    /// Base indices with repetition.
    pub points: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub max_deviation: Rational,
    pub worst_set: Option<usize>,
    pub verified: bool,
    pub seed: u64,
    pub attempts: usize,
    /// The VC parameter the sample size was computed from.
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetCertificate {
    pub points: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub heavy_sets: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deviation {
    pub max: Rational,
    pub worst_set: Option<usize>,
}

fn check_open_unit(eps: &Rational, what: &str) -> Result<()> {
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(Error::InvalidArgument(format!("{what} must lie in (0, 1), got {}", rational::format_rational(eps))));
    }
    Ok(())
}

/// `ceil(c · k · ε⁻² · ln(e/ε))`.
pub fn sample_size(k: usize, epsilon: &Rational, c: &Rational) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("sample_size needs k >= 1".into()));
    }
    check_open_unit(epsilon, "epsilon")?;
    if *c <= Rational::zero() {
        return Err(Error::InvalidArgument("sample-size constant must be positive".into()));
    }
    let eps = rational::to_f64(epsilon);
    let value = rational::to_f64(c) * k as f64 / (eps * eps) * (1.0 - eps.ln());
    Ok(value.ceil() as u64)
}

/// Fraction of `points` (with multiplicity) lying in `s`.
pub fn empirical_frequency(points: &[usize], s: &Subset) -> Result<Rational> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    Ok(fraction(points.iter().filter(|&&p| s.contains(p)).count(), points.len()))
}

fn multiplicities(sys: &SetSystem, points: &[usize]) -> Result<Vec<u64>> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut counts = vec![0u64; sys.base_size()];
    for &p in points {
        if p >= sys.base_size() {
            return Err(Error::InvalidArgument(format!("point {p} outside base 0..{}", sys.base_size())));
        }
        counts[p] += 1;
    }
    Ok(counts)
}

/// `max_S |μ(S) − 𝔼(points; S)|` over the family, exactly.
pub fn verify_approximation(sys: &SetSystem, points: &[usize]) -> Result<Deviation> {
    let counts = multiplicities(sys, points)?;
    let (m, r) = (sys.base_size() as i64, points.len() as i64);
    let mut best = Deviation { max: Rational::zero(), worst_set: None };
    for (i, s) in sys.family().iter().enumerate() {
        let hits: u64 = s.iter().map(|x| counts[x]).sum();
        let dev = Ratio::new((s.len() as i64 * r - hits as i64 * m).abs(), m * r);
        if best.worst_set.is_none() || dev > best.max {
            best = Deviation { max: dev, worst_set: Some(i) };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct ApproxParams {
    pub epsilon: Rational,
    pub c: Rational,
    pub seed: u64,
    pub max_attempts: usize,
    /// VC parameter for the sample size; computed from the system when absent.
    pub k: Option<usize>,
    pub vc_cap: usize,
    pub budget: u64,
}

impl ApproxParams {
    pub fn new(epsilon: Rational, seed: u64) -> Self {
        ApproxParams {
            epsilon,
            c: Rational::from_integer(DEFAULT_SAMPLE_CONSTANT),
            seed,
            max_attempts: 3,
            k: None,
            vc_cap: 16,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Draws `sample_size(k, ε, c)` uniform points with replacement and checks
/// them exactly, retrying up to `max_attempts` times. Failure is reported
/// through `verified = false` on the best attempt.
pub fn random_eps_approximation(sys: &SetSystem, params: &ApproxParams) -> Result<ApproximationCertificate> {
    if sys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if params.max_attempts == 0 {
        return Err(Error::InvalidArgument("max_attempts must be positive".into()));
    }
    let k = match params.k {
        Some(k) => k.max(1),
        None => match vc_dimension_with_budget(sys, params.vc_cap, params.budget)?.result {
            VcDimension::Exact { value } => value.max(1),
            // the cap is the only upper bound available
            VcDimension::AtLeast { .. } | VcDimension::Unknown { .. } => params.vc_cap.max(1),
        },
    };
    let r = sample_size(k, &params.epsilon, &params.c)? as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut best: Option<ApproximationCertificate> = None;
    for attempt in 1..=params.max_attempts {
        let points: Vec<usize> = (0..r).map(|_| rng.gen_range(0..sys.base_size())).collect();
        let dev = verify_approximation(sys, &points)?;
        let verified = dev.max <= params.epsilon;
        let cert = ApproximationCertificate {
            points,
            epsilon: params.epsilon,
            max_deviation: dev.max,
            worst_set: dev.worst_set,
            verified,
            seed: params.seed,
            attempts: attempt,
            k,
        };
        if verified {
            return Ok(cert);
        }
        if best.as_ref().is_none_or(|b| cert.max_deviation < b.max_deviation) {
            best = Some(cert);
        }
    }
    let mut cert = best.expect("at least one attempt");
    cert.attempts = params.max_attempts;
    Ok(cert)
}

/// Greedy hitting set for the sets of measure above `ε`: repeatedly take the
/// point in the most unhit heavy sets, least index on ties.
pub fn eps_net(sys: &SetSystem, epsilon: &Rational) -> Result<NetCertificate> {
    if !rational::in_unit_interval(epsilon) {
        return Err(Error::InvalidArgument("epsilon must lie in [0, 1]".into()));
    }
    let m = sys.base_size();
    let heavy: Vec<&Subset> = sys.family().iter().filter(|s| !rational::fraction_le(s.len(), m, epsilon)).collect();
    let net = greedy_hitting_set(m, &heavy);
    let verified = heavy.iter().all(|s| net.iter().any(|&p| s.contains(p)));
    Ok(NetCertificate { points: net, epsilon: *epsilon, heavy_sets: heavy.len(), verified })
}

/// Greedy hitting set over `sets`, all subsets of `0..m`.
pub(crate) fn greedy_hitting_set(m: usize, sets: &[&Subset]) -> Vec<usize> {
    let h = sets.len();
    let mut cols = vec![Subset::empty(h); m];
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        for x in s.iter() {
            cols[x].insert(i);
        }
    }
    let mut unhit = Subset::from_indices(h, (0..h).filter(|&i| !sets[i].is_empty())).expect("in range");
    let mut net = Vec::new();
    while !unhit.is_empty() {
        let (best, gain) = (0..m)
            .map(|x| (x, cols[x].intersection_len(&unhit)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        debug_assert!(gain > 0);
        net.push(best);
        unhit = unhit.difference(&cols[best]);
    }
    net
}

/// Family indices grouped by their trace `{i : points[i] ∈ S}`, classes in
/// order of least member.
pub fn trace_class_partition(points: &[usize], sys: &SetSystem) -> Result<Vec<Vec<usize>>> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut index: HashMap<Subset, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in sys.family().iter().enumerate() {
        let key = Subset::from_indices(points.len(), (0..points.len()).filter(|&j| s.contains(points[j])))
            .expect("positions in range");
        let slot = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(i);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Copy)]
pub enum LevelMode<'a> {
    Exact,
    /// Select trace classes whose empirical frequency is within the
    /// certificate's ε of the interval.
    Approx(&'a ApproximationCertificate),
}

/// Family indices whose measure lies in `[lo, hi]` (exact), or a superset of
/// them read off an ε-approximation (approx).
pub fn measure_level_set(sys: &SetSystem, lo: &Rational, hi: &Rational, mode: LevelMode<'_>) -> Result<Vec<usize>> {
    if !(rational::in_unit_interval(lo) && rational::in_unit_interval(hi) && lo <= hi) {
        return Err(Error::InvalidArgument("level-set interval must satisfy 0 <= lo <= hi <= 1".into()));
    }
    let m = sys.base_size();
    match mode {
        LevelMode::Exact => Ok((0..sys.len())
            .filter(|&i| {
                let mu = fraction(sys.family()[i].len(), m);
                *lo <= mu && mu <= *hi
            })
            .collect()),
        LevelMode::Approx(cert) => {
            if !cert.verified {
                return Err(Error::UnverifiedCertificate);
            }
            let mut out = Vec::new();
            for class in trace_class_partition(&cert.points, sys)? {
                let freq = empirical_frequency(&cert.points, &sys.family()[class[0]])?;
                let dist = if freq < *lo {
                    lo - freq
                } else if freq > *hi {
                    freq - hi
                } else {
                    Rational::zero()
                };
                if dist <= cert.epsilon {
                    out.extend(class);
                }
            }
            out.sort_unstable();
            Ok(out)
        }
    }
}

/// `|μ(S) − 𝔼(points; S)|` for one set.
pub fn deviation(m: usize, points: &[usize], s: &Subset) -> Result<Rational> {
    Ok(abs_diff(&fraction(s.len(), m), &empirical_frequency(points, s)?))
}
