use grouplab_core::approx::{self, ApproxParams};
use grouplab_core::regularity::{irregular_fraction, regularity_pipeline, RegularityReport};
use grouplab_core::stabilizers::{self, CoverMode, WitnessOptions};
use grouplab_core::stratify;
use grouplab_core::{
    format_rational, generated_subgroup, is_normal, is_shattered, ratio, sauer_shelah_bound, shatter_function,
    translate_family, vc_dimension_with_budget, FiniteGroup, Rational, ShatterMode, Side, Subset,
    TranslateFamilySpec, TranslateMode, VcDimension, DEFAULT_BUDGET,
};
use serde_json::{json, Value};

use crate::config::{rational, validation, Params};
use crate::report::{to_value, Failure, FailureKind};

pub const TASKS: &[&str] =
    &["describe", "vcdim", "shatter", "epsnet", "approx", "stab", "cover", "gstar", "witness", "regularity"];

pub struct Inputs<'a> {
    pub group: Option<&'a FiniteGroup>,
    pub set: Option<&'a Subset>,
    pub params: &'a Params,
}

/// Result of one task, plus CSV rows for tasks that emit them.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<RegularityReport>,
}

impl Outcome {
    fn json(result: Value) -> Self {
        Outcome { result, csv: None }
    }
}

impl Inputs<'_> {
    fn group(&self) -> Result<&FiniteGroup, Failure> {
        self.group.ok_or_else(|| validation("task needs a group"))
    }

    fn set(&self) -> Result<&Subset, Failure> {
        self.set.ok_or_else(|| validation("task needs a set"))
    }

    fn epsilon(&self) -> Result<Rational, Failure> {
        let text = self.params.epsilon.as_deref().ok_or_else(|| validation("task needs params.epsilon"))?;
        rational(text, "epsilon")
    }

    fn budget(&self) -> u64 {
        self.params.budget.unwrap_or(DEFAULT_BUDGET)
    }

    fn cap(&self, default: usize) -> usize {
        self.params.cap.unwrap_or(default)
    }

    fn translate_mode(&self) -> Result<TranslateMode, Failure> {
        match self.params.mode.as_deref().unwrap_or("left") {
            "left" => Ok(TranslateMode::Left),
            "right" => Ok(TranslateMode::Right),
            "bi" => Ok(TranslateMode::Bi),
            other => Err(validation(format!("unknown translate mode {other:?}"))),
        }
    }

    fn family(&self) -> Result<grouplab_core::SetSystem, Failure> {
        let spec = TranslateFamilySpec { group: self.group()?, a: self.set()?.clone(), mode: self.translate_mode()? };
        Ok(translate_family(&spec)?)
    }
}

fn elements(s: &Subset) -> Vec<usize> {
    s.to_vec()
}

pub fn run(task: &str, inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    match task {
        "describe" => describe(inp),
        "vcdim" => vcdim(inp),
        "shatter" => shatter(inp),
        "epsnet" => {
            let cert = approx::eps_net(&inp.family()?, &inp.epsilon()?)?;
            Ok(Outcome::json(to_value(&cert)))
        }
        "approx" => approximate(inp),
        "stab" => stab(inp),
        "cover" => cover(inp),
        "gstar" => {
            let g = inp.group()?;
            let core = stabilizers::g_star(g, inp.set()?)?;
            Ok(Outcome::json(json!({
                "g_star": elements(&core),
                "size": core.len(),
                "index": g.order() / core.len(),
                "normal": is_normal(g, &core),
            })))
        }
        "witness" => witness(inp),
        "regularity" => regularity(inp),
        other => Err(validation(format!("unknown task {other:?}"))),
    }
}

fn describe(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let g = inp.group()?;
    let center = g.center();
    let mut result = json!({
        "description": g.description(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "identity": g.identity(),
        "center_size": center.len(),
        "center": elements(&center),
    });
    if let Some(gens) = &inp.params.generators {
        let h = generated_subgroup(g, &g.subset(gens.iter().copied())?)?;
        result["subgroup"] = json!({
            "generators": gens,
            "order": h.len(),
            "index": g.order() / h.len(),
            "normal": is_normal(g, &h),
            "elements": elements(&h),
        });
    }
    Ok(Outcome::json(result))
}

fn vcdim(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let sys = inp.family()?;
    let search = vc_dimension_with_budget(&sys, inp.cap(16), inp.budget())?;
    let result = json!({
        "family_size": sys.len(),
        "mode": inp.translate_mode()?,
        "vc": search.result.exact(),
        "status": search.result,
        "witness": search.witness,
        "nodes": search.nodes,
    });
    if let VcDimension::Unknown { budget, .. } = search.result {
        return Err(Failure {
            kind: FailureKind::Budget,
            message: format!("search budget of {budget} nodes exhausted"),
            partial: Some(result),
        });
    }
    Ok(Outcome::json(result))
}

fn shatter(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let sys = inp.family()?;
    let n = inp.params.n.ok_or_else(|| validation("shatter needs params.n"))?;
    let mode = match inp.params.tries {
        Some(tries) => ShatterMode::Sampled { seed: inp.params.seed.unwrap_or(0), tries },
        None => ShatterMode::Exact { budget: inp.budget() },
    };
    let value = shatter_function(&sys, n, mode)?;
    let mut result = to_value(&value);
    result["family_size"] = json!(sys.len());
    if let Some(k) = inp.params.k {
        result["sauer_shelah_bound"] = json!(sauer_shelah_bound(k, n).to_string());
    }
    Ok(Outcome::json(result))
}

fn approximate(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let sys = inp.family()?;
    let mut params = ApproxParams::new(inp.epsilon()?, inp.params.seed.unwrap_or(0));
    params.k = inp.params.k;
    params.budget = inp.budget();
    if let Some(c) = &inp.params.c {
        params.c = rational(c, "c")?;
    }
    if let Some(cap) = inp.params.cap {
        params.vc_cap = cap;
    }
    if let Some(m) = inp.params.max_attempts {
        params.max_attempts = m;
    }
    let cert = approx::random_eps_approximation(&sys, &params)?;
    let mut result = to_value(&cert);
    result["sample_size"] = json!(cert.points.len());
    result["max_deviation_decimal"] = json!(format!("{:.6}", grouplab_core::rational::to_f64(&cert.max_deviation)));
    Ok(Outcome::json(result))
}

fn stab(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let (g, a) = (inp.group()?, inp.set()?);
    let opts = WitnessOptions { k_hint: inp.params.k, vc_cap: inp.cap(12), budget: inp.budget(), ..Default::default() };
    let report = stabilizers::stab_covering_witness(g, a, &inp.epsilon()?, &opts)?;
    let zero = stabilizers::stab_zero_subgroup(g, a)?;
    let mut result = to_value(&report);
    result["stab_zero"] = json!(elements(&zero));
    Ok(Outcome::json(result))
}

fn cover(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let side = match inp.params.mode.as_deref().unwrap_or("left") {
        "left" => Side::Left,
        "right" => Side::Right,
        other => Err(validation(format!("unknown cover side {other:?}")))?,
    };
    let mode = match inp.params.cover.as_deref().unwrap_or("greedy") {
        "greedy" => CoverMode::Greedy,
        "exact" => CoverMode::Exact { limit: inp.cap(60), budget: inp.budget() },
        other => Err(validation(format!("unknown cover mode {other:?}")))?,
    };
    let res = stabilizers::covering_number(inp.group()?, inp.set()?, side, mode)?;
    Ok(Outcome::json(to_value(&res)))
}

fn witness(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let k = inp.params.k.ok_or_else(|| validation("witness needs params.k"))?;
    let w = stratify::build_witness(k)?;
    let mut result = to_value(&w.summary());
    if w.verified {
        let (sample, family) = stratify::shattered_set_from_witness(&w)?;
        result["shattered_sample"] = json!(elements(&sample));
        result["shattered"] = json!(is_shattered(&family, &sample)?);
        result["family_size"] = json!(family.len());
    }
    Ok(Outcome::json(result))
}

fn regularity(inp: &Inputs<'_>) -> Result<Outcome, Failure> {
    let (g, a) = (inp.group()?, inp.set()?);
    let eps = inp.epsilon()?;
    if let Some(gens) = &inp.params.generators {
        let h = generated_subgroup(g, &g.subset(gens.iter().copied())?)?;
        let report = irregular_fraction(g, &h, a, &eps)?;
        return Ok(Outcome { result: json!({ "report": to_value(&report) }), csv: Some(report) });
    }
    let grid: Vec<Rational> = match &inp.params.grid {
        Some(grid) => grid.iter().map(|t| rational(t, "grid")).collect::<Result<_, _>>()?,
        None => vec![ratio(1, 16), ratio(1, 8), ratio(1, 4)],
    };
    let target = match &inp.params.target_mass {
        Some(t) => rational(t, "target_mass")?,
        None => ratio(1, 10),
    };
    let out = regularity_pipeline(g, a, &grid, &eps, &target)?;
    let result = json!({
        "report": to_value(&out.best),
        "best_epsilon_prime": out.best_epsilon_prime.as_ref().map(format_rational),
        "nontrivial_found": out.nontrivial_found,
        "normal": is_normal(g, &g.subset(out.best.subgroup.iter().copied())?),
        "target_mass": format_rational(&out.target_mass),
        "trace": to_value(&out.trace),
    });
    Ok(Outcome { result, csv: Some(out.best) })
}
