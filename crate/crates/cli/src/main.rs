//! `grouplab`: run finite-group VC experiments from a JSON config and emit
//! deterministic JSON reports.
//!
//! Settings are resolved in three layers: built-in defaults, then the
//! `--config` document, then command-line flags. The subcommand always names
//! the task.

mod config;
mod report;
mod tasks;

use clap::{Parser, Subcommand};
use config::{parse_group_shorthand, parse_index_list, validation, ExperimentConfig, SetSpec};
use grouplab_core::GroupLimits;
use rayon::prelude::*;
use report::{config_hash, to_value, Failure, Report, EXIT_FAILED, EXIT_OK, EXIT_VALIDATION};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "grouplab", version, about = "VC dimension and stabilizer experiments on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: CommonArgs,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Order, commutativity, center and an optional generated subgroup.
    Describe,
    /// Exact VC dimension of the translate family of the set.
    Vcdim,
    /// Shatter function value π(n) of the translate family.
    Shatter,
    /// Greedy ε-net for the translate family.
    Epsnet,
    /// Seeded ε-approximation, verified exactly.
    Approx,
    /// Stab^ε of the set and a verified generic cover by its translates.
    Stab,
    /// Covering number of the group by translates of the set.
    Cover,
    /// Normal core of the setwise stabilizer.
    Gstar,
    /// The symmetric-group stratification witness for params.k.
    Witness,
    /// Coset regularity audit or subgroup search.
    Regularity,
    /// Run every entry of the config's `tasks` list.
    Batch,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Vcdim => "vcdim",
            Command::Shatter => "shatter",
            Command::Epsnet => "epsnet",
            Command::Approx => "approx",
            Command::Stab => "stab",
            Command::Cover => "cover",
            Command::Gstar => "gstar",
            Command::Witness => "witness",
            Command::Regularity => "regularity",
            Command::Batch => "batch",
        }
    }
}

#[derive(clap::Args, Clone, Default)]
struct CommonArgs {
    /// JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Task seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// CSV path for per-coset rows (regularity).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Search budget in nodes.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Group shorthand such as `cyclic:12`, `symmetric:4`, `dihedral:4*cyclic:2`.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Explicit element list such as `0,1,3`.
    #[arg(long, global = true)]
    set: Option<String>,
    #[arg(long, global = true)]
    epsilon: Option<String>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Sample size for `shatter`.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Translate mode (`left`, `right`, `bi`) or cover side.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Record wall-clock timings; reports are then no longer byte-stable.
    #[arg(long, global = true)]
    timings: bool,
}

/// Applies command-line overrides on top of the loaded config.
fn resolve(args: &CommonArgs, mut cfg: ExperimentConfig, task: &str) -> Result<ExperimentConfig, Failure> {
    cfg.task = Some(task.to_string());
    if let Some(g) = &args.group {
        cfg.group = Some(parse_group_shorthand(g)?);
    }
    if let Some(s) = &args.set {
        cfg.set = Some(SetSpec::Explicit { elements: parse_index_list(s)? });
    }
    let p = &mut cfg.params;
    p.seed = args.seed.or(p.seed);
    p.budget = args.budget.or(p.budget);
    p.epsilon = args.epsilon.clone().or(p.epsilon.take());
    p.k = args.k.or(p.k);
    p.cap = args.cap.or(p.cap);
    p.n = args.n.or(p.n);
    p.mode = args.mode.clone().or(p.mode.take());
    cfg.output.report = args.out.clone().or(cfg.output.report.take());
    cfg.output.csv = args.csv.clone().or(cfg.output.csv.take());
    Ok(cfg)
}

fn load_config(path: &Path) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| validation(format!("invalid config {}: {e}", path.display())))
}

/// The config as hashed and echoed: output paths do not affect results.
fn hashed_view(cfg: &ExperimentConfig) -> ExperimentConfig {
    let mut view = cfg.clone();
    view.output = Default::default();
    view
}

fn seeds(cfg: &ExperimentConfig) -> Value {
    let set_seed = match &cfg.set {
        Some(SetSpec::RandomIntervals { seed, .. } | SetSpec::Random { seed, .. }) => Some(*seed),
        Some(SetSpec::Cosets { seed, flips, .. }) if *flips > 0 => Some(*seed),
        _ => None,
    };
    json!({ "task": cfg.params.seed, "set": set_seed })
}

struct Single {
    report: Report,
    csv: Option<grouplab_core::regularity::RegularityReport>,
}

fn run_single(cfg: &ExperimentConfig, base_dir: &Path, timings: bool) -> Single {
    let task = cfg.task.clone().unwrap_or_default();
    let view = hashed_view(cfg);
    let mut inputs = json!({ "config": to_value(&view), "seeds": seeds(cfg) });
    let start = Instant::now();
    let outcome = (|| {
        if !tasks::TASKS.contains(&task.as_str()) {
            return Err(validation(format!("unknown task {task:?}")));
        }
        let limits = GroupLimits { max_order: cfg.max_order.unwrap_or(GroupLimits::default().max_order), ..Default::default() };
        let group = cfg.group.as_ref().map(|g| g.build(&limits, base_dir)).transpose()?;
        let set = match (&cfg.set, &group) {
            (Some(s), Some(g)) => Some(s.build(g)?),
            (Some(_), None) => return Err(validation("a set spec needs a group")),
            _ => None,
        };
        if let Some(g) = &group {
            inputs["group"] = json!({ "description": g.description(), "order": g.order() });
        }
        if let Some(s) = &set {
            inputs["set"] = json!({ "size": s.len(), "elements": s.to_vec() });
        }
        tasks::run(&task, &tasks::Inputs { group: group.as_ref(), set: set.as_ref(), params: &cfg.params })
    })();
    let elapsed = start.elapsed().as_millis() as u64;
    let (result, csv, errors) = match outcome {
        Ok(o) => (o.result, o.csv, Vec::new()),
        Err(f) => (f.partial.clone().unwrap_or(Value::Null), None, vec![f]),
    };
    let timings_ms = if timings { json!({ "total": elapsed }) } else { json!({}) };
    Single {
        report: Report {
            config_hash: config_hash(&view),
            version: env!("CARGO_PKG_VERSION"),
            task,
            inputs,
            result,
            timings_ms,
            errors,
        },
        csv,
    }
}

fn write_csv(path: &Path, report: &grouplab_core::regularity::RegularityReport) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(|e| validation(format!("cannot write {}: {e}", path.display())))?;
    for row in report.rows() {
        w.serialize(row).map_err(|e| validation(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| validation(format!("csv: {e}")))
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn describe_human(report: &Report) {
    let r = &report.result;
    if r.is_null() {
        return;
    }
    eprintln!(
        "{}: order {}, {}, center size {}",
        r["description"].as_str().unwrap_or("?"),
        r["order"],
        if r["abelian"] == json!(true) { "abelian" } else { "non-abelian" },
        r["center_size"]
    );
    if let Some(h) = r.get("subgroup") {
        eprintln!("subgroup generated by {}: order {}, index {}, normal {}", h["generators"], h["order"], h["index"], h["normal"]);
    }
}

fn run_batch(cfg: &ExperimentConfig, base_dir: &Path, timings: bool) -> (Report, i32, Vec<Single>) {
    let view = hashed_view(cfg);
    let mut report = Report {
        config_hash: config_hash(&view),
        version: env!("CARGO_PKG_VERSION"),
        task: "batch".into(),
        inputs: json!({ "config": to_value(&view) }),
        result: Value::Null,
        timings_ms: json!({}),
        errors: Vec::new(),
    };
    let subs = match &cfg.tasks {
        Some(list) if !list.is_empty() => list,
        _ => {
            report.errors.push(validation("batch needs a nonempty tasks list"));
            return (report, EXIT_VALIDATION, Vec::new());
        }
    };
    let start = Instant::now();
    let singles: Vec<Single> = subs
        .par_iter()
        .map(|sub| {
            let mut sub = sub.clone();
            sub.group = sub.group.or_else(|| cfg.group.clone());
            sub.set = sub.set.or_else(|| cfg.set.clone());
            sub.max_order = sub.max_order.or(cfg.max_order);
            sub.params.seed = sub.params.seed.or(cfg.params.seed);
            sub.params.budget = sub.params.budget.or(cfg.params.budget);
            if sub.task.as_deref() == Some("batch") {
                sub.task = Some("nested batch".into());
            }
            run_single(&sub, base_dir, timings)
        })
        .collect();
    let entries: Vec<Value> = singles
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let code = s.report.exit_code();
            json!({
                "index": i,
                "task": s.report.task,
                "status": if code == EXIT_OK { "ok" } else { "failed" },
                "exit_code": code,
                "report": to_value(&s.report),
            })
        })
        .collect();
    let failed = singles.iter().filter(|s| s.report.exit_code() != EXIT_OK).count();
    report.result = json!({
        "summary": { "total": singles.len(), "ok": singles.len() - failed, "failed": failed },
        "tasks": entries,
    });
    if timings {
        report.timings_ms = json!({ "total": start.elapsed().as_millis() as u64 });
    }
    let code = if failed > 0 { EXIT_FAILED } else { EXIT_OK };
    (report, code, singles)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = &cli.args;
    let task = cli.command.name();
    let (loaded, base_dir) = match &args.config {
        Some(path) => match load_config(path) {
            Ok(cfg) => (cfg, path.parent().map(Path::to_path_buf).unwrap_or_default()),
            Err(f) => {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.exit_code() as u8);
            }
        },
        None => (ExperimentConfig::default(), PathBuf::new()),
    };
    let cfg = match resolve(args, loaded, task) {
        Ok(cfg) => cfg,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.exit_code() as u8);
        }
    };

    let (report, code, csv, subs) = if matches!(cli.command, Command::Batch) {
        let (report, code, subs) = run_batch(&cfg, &base_dir, args.timings);
        (report, code, None, subs)
    } else {
        let single = run_single(&cfg, &base_dir, args.timings);
        let code = single.report.exit_code();
        (single.report, code, single.csv, Vec::new())
    };

    if matches!(cli.command, Command::Describe) {
        describe_human(&report);
    }
    for e in &report.errors {
        eprintln!("error: {}", e.message);
    }
    let mut io_failure = false;
    if let Some(tasks) = &cfg.tasks {
        for (sub_cfg, single) in tasks.iter().zip(&subs) {
            if let Some(path) = &sub_cfg.output.report {
                io_failure |= emit(&single.report.to_json(), Some(path)).map_err(|f| eprintln!("error: {}", f.message)).is_err();
            }
            if let (Some(path), Some(rows)) = (&sub_cfg.output.csv, &single.csv) {
                io_failure |= write_csv(path, rows).map_err(|f| eprintln!("error: {}", f.message)).is_err();
            }
        }
    }
    if let (Some(path), Some(rows)) = (&cfg.output.csv, &csv) {
        io_failure |= write_csv(path, rows).map_err(|f| eprintln!("error: {}", f.message)).is_err();
    }
    io_failure |= emit(&report.to_json(), cfg.output.report.as_deref()).map_err(|f| eprintln!("error: {}", f.message)).is_err();
    if io_failure && code == EXIT_OK {
        return ExitCode::from(EXIT_FAILED as u8);
    }
    ExitCode::from(code as u8)
}
