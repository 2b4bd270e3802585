//! Plan resolution and the deterministic report runner.
//!
//! Precedence is flags > plan file > defaults. The report embeds the exact
//! defaults and the resolved plan; results are computed in a work pool and
//! then sorted by check id, so two runs of the same plan emit identical
//! bytes. Timings go to stderr only, never into the report.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use fglforge_core::error::Error as CoreError;

use crate::checks::{self, CheckResult, CheckSpec};

pub const DEFAULT_PRIME: u32 = 2;
pub const DEFAULT_DIM_BOUND: u32 = 10;
pub const DEFAULT_X_BOUND: u32 = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanFile {
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub defaults: serde_json::Value,
    pub plan: Vec<CheckSpec>,
    pub results: Vec<CheckResult>,
    pub pass: bool,
}

pub enum RunOutcome {
    /// All checks ran; `pass` tells whether every one succeeded.
    Finished(Report),
    /// A check could not run at all (bad prime, insufficient bounds, ...).
    ConfigError { check: String, message: String },
    /// A check errored in a way that counts as a failed verification
    /// (for example a divisibility failure).
    CheckError { check: String, message: String },
}

/// Resolve the plan: start from the plan file or the default suite, filter
/// by `--prime`, override dimension bounds.
pub fn resolve_plan(
    plan_file: Option<PlanFile>,
    prime: Option<u32>,
    dim_bound: Option<u32>,
) -> Vec<CheckSpec> {
    let mut plan = match plan_file {
        Some(f) => f.checks,
        None => checks::default_plan(),
    };
    if let Some(p) = prime {
        plan.retain(|c| c.prime().is_none_or(|cp| cp == p));
    }
    if let Some(d) = dim_bound {
        for spec in plan.iter_mut() {
            match spec {
                CheckSpec::FglAxioms { dim_bound, .. }
                | CheckSpec::Eq1 { dim_bound, .. }
                | CheckSpec::NuCriterion { dim_bound, .. }
                | CheckSpec::Prop31 { dim_bound, .. }
                | CheckSpec::Cor32 { dim_bound, .. }
                | CheckSpec::Prop33 { dim_bound, .. }
                | CheckSpec::PhiAdditivity { dim_bound, .. }
                | CheckSpec::TwistedLog { dim_bound, .. }
                | CheckSpec::CosetIndependence { dim_bound, .. }
                | CheckSpec::Descent { dim_bound, .. } => *dim_bound = d,
                CheckSpec::HurewiczIntegrality { .. } | CheckSpec::Koszul { .. } => {}
            }
        }
    }
    plan
}

pub fn run_plan(plan: Vec<CheckSpec>, jobs: Option<usize>) -> RunOutcome {
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            builder = builder.num_threads(j.max(1));
        }
        builder.build().expect("thread pool")
    };
    let outcomes: Vec<(String, Result<CheckResult, CoreError>)> = pool.install(|| {
        plan.par_iter()
            .map(|spec| {
                let start = Instant::now();
                let id = spec.id();
                let result = checks::run_check(spec);
                eprintln!("[timing] {id}: {:.3}s", start.elapsed().as_secs_f64());
                (id, result)
            })
            .collect()
    });
    let mut results = Vec::with_capacity(outcomes.len());
    for (id, outcome) in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) if checks::is_config_error(&e) => {
                return RunOutcome::ConfigError {
                    check: id,
                    message: e.to_string(),
                }
            }
            Err(e) => {
                return RunOutcome::CheckError {
                    check: id,
                    message: e.to_string(),
                }
            }
        }
    }
    results.sort_by(|a, b| a.check.cmp(&b.check));
    let pass = results.iter().all(|r| r.pass);
    let mut plan = plan;
    plan.sort_by_key(|c| c.id());
    RunOutcome::Finished(Report {
        defaults: json!({
            "prime": DEFAULT_PRIME,
            "dimBound": DEFAULT_DIM_BOUND,
            "xBound": DEFAULT_X_BOUND,
            "repsRule": "1..p-1",
            "seed": checks::DEFAULT_SEED,
        }),
        plan,
        results,
        pass,
    })
}

pub fn render_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
