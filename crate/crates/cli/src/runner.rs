//! Claim execution: budget and stretch gating, timing, and worker fan-out.
//!
//! Claims run in registration order across up to `--jobs` worker threads
//! pulling from a shared queue; records are assembled back into
//! registration order so the report layout is independent of scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::claims::{ClaimOutcome, ClaimRecord, ClaimSpec};
use crate::config::RunConfig;
use crate::context::Context;
use crate::registry::registry;
use crate::report::Report;

/// Runs one claim through its gates and measures wall-clock time.
fn run_one(spec: &ClaimSpec, context: &Context, config: &RunConfig) -> ClaimRecord {
    let start = Instant::now();
    let outcome = if spec.stretch_only && !config.stretch {
        ClaimOutcome::skipped("runs only with --stretch")
    } else if spec.nominal_cost_sec > config.time_budget_sec {
        ClaimOutcome::skipped(format!(
            "nominal cost {}s exceeds --time-budget {}s",
            spec.nominal_cost_sec, config.time_budget_sec
        ))
    } else {
        (spec.runner)(context)
    };
    ClaimRecord {
        claim_id: spec.id.clone(),
        statement: spec.statement.clone(),
        suite: spec.suite,
        computed: outcome.computed,
        expected: outcome.expected,
        status: outcome.status,
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// Builds the registry for `config` and executes every claim.
pub fn execute(config: &RunConfig) -> Report {
    let specs = registry(config);
    let context = Context::new(config);
    let slots: Vec<Mutex<Option<ClaimRecord>>> =
        specs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = config.jobs.min(specs.len()).max(1);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                let Some(spec) = specs.get(index) else {
                    break;
                };
                let record = run_one(spec, &context, config);
                *slots[index].lock().unwrap() = Some(record);
            });
        }
    });

    let claims = slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("worker thread panicked")
                .expect("every claim slot is filled")
        })
        .collect();
    Report::new(config.clone(), claims)
}
