//! Claim records and the specification of a runnable claim.

use serde::Serialize;
use serde_json::Value;

use crate::config::Suite;
use crate::context::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
    Informational,
}

/// One verified (or skipped) claim in the report.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub statement: String,
    pub suite: Suite,
    pub computed: Value,
    pub expected: Value,
    pub status: ClaimStatus,
    pub runtime_ms: u128,
}

/// What a claim runner produced.
#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub computed: Value,
    pub expected: Value,
    pub status: ClaimStatus,
}

impl ClaimOutcome {
    /// Pass iff `computed == expected` (exact JSON equality).
    pub fn exact(computed: Value, expected: Value) -> ClaimOutcome {
        let status = if computed == expected {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        };
        ClaimOutcome {
            computed,
            expected,
            status,
        }
    }

    /// Pass/fail by an externally evaluated condition, with both sides
    /// reported as given.
    pub fn verdict(ok: bool, computed: Value, expected: Value) -> ClaimOutcome {
        ClaimOutcome {
            computed,
            expected,
            status: if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
        }
    }

    /// A value reported without a pass criterion.
    pub fn informational(computed: Value, expected: Value) -> ClaimOutcome {
        ClaimOutcome {
            computed,
            expected,
            status: ClaimStatus::Informational,
        }
    }

    /// A guard or budget prevented the check; the reason is recorded.
    pub fn skipped(reason: impl Into<String>) -> ClaimOutcome {
        ClaimOutcome {
            computed: serde_json::json!({ "skipped": reason.into() }),
            expected: Value::Null,
            status: ClaimStatus::Skipped,
        }
    }

    /// An internal error; reported as a failure, never swallowed.
    pub fn error(message: impl Into<String>) -> ClaimOutcome {
        ClaimOutcome {
            computed: serde_json::json!({ "error": message.into() }),
            expected: Value::Null,
            status: ClaimStatus::Fail,
        }
    }
}

type Runner = Box<dyn Fn(&Context) -> ClaimOutcome + Send + Sync>;

/// A registered claim: identity, prose statement, suite, cost estimate and
/// the closure that computes it.
pub struct ClaimSpec {
    pub id: String,
    pub statement: String,
    pub suite: Suite,
    /// Nominal single-thread cost in seconds, compared against the
    /// per-claim time budget before running.
    pub nominal_cost_sec: u64,
    /// Runs only when `--stretch` is given.
    pub stretch_only: bool,
    pub runner: Runner,
}

impl ClaimSpec {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        suite: Suite,
        nominal_cost_sec: u64,
        runner: impl Fn(&Context) -> ClaimOutcome + Send + Sync + 'static,
    ) -> ClaimSpec {
        ClaimSpec {
            id: id.into(),
            statement: statement.into(),
            suite,
            nominal_cost_sec,
            stretch_only: false,
            runner: Box::new(runner),
        }
    }

    pub fn stretch(mut self) -> ClaimSpec {
        self.stretch_only = true;
        self
    }
}
