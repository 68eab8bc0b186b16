//! Report assembly and rendering (JSON and plain text).
//!
//! Reports carry no timestamps or absolute paths, so two runs with the same
//! configuration and seed produce byte-identical output apart from the
//! per-claim `runtime_ms` measurements.

use serde::Serialize;

use crate::claims::{ClaimRecord, ClaimStatus};
use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: String,
    pub config: RunConfig,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub claims: Vec<ClaimRecord>,
}

impl Report {
    pub fn new(config: RunConfig, claims: Vec<ClaimRecord>) -> Report {
        Report {
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                config,
            },
            claims,
        }
    }

    /// Number of failed claims; nonzero drives the exit code.
    pub fn failures(&self) -> usize {
        self.count(ClaimStatus::Fail)
    }

    fn count(&self, status: ClaimStatus) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for claim in &self.claims {
            let tag = match claim.status {
                ClaimStatus::Pass => "PASS",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Skipped => "SKIP",
                ClaimStatus::Informational => "INFO",
            };
            out.push_str(&format!(
                "{tag} [{}] {} ({} ms)\n",
                claim.suite, claim.claim_id, claim.runtime_ms
            ));
            match claim.status {
                ClaimStatus::Pass => {}
                ClaimStatus::Fail => {
                    out.push_str(&format!("     statement: {}\n", claim.statement));
                    out.push_str(&format!("     computed:  {}\n", claim.computed));
                    out.push_str(&format!("     expected:  {}\n", claim.expected));
                }
                ClaimStatus::Skipped | ClaimStatus::Informational => {
                    out.push_str(&format!("     computed:  {}\n", claim.computed));
                    if !claim.expected.is_null() {
                        out.push_str(&format!("     expected:  {}\n", claim.expected));
                    }
                }
            }
        }
        out.push_str(&format!(
            "\n{} claims: {} passed, {} failed, {} skipped, {} informational\n",
            self.claims.len(),
            self.count(ClaimStatus::Pass),
            self.failures(),
            self.count(ClaimStatus::Skipped),
            self.count(ClaimStatus::Informational),
        ));
        out
    }
}
