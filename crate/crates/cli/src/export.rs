//! Raw artifact exports: edge lists, spectra as CSV, pinned sets as JSON.

use serde_json::json;

use altgraph_core::extremal::canonical_family;
use altgraph_core::spectral::INTEGER_SNAP_TOL;

use crate::config::{ExportKind, RunConfig};
use crate::context::{Context, ContextError};

/// Why an export could not be produced.
#[derive(Debug)]
pub enum ExportError {
    /// Wrong invocation; maps to the usage exit code.
    Usage(String),
    /// A guard or construction failure; maps to the resource exit code.
    Resource(String),
}

impl From<ContextError> for ExportError {
    fn from(err: ContextError) -> ExportError {
        match err {
            ContextError::Guard(msg) | ContextError::Failure(msg) => ExportError::Resource(msg),
        }
    }
}

/// Renders the requested artifact for the single selected instance.
pub fn export(config: &RunConfig, kind: ExportKind) -> Result<String, ExportError> {
    let instances = config.instances();
    let [(n, q)] = instances.as_slice() else {
        return Err(ExportError::Usage(format!(
            "--export needs exactly one instance; got {} (pass one --n and one --q)",
            instances.len()
        )));
    };
    let (n, q) = (*n, *q);
    let context = Context::new(config);
    match kind {
        ExportKind::Edges => {
            let graph = context.graph(n, q)?;
            Ok(graph.edge_list_string())
        }
        ExportKind::Spectrum => {
            let spectrum = context.spectrum_values(n, q)?;
            Ok(spectrum.csv_string(INTEGER_SNAP_TOL))
        }
        ExportKind::Sets => {
            let oracle = context.oracle(n, q)?;
            let family = canonical_family(&oracle)
                .map_err(|e| ExportError::Resource(e.to_string()))?;
            let entries: Vec<serde_json::Value> = family
                .iter()
                .map(|set| {
                    json!({
                        "k": set.coord.k,
                        "i": set.coord.i,
                        "j": set.coord.j,
                        "indices": set.members.to_indices(),
                    })
                })
                .collect();
            let mut text =
                serde_json::to_string_pretty(&entries).expect("sets serialize");
            text.push('\n');
            Ok(text)
        }
    }
}
