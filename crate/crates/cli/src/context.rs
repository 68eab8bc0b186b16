//! Shared lazily-built artifacts: oracles, materialized graphs, spectra.
//!
//! All getters are thread-safe; the first caller builds, later callers
//! share.  When `ALTGRAPH_CACHE_DIR` points at a writable directory, edge
//! lists and eigenvalue lists are memoized on disk so repeated runs skip
//! reconstruction; cached values round-trip exactly.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use altgraph_core::graph::{ExplicitGraph, GraphError, TensorPowerOracle};
use altgraph_core::spectral::{adjacency_spectrum, Spectrum};

use crate::config::RunConfig;

/// Environment variable naming the on-disk memoization directory.
pub const CACHE_DIR_ENV: &str = "ALTGRAPH_CACHE_DIR";

/// Why a shared artifact is unavailable.
#[derive(Debug, Clone)]
pub enum ContextError {
    /// A size guard stopped the construction; claims report this as
    /// skipped.
    Guard(String),
    /// A real failure; claims report this as failed.
    Failure(String),
}

impl ContextError {
    fn from_graph(err: GraphError) -> ContextError {
        match err {
            GraphError::TooManyVertices(got, cap) => ContextError::Guard(format!(
                "vertex count {got} exceeds the materialization cap {cap}"
            )),
            GraphError::OracleTooLarge(got) => {
                ContextError::Guard(format!("vertex domain {got} exceeds the oracle cap"))
            }
            other => ContextError::Failure(other.to_string()),
        }
    }
}

type Key = (usize, usize);

pub struct Context {
    pub tol: f64,
    pub max_vertices: usize,
    pub seed: u64,
    cache_dir: Option<PathBuf>,
    oracles: Mutex<HashMap<Key, Arc<TensorPowerOracle>>>,
    graphs: Mutex<HashMap<Key, Arc<ExplicitGraph>>>,
    spectra: Mutex<HashMap<Key, Arc<Spectrum>>>,
}

impl Context {
    pub fn new(config: &RunConfig) -> Context {
        let cache_dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from);
        Context {
            tol: config.tol,
            max_vertices: config.max_vertices,
            seed: config.seed,
            cache_dir,
            oracles: Mutex::new(HashMap::new()),
            graphs: Mutex::new(HashMap::new()),
            spectra: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self, n: usize, q: usize) -> Result<Arc<TensorPowerOracle>, ContextError> {
        if let Some(found) = self.oracles.lock().unwrap().get(&(n, q)) {
            return Ok(Arc::clone(found));
        }
        let built = Arc::new(TensorPowerOracle::new(n, q).map_err(ContextError::from_graph)?);
        self.oracles
            .lock()
            .unwrap()
            .entry((n, q))
            .or_insert(built.clone());
        Ok(built)
    }

    /// The materialized graph, subject to `--max-vertices`.
    pub fn graph(&self, n: usize, q: usize) -> Result<Arc<ExplicitGraph>, ContextError> {
        if let Some(found) = self.graphs.lock().unwrap().get(&(n, q)) {
            return Ok(Arc::clone(found));
        }
        let oracle = self.oracle(n, q)?;
        if oracle.vertex_count() > self.max_vertices {
            return Err(ContextError::Guard(format!(
                "vertex count {} exceeds --max-vertices {}",
                oracle.vertex_count(),
                self.max_vertices
            )));
        }
        let built = match self.load_cached_graph(n, q, oracle.vertex_count()) {
            Some(cached) => Arc::new(cached),
            None => {
                let graph = oracle
                    .materialize(self.max_vertices)
                    .map_err(ContextError::from_graph)?;
                self.store_cached_graph(n, q, &graph);
                Arc::new(graph)
            }
        };
        self.graphs
            .lock()
            .unwrap()
            .entry((n, q))
            .or_insert(built.clone());
        Ok(built)
    }

    /// Full eigendecomposition (with basis); never disk-cached because the
    /// basis is recomputed cheaply and consumers need it fresh.
    pub fn spectrum(&self, n: usize, q: usize) -> Result<Arc<Spectrum>, ContextError> {
        if let Some(found) = self.spectra.lock().unwrap().get(&(n, q)) {
            return Ok(Arc::clone(found));
        }
        let graph = self.graph(n, q)?;
        let built = Arc::new(
            adjacency_spectrum(&graph, self.tol, true)
                .map_err(|e| ContextError::Failure(e.to_string()))?,
        );
        self.spectra
            .lock()
            .unwrap()
            .entry((n, q))
            .or_insert(built.clone());
        Ok(built)
    }

    /// Eigenvalues only; served from the disk cache when available.
    pub fn spectrum_values(&self, n: usize, q: usize) -> Result<Arc<Spectrum>, ContextError> {
        if let Some(found) = self.spectra.lock().unwrap().get(&(n, q)) {
            return Ok(Arc::clone(found));
        }
        if let Some(values) = self.load_cached_values(n, q) {
            return Ok(Arc::new(Spectrum::from_values(values)));
        }
        let full = self.spectrum(n, q)?;
        self.store_cached_values(n, q, full.values());
        Ok(full)
    }

    fn cache_path(&self, stem: &str, n: usize, q: usize, ext: &str) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|dir| dir.join(format!("{stem}_n{n}_q{q}.{ext}")))
    }

    fn load_cached_graph(&self, n: usize, q: usize, vertices: usize) -> Option<ExplicitGraph> {
        let path = self.cache_path("edges", n, q, "txt")?;
        let text = fs::read_to_string(path).ok()?;
        let mut edges = Vec::new();
        for line in text.lines() {
            let mut parts = line.split_whitespace();
            let u: u32 = parts.next()?.parse().ok()?;
            let v: u32 = parts.next()?.parse().ok()?;
            edges.push((u, v));
        }
        ExplicitGraph::from_edges(vertices, &edges).ok()
    }

    fn store_cached_graph(&self, n: usize, q: usize, graph: &ExplicitGraph) {
        if let Some(path) = self.cache_path("edges", n, q, "txt") {
            let _ = fs::create_dir_all(path.parent().expect("cache file has a parent"));
            let _ = fs::write(path, graph.edge_list_string());
        }
    }

    fn load_cached_values(&self, n: usize, q: usize) -> Option<Vec<f64>> {
        let path = self.cache_path("spectrum", n, q, "values")?;
        let text = fs::read_to_string(path).ok()?;
        let values: Result<Vec<f64>, _> = text.lines().map(str::parse).collect();
        values.ok()
    }

    fn store_cached_values(&self, n: usize, q: usize, values: &[f64]) {
        if let Some(path) = self.cache_path("spectrum", n, q, "values") {
            let _ = fs::create_dir_all(path.parent().expect("cache file has a parent"));
            let mut text = String::new();
            for v in values {
                // `{:?}` prints the shortest digits that round-trip exactly.
                text.push_str(&format!("{v:?}\n"));
            }
            let _ = fs::write(path, text);
        }
    }
}
