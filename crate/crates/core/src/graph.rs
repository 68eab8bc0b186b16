//! Graph construction and BFS-based structure checks.
//!
//! The central objects are the Cayley graph `AΓ_n` of the alternating group
//! `A_n` with connection set `E_n` (even derangements) and its tensor powers
//! `AΓ_n^q`: vertices are `q`-tuples over `A_n`, and two tuples are adjacent
//! iff they are adjacent coordinate-wise.  Tensor powers are exposed as an
//! [`TensorPowerOracle`] (adjacency answered per query) and can be
//! materialized into an [`ExplicitGraph`] under a vertex cap.
//!
//! Vertex numbering is canonical: coordinate tuples map to indices in
//! mixed-radix notation, most significant coordinate first, with each
//! coordinate an [`ElementIndex`] into the fixed lexicographic enumeration of
//! `A_n`.  Index 0 is always the identity tuple.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::perm::{
    enumerate_even_derangements, AlternatingGroup, ElementIndex, PermError, Permutation,
};

/// Graphs up to this many vertices carry a bit-matrix of adjacency rows.
pub const BIT_MATRIX_MAX_VERTICES: usize = 4_096;
/// Tensor-power oracles refuse vertex domains above this size.
pub const ORACLE_MAX_VERTICES: usize = 10_000_000;
/// Smallest and largest degree for which `AΓ_n` is constructed.
pub const MIN_BASE_DEGREE: usize = 3;
pub const MAX_BASE_DEGREE: usize = 7;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("base degree {0} outside supported range {MIN_BASE_DEGREE}..={MAX_BASE_DEGREE}")]
    BaseDegreeOutOfRange(usize),
    #[error("tensor power must have at least one coordinate")]
    ZeroPower,
    #[error("vertex domain {0} exceeds oracle cap {ORACLE_MAX_VERTICES}")]
    OracleTooLarge(usize),
    #[error("graph with {0} vertices exceeds cap {1}")]
    TooManyVertices(usize, usize),
    #[error("vertex {0} outside 0..{1}")]
    VertexOutOfRange(usize, usize),
    #[error("adjacency lists are not symmetric at ({0}, {1})")]
    Asymmetric(u32, u32),
    #[error("self loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate neighbor {1} of vertex {0}")]
    DuplicateNeighbor(u32, u32),
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("coordinate tuple has {0} entries, expected {1}")]
    CoordinateCount(usize, usize),
    #[error("oracle and materialized graph disagree on pair ({0}, {1})")]
    OracleMismatch(usize, usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Names one graph instance: the tensor power `AΓ_n^q`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct CayleyGraphSpec {
    pub n: usize,
    pub q: usize,
}

impl CayleyGraphSpec {
    pub fn new(n: usize, q: usize) -> Self {
        CayleyGraphSpec { n, q }
    }

    pub fn oracle(&self) -> Result<TensorPowerOracle, GraphError> {
        TensorPowerOracle::new(self.n, self.q)
    }

    /// Stable instance label used in claim identifiers and cache keys.
    pub fn label(&self) -> String {
        format!("n{}_q{}", self.n, self.q)
    }
}

impl std::fmt::Display for CayleyGraphSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AΓ_{}^{}", self.n, self.q)
    }
}

/// A vertex of a tensor power: one group-element index per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupVertex(pub Vec<ElementIndex>);

impl GroupVertex {
    pub fn coords(&self) -> &[ElementIndex] {
        &self.0
    }
}

/// An undirected simple graph stored as sorted adjacency lists, with an
/// optional bit matrix for O(1) adjacency on small graphs.
#[derive(Clone)]
pub struct ExplicitGraph {
    neighbors: Vec<Vec<u32>>,
    bit_rows: Option<Vec<VertexSet>>,
}

impl ExplicitGraph {
    /// Validates symmetry, simplicity and sortedness, then attaches bit rows
    /// when the graph is small enough.
    pub fn from_neighbor_lists(mut neighbors: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let n = neighbors.len();
        for list in neighbors.iter_mut() {
            list.sort_unstable();
        }
        for (u, list) in neighbors.iter().enumerate() {
            for pair in list.windows(2) {
                if pair[0] == pair[1] {
                    return Err(GraphError::DuplicateNeighbor(u as u32, pair[0]));
                }
            }
            for &v in list {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange(v as usize, n));
                }
                if v as usize == u {
                    return Err(GraphError::SelfLoop(u as u32));
                }
                if neighbors[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(GraphError::Asymmetric(u as u32, v));
                }
            }
        }
        let bit_rows = if n <= BIT_MATRIX_MAX_VERTICES {
            Some(
                neighbors
                    .iter()
                    .map(|list| {
                        VertexSet::from_indices(n, list.iter().map(|&v| v as usize))
                            .expect("validated indices")
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok(ExplicitGraph {
            neighbors,
            bit_rows,
        })
    }

    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u as usize, vertex_count));
            }
            if v as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange(v as usize, vertex_count));
            }
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        ExplicitGraph::from_neighbor_lists(neighbors)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// `Some(d)` iff every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.neighbors.first().map(Vec::len)?;
        self.neighbors.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn bit_row(&self, v: usize) -> Option<&VertexSet> {
        self.bit_rows.as_ref().map(|rows| &rows[v])
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match &self.bit_rows {
            Some(rows) => rows[u].contains(v),
            None => self.neighbors[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn bfs_distances(&self, start: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &v in &self.neighbors[u] {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(du + 1);
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start as u32];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head] as usize;
                head += 1;
                for &v in &self.neighbors[u] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.connected_components().len() == 1
    }

    /// Largest BFS distance from `start`; errors when some vertex is
    /// unreachable.
    pub fn eccentricity(&self, start: usize) -> Result<usize, GraphError> {
        let dist = self.bfs_distances(start);
        let mut ecc = 0usize;
        for d in dist {
            match d {
                Some(d) => ecc = ecc.max(d as usize),
                None => {
                    return Err(GraphError::Disconnected(self.connected_components().len()))
                }
            }
        }
        Ok(ecc)
    }

    /// Diameter of a vertex-transitive graph: the eccentricity of vertex 0.
    /// (For vertex-transitive graphs all eccentricities agree; callers are
    /// expected to use this only on such graphs.)
    pub fn diameter_vertex_transitive(&self) -> Result<usize, GraphError> {
        self.eccentricity(0)
    }

    /// Two-colors the graph by BFS.  Returns the two sides, or an odd closed
    /// cycle (as a vertex sequence) when the graph is not bipartite.
    pub fn bipartiteness(&self) -> Bipartiteness {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<Option<u32>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &v in &self.neighbors[u] {
                    let v = v as usize;
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = Some(u as u32);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Bipartiteness::OddCycle(odd_cycle_through(
                                &parent, u as u32, v as u32,
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut side_a = VertexSet::empty(n);
        let mut side_b = VertexSet::empty(n);
        for (v, c) in color.iter().enumerate() {
            if c.expect("every vertex colored") {
                side_b.insert(v);
            } else {
                side_a.insert(v);
            }
        }
        Bipartiteness::Bipartite(side_a, side_b)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartiteness(), Bipartiteness::Bipartite(..))
    }

    /// Subgraph induced by `keep`; the second component maps new indices back
    /// to the original vertex numbers (sorted ascending).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (ExplicitGraph, Vec<u32>) {
        assert_eq!(keep.universe(), self.vertex_count());
        let old_of_new: Vec<u32> = keep.iter().map(|v| v as u32).collect();
        let mut new_of_old = vec![u32::MAX; self.vertex_count()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let neighbors = old_of_new
            .iter()
            .map(|&old| {
                self.neighbors[old as usize]
                    .iter()
                    .filter(|&&v| keep.contains(v as usize))
                    .map(|&v| new_of_old[v as usize])
                    .collect()
            })
            .collect();
        (
            ExplicitGraph::from_neighbor_lists(neighbors).expect("induced subgraph is valid"),
            old_of_new,
        )
    }

    /// The graph with vertex `v` renamed to `relabel[v]`.
    pub fn relabeled(&self, relabel: &crate::group::PointPerm) -> ExplicitGraph {
        assert_eq!(relabel.degree(), self.vertex_count());
        let mut neighbors = vec![Vec::new(); self.vertex_count()];
        for (u, list) in self.neighbors.iter().enumerate() {
            let nu = relabel.image(u);
            neighbors[nu] = list.iter().map(|&v| relabel.image(v as usize) as u32).collect();
        }
        ExplicitGraph::from_neighbor_lists(neighbors).expect("relabeling preserves validity")
    }

    /// Tensor (categorical) product: `(u1, u2) ~ (v1, v2)` iff `u1 ~ v1` and
    /// `u2 ~ v2`.  Vertex `(u1, u2)` gets index `u1 * |other| + u2`.
    pub fn tensor_product(&self, other: &ExplicitGraph) -> Result<ExplicitGraph, GraphError> {
        let n = self.vertex_count() * other.vertex_count();
        if n > 100_000 {
            return Err(GraphError::TooManyVertices(n, 100_000));
        }
        let m = other.vertex_count();
        let mut neighbors = vec![Vec::new(); n];
        for u1 in 0..self.vertex_count() {
            for u2 in 0..m {
                let list = &mut neighbors[u1 * m + u2];
                for &v1 in &self.neighbors[u1] {
                    for &v2 in &other.neighbors[u2] {
                        list.push(v1 * m as u32 + v2);
                    }
                }
            }
        }
        ExplicitGraph::from_neighbor_lists(neighbors)
    }

    /// Complement graph (no loops).  Only for graphs small enough to carry a
    /// bit matrix.
    pub fn complement(&self) -> Result<ExplicitGraph, GraphError> {
        let n = self.vertex_count();
        if n > BIT_MATRIX_MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n, BIT_MATRIX_MAX_VERTICES));
        }
        let mut neighbors = vec![Vec::new(); n];
        for (u, (row, out_row)) in self.neighbors.iter().zip(neighbors.iter_mut()).enumerate() {
            let mut k = 0usize;
            for v in 0..n as u32 {
                while k < row.len() && row[k] < v {
                    k += 1;
                }
                if v as usize != u && (k >= row.len() || row[k] != v) {
                    out_row.push(v);
                }
            }
        }
        ExplicitGraph::from_neighbor_lists(neighbors)
    }

    /// Edge list in the interchange format: one `"u v"` per line with
    /// `u < v`, sorted, LF-terminated.
    pub fn edge_list_string(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Outcome of the BFS two-coloring.
pub enum Bipartiteness {
    /// The two color classes.
    Bipartite(VertexSet, VertexSet),
    /// A closed odd cycle, as a sequence of distinct vertices.
    OddCycle(Vec<u32>),
}

/// Reconstructs the odd cycle witnessing a same-color BFS edge `(u, v)`:
/// walk both parent chains to their meeting point; the two equal-parity paths
/// plus the edge form an odd closed cycle.
fn odd_cycle_through(parent: &[Option<u32>], u: u32, v: u32) -> Vec<u32> {
    let chain = |mut x: u32| {
        let mut path = vec![x];
        while let Some(p) = parent[x as usize] {
            path.push(p);
            x = p;
        }
        path
    };
    let pu = chain(u);
    let pv = chain(v);
    // Trim the common tail (both chains end at the BFS root).
    let mut iu = pu.len();
    let mut iv = pv.len();
    while iu > 0 && iv > 0 && pu[iu - 1] == pv[iv - 1] {
        iu -= 1;
        iv -= 1;
    }
    // pu[..=iu] and pv[..iv] meet at the common ancestor pu[iu].
    let mut cycle: Vec<u32> = pu[..=iu].to_vec();
    cycle.extend(pv[..iv].iter().rev());
    cycle
}

/// Checks that `cycle` is a closed walk of odd length ≥ 3 with all
/// consecutive pairs adjacent and all vertices distinct.
pub fn validate_odd_cycle(graph: &ExplicitGraph, cycle: &[u32]) -> bool {
    if cycle.len() < 3 || cycle.len().is_multiple_of(2) {
        return false;
    }
    let mut distinct: Vec<u32> = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != cycle.len() {
        return false;
    }
    (0..cycle.len()).all(|i| {
        let u = cycle[i] as usize;
        let v = cycle[(i + 1) % cycle.len()] as usize;
        graph.adjacent(u, v)
    })
}

/// JSON summary of a constructed graph instance.
#[derive(Debug, Serialize, PartialEq)]
pub struct GraphSummary {
    pub n: usize,
    pub q: usize,
    pub vertices: usize,
    pub degree: usize,
    pub edges: usize,
    pub components: usize,
    /// `None` (serialized as `null`) when the graph is disconnected.
    pub diameter: Option<usize>,
    pub bipartite: bool,
}

impl GraphSummary {
    pub fn compute(n: usize, q: usize, graph: &ExplicitGraph) -> GraphSummary {
        let components = graph.connected_components().len();
        GraphSummary {
            n,
            q,
            vertices: graph.vertex_count(),
            degree: graph.regular_degree().unwrap_or(0),
            edges: graph.edge_count(),
            components,
            diameter: if components == 1 {
                Some(
                    graph
                        .diameter_vertex_transitive()
                        .expect("connected graph has a diameter"),
                )
            } else {
                None
            },
            bipartite: graph.is_bipartite(),
        }
    }
}

/// Adjacency oracle for `AΓ_n^q`: the base graph `AΓ_n` is held explicitly,
/// tensor-power adjacency is answered per query without materializing the
/// product.
pub struct TensorPowerOracle {
    n: usize,
    q: usize,
    group: AlternatingGroup,
    connection: Vec<ElementIndex>,
    base_neighbors: Vec<Vec<u32>>,
    base_rows: Vec<VertexSet>,
    m: usize,
    vertex_count: usize,
}

impl TensorPowerOracle {
    pub fn new(n: usize, q: usize) -> Result<Self, GraphError> {
        if !(MIN_BASE_DEGREE..=MAX_BASE_DEGREE).contains(&n) {
            return Err(GraphError::BaseDegreeOutOfRange(n));
        }
        if q == 0 {
            return Err(GraphError::ZeroPower);
        }
        let group = AlternatingGroup::new(n)?;
        let m = group.order();
        let vertex_count = m
            .checked_pow(q as u32)
            .filter(|&c| c <= ORACLE_MAX_VERTICES)
            .ok_or_else(|| {
                GraphError::OracleTooLarge(m.checked_pow(q as u32).unwrap_or(usize::MAX))
            })?;

        let e_n = enumerate_even_derangements(n)?;
        let connection: Vec<ElementIndex> = e_n
            .iter()
            .map(|s| group.index_of(s).expect("E_n lies in A_n"))
            .collect();

        // Neighbors of u in the base graph are s·u for s in E_n: with right
        // actions, i^(s·u) = (i^s)^u, so v·u⁻¹ = s recovers the connection
        // element.
        let mut base_neighbors = Vec::with_capacity(m);
        for u in group.elements() {
            let mut list: Vec<u32> = e_n
                .iter()
                .map(|s| {
                    group
                        .index_of(&s.compose(u).expect("equal degrees"))
                        .expect("product stays in A_n")
                        .0
                })
                .collect();
            list.sort_unstable();
            base_neighbors.push(list);
        }
        let base_rows = base_neighbors
            .iter()
            .map(|list| {
                VertexSet::from_indices(m, list.iter().map(|&v| v as usize))
                    .expect("indices in range")
            })
            .collect();
        Ok(TensorPowerOracle {
            n,
            q,
            group,
            connection,
            base_neighbors,
            base_rows,
            m,
            vertex_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn group(&self) -> &AlternatingGroup {
        &self.group
    }

    /// The connection set `E_n` as indices into the group enumeration.
    pub fn connection(&self) -> &[ElementIndex] {
        &self.connection
    }

    pub fn connection_size(&self) -> usize {
        self.connection.len()
    }

    /// `|A_n|`, the radix of the vertex encoding.
    pub fn base_order(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn degree(&self) -> usize {
        self.connection.len().pow(self.q as u32)
    }

    /// The identity tuple always has index 0.
    pub fn identity_vertex(&self) -> usize {
        0
    }

    /// Mixed-radix encoding, most significant coordinate first.
    pub fn encode(&self, vertex: &GroupVertex) -> Result<usize, GraphError> {
        if vertex.0.len() != self.q {
            return Err(GraphError::CoordinateCount(vertex.0.len(), self.q));
        }
        let mut idx = 0usize;
        for &c in &vertex.0 {
            if c.as_usize() >= self.m {
                return Err(GraphError::VertexOutOfRange(c.as_usize(), self.m));
            }
            idx = idx * self.m + c.as_usize();
        }
        Ok(idx)
    }

    pub fn decode(&self, mut index: usize) -> Result<GroupVertex, GraphError> {
        if index >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange(index, self.vertex_count));
        }
        let mut coords = vec![ElementIndex(0); self.q];
        for k in (0..self.q).rev() {
            coords[k] = ElementIndex((index % self.m) as u32);
            index /= self.m;
        }
        Ok(GroupVertex(coords))
    }

    /// Tensor-power adjacency: adjacent iff adjacent in every coordinate.
    #[inline]
    pub fn adjacent(&self, mut u: usize, mut v: usize) -> bool {
        debug_assert!(u < self.vertex_count && v < self.vertex_count);
        if u == v {
            return false;
        }
        for _ in 0..self.q {
            let (cu, cv) = (u % self.m, v % self.m);
            if !self.base_rows[cu].contains(cv) {
                return false;
            }
            u /= self.m;
            v /= self.m;
        }
        true
    }

    /// Materializes the tensor power into an explicit graph.
    pub fn materialize(&self, max_vertices: usize) -> Result<ExplicitGraph, GraphError> {
        if self.vertex_count > max_vertices {
            return Err(GraphError::TooManyVertices(self.vertex_count, max_vertices));
        }
        let mut neighbors: Vec<Vec<u32>> = Vec::with_capacity(self.vertex_count);
        let mut coords = vec![0usize; self.q];
        for u in 0..self.vertex_count {
            // Decode u once, then cross the per-coordinate neighbor lists.
            let mut rem = u;
            for k in (0..self.q).rev() {
                coords[k] = rem % self.m;
                rem /= self.m;
            }
            let mut list = Vec::with_capacity(self.degree());
            let mut stack = vec![0u32];
            cross_product(
                &self.base_neighbors,
                &coords,
                0,
                self.m as u32,
                &mut stack,
                &mut list,
            );
            list.sort_unstable();
            neighbors.push(list);
        }
        ExplicitGraph::from_neighbor_lists(neighbors)
    }
}

fn cross_product(
    base_neighbors: &[Vec<u32>],
    coords: &[usize],
    k: usize,
    m: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<u32>,
) {
    let acc = *prefix.last().expect("seeded with 0");
    if k == coords.len() {
        out.push(acc);
        return;
    }
    for &v in &base_neighbors[coords[k]] {
        prefix.push(acc * m + v);
        cross_product(base_neighbors, coords, k + 1, m, prefix, out);
        prefix.pop();
    }
}

/// Builds `AΓ_n` as an explicit graph (the `q = 1` tensor power).
pub fn even_derangement_graph(n: usize) -> Result<ExplicitGraph, GraphError> {
    TensorPowerOracle::new(n, 1)?.materialize(BIT_MATRIX_MAX_VERTICES)
}

/// Result of [`common_neighbor_report`]: every unordered pair of distinct
/// vertices either shares a common neighbor or is listed as a failure.
pub struct CommonNeighborReport {
    pub pairs_checked: usize,
    pub failures: Vec<(u32, u32)>,
}

pub fn common_neighbor_report(graph: &ExplicitGraph) -> CommonNeighborReport {
    let n = graph.vertex_count();
    let mut pairs_checked = 0usize;
    let mut failures = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs_checked += 1;
            let shared = match (graph.bit_row(u), graph.bit_row(v)) {
                (Some(ru), Some(rv)) => ru.intersection_len(rv) > 0,
                _ => graph
                    .neighbors(u)
                    .iter()
                    .any(|&w| graph.adjacent(v, w as usize)),
            };
            if !shared {
                failures.push((u as u32, v as u32));
            }
        }
    }
    CommonNeighborReport {
        pairs_checked,
        failures,
    }
}

/// Whether every element of `A_n` is a product of two even derangements,
/// decided by forming the full product set `E_n · E_n`.
pub fn product_decomposition_check(n: usize) -> Result<bool, GraphError> {
    if !(MIN_BASE_DEGREE..=MAX_BASE_DEGREE).contains(&n) {
        return Err(GraphError::BaseDegreeOutOfRange(n));
    }
    let group = AlternatingGroup::new(n)?;
    let e_n = enumerate_even_derangements(n)?;
    let mut hit = vec![false; group.order()];
    for s in &e_n {
        for t in &e_n {
            let prod = s.compose(t).expect("equal degrees");
            hit[group.index_of(&prod).expect("product is even").as_usize()] = true;
        }
    }
    Ok(hit.iter().all(|&h| h))
}

/// Checks that the connected components of `AΓ_n` are exactly the right
/// cosets of `⟨E_n⟩`: the component of the identity must be a subgroup `H`,
/// and every component must equal `H·u` for each of its members `u`.
pub fn components_are_connection_closure_cosets(n: usize) -> Result<bool, GraphError> {
    let oracle = TensorPowerOracle::new(n, 1)?;
    let graph = oracle.materialize(BIT_MATRIX_MAX_VERTICES)?;
    let group = oracle.group();
    let components = graph.connected_components();
    let identity_component = components
        .iter()
        .find(|c| c.contains(&0))
        .expect("identity vertex exists");
    let h: Vec<&Permutation> = identity_component
        .iter()
        .map(|&v| group.element(ElementIndex(v)))
        .collect();
    // H must be closed under multiplication (it contains the identity).
    for a in &h {
        for b in &h {
            let ab = a.compose(b).expect("equal degrees");
            if group
                .index_of(&ab)
                .map(|i| !identity_component.contains(&i.0))
                .unwrap_or(true)
            {
                return Ok(false);
            }
        }
    }
    // Every component must be a right coset H·u of the identity component.
    for comp in &components {
        for &u in comp {
            let pu = group.element(ElementIndex(u));
            let mut coset: Vec<u32> = h
                .iter()
                .map(|x| {
                    group
                        .index_of(&x.compose(pu).expect("equal degrees"))
                        .expect("product is even")
                        .0
                })
                .collect();
            coset.sort_unstable();
            if &coset != comp {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compares oracle adjacency against a materialized graph on `samples`
/// seeded-random vertex pairs; returns the number of agreeing pairs.
pub fn oracle_agreement(
    oracle: &TensorPowerOracle,
    graph: &ExplicitGraph,
    samples: usize,
    seed: u64,
) -> Result<usize, GraphError> {
    use rand::{Rng, SeedableRng};
    if graph.vertex_count() != oracle.vertex_count() {
        return Err(GraphError::VertexOutOfRange(
            graph.vertex_count(),
            oracle.vertex_count(),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = oracle.vertex_count();
    for _ in 0..samples {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if oracle.adjacent(u, v) != graph.adjacent(u, v) {
            return Err(GraphError::OracleMismatch(u, v));
        }
    }
    Ok(samples)
}

// ---------------------------------------------------------------------------
// Small synthetic builders (test fixtures and lemma instances).
// ---------------------------------------------------------------------------

pub fn cycle_graph(k: usize) -> ExplicitGraph {
    assert!(k >= 3);
    let edges: Vec<(u32, u32)> = (0..k)
        .map(|i| (i as u32, ((i + 1) % k) as u32))
        .collect();
    ExplicitGraph::from_edges(k, &edges).expect("cycle is a valid graph")
}

pub fn complete_graph(k: usize) -> ExplicitGraph {
    let mut edges = Vec::new();
    for u in 0..k as u32 {
        for v in (u + 1)..k as u32 {
            edges.push((u, v));
        }
    }
    ExplicitGraph::from_edges(k, &edges).expect("complete graph is valid")
}

/// Bipartite graph on parts `{0..m}` and `{m..2m}` with left `i` adjacent to
/// right `m + ((i + d) mod m)` for each difference `d`.
pub fn bipartite_circulant(m: usize, diffs: &[usize]) -> ExplicitGraph {
    let mut edges = Vec::new();
    for i in 0..m {
        for &d in diffs {
            edges.push((i as u32, (m + (i + d) % m) as u32));
        }
    }
    ExplicitGraph::from_edges(2 * m, &edges).expect("circulant is valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> ExplicitGraph {
    let mut edges = Vec::new();
    for u in 0..a as u32 {
        for v in 0..b as u32 {
            edges.push((u, a as u32 + v));
        }
    }
    ExplicitGraph::from_edges(a + b, &edges).expect("complete bipartite is valid")
}

/// Disjoint union, vertices of `b` shifted past those of `a`.
pub fn disjoint_union(a: &ExplicitGraph, b: &ExplicitGraph) -> ExplicitGraph {
    let offset = a.vertex_count() as u32;
    let mut neighbors: Vec<Vec<u32>> = (0..a.vertex_count())
        .map(|u| a.neighbors(u).to_vec())
        .collect();
    for u in 0..b.vertex_count() {
        neighbors.push(b.neighbors(u).iter().map(|&v| v + offset).collect());
    }
    ExplicitGraph::from_neighbor_lists(neighbors).expect("disjoint union is valid")
}
