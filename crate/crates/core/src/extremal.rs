//! Independence, clique, and coloring computations.
//!
//! The central objects are the canonical independent sets: for a tensor
//! power with coordinates `1..=q` over the alternating group of degree `n`,
//! the set pinned at `(k, i, j)` holds every tuple whose `k`-th coordinate
//! maps point `i` to point `j`.  Two tuples in the same pinned set agree at
//! coordinate `k` on point `i`, so their quotient fixes `i`, is therefore no
//! derangement, and the tuples are non-adjacent: each pinned set is
//! independent.  This module builds the full family, verifies its
//! combinatorics exactly (sizes, pairwise intersections, which n-subsets
//! cover the whole group), runs exact branch-and-bound searches for maximum
//! independent sets and cliques on small instances, and checks the spectral
//! eigenspace certificate that maximum-size sets must satisfy.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Bipartiteness, ExplicitGraph, GraphError, TensorPowerOracle};
use crate::spectral::{Spectrum, INTEGER_SNAP_TOL};

/// Exact search cap: branch and bound is only attempted below this size.
pub const EXACT_SEARCH_MAX_VERTICES: usize = 400;
/// Pairwise-intersection profiling cap on the vertex count.
pub const INTERSECTION_MAX_VERTICES: usize = 10_000;
/// Cover scans enumerate at most this many subsets.
pub const COVER_SCAN_MAX_COMBINATIONS: u128 = 10_000_000;
/// Exhaustive neighborhood-expansion checks cap the part size.
pub const EXPANSION_MAX_PART: usize = 16;

#[derive(Debug, Error)]
pub enum ExtremalError {
    #[error("coordinate {k} out of range 1..={q}")]
    CoordinateOutOfRange { k: usize, q: usize },
    #[error("point {point} out of range 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("graph with {0} vertices exceeds the exact-search cap {1}")]
    SearchTooLarge(usize, usize),
    #[error("{0} vertices exceed the intersection-profile cap {1}")]
    ProfileTooLarge(usize, usize),
    #[error("cover scan of {0} combinations exceeds the cap {1}")]
    CoverScanTooLarge(u128, u128),
    #[error("cycle-power clique needs odd degree, got {0}")]
    EvenCycleOrder(usize),
    #[error("spectrum carries no eigenbasis")]
    MissingBasis,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition parts differ in size: {0} vs {1}")]
    UnequalParts(usize, usize),
    #[error("part size {0} exceeds the exhaustive-expansion cap {1}")]
    PartTooLarge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Identifies one pinned set: coordinate `k`, source point `i`, target `j`
/// (all 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetCoordinate {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

/// A pinned set together with its materialized members.
#[derive(Debug, Clone)]
pub struct CanonicalIndepSet {
    pub coord: SetCoordinate,
    pub members: VertexSet,
}

impl CanonicalIndepSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_coordinates(
    oracle: &TensorPowerOracle,
    k: usize,
    i: usize,
    j: usize,
) -> Result<(), ExtremalError> {
    if k == 0 || k > oracle.q() {
        return Err(ExtremalError::CoordinateOutOfRange { k, q: oracle.q() });
    }
    for point in [i, j] {
        if point == 0 || point > oracle.n() {
            return Err(ExtremalError::PointOutOfRange {
                point,
                n: oracle.n(),
            });
        }
    }
    Ok(())
}

/// Builds the pinned set for `(k, i, j)`: all tuples whose `k`-th coordinate
/// maps `i` to `j`.
pub fn canonical_independent_set(
    oracle: &TensorPowerOracle,
    k: usize,
    i: usize,
    j: usize,
) -> Result<CanonicalIndepSet, ExtremalError> {
    check_coordinates(oracle, k, i, j)?;
    let m = oracle.base_order();
    let group = oracle.group();
    let hits: Vec<bool> = group.elements().iter().map(|g| g.image(i) == j).collect();
    // Coordinate k is the k-th most significant mixed-radix digit.
    let shift = oracle.q() - k;
    let divisor = m.pow(shift as u32);
    let mut members = VertexSet::empty(oracle.vertex_count());
    for v in 0..oracle.vertex_count() {
        if hits[(v / divisor) % m] {
            members.insert(v);
        }
    }
    Ok(CanonicalIndepSet {
        coord: SetCoordinate { k, i, j },
        members,
    })
}

/// The full family of pinned sets in lexicographic `(k, i, j)` order;
/// `q·n²` sets in total.
pub fn canonical_family(
    oracle: &TensorPowerOracle,
) -> Result<Vec<CanonicalIndepSet>, ExtremalError> {
    let mut family = Vec::with_capacity(oracle.q() * oracle.n() * oracle.n());
    for k in 1..=oracle.q() {
        for i in 1..=oracle.n() {
            for j in 1..=oracle.n() {
                family.push(canonical_independent_set(oracle, k, i, j)?);
            }
        }
    }
    Ok(family)
}

/// True iff `s` spans no edge of `graph`.
pub fn is_independent_set(graph: &ExplicitGraph, s: &VertexSet) -> bool {
    s.iter().all(|u| {
        graph
            .neighbors(u)
            .iter()
            .all(|&v| v as usize <= u || !s.contains(v as usize))
    })
}

/// True iff `s` is independent and no outside vertex can be added.
pub fn is_maximal_independent(graph: &ExplicitGraph, s: &VertexSet) -> bool {
    if !is_independent_set(graph, s) {
        return false;
    }
    (0..graph.vertex_count()).all(|v| {
        s.contains(v)
            || graph
                .neighbors(v)
                .iter()
                .any(|&u| s.contains(u as usize))
    })
}

/// Exact maximum-clique machinery (branch and bound with greedy-coloring
/// upper bounds).  Independent-set questions are answered on the complement.
struct CliqueEngine<'g> {
    g: &'g ExplicitGraph,
}

impl CliqueEngine<'_> {
    fn row(&self, v: usize) -> &VertexSet {
        self.g
            .bit_row(v)
            .expect("bit rows are present below the exact-search cap")
    }

    /// Greedy-colors the candidate set; returns vertices ordered by
    /// ascending color along with their 1-based color numbers.
    fn greedy_color(&self, p: &VertexSet) -> (Vec<u32>, Vec<usize>) {
        let mut class_sets: Vec<VertexSet> = Vec::new();
        let mut class_members: Vec<Vec<u32>> = Vec::new();
        for v in p.iter() {
            let row = self.row(v);
            match class_sets.iter().position(|c| c.is_disjoint(row)) {
                Some(c) => {
                    class_sets[c].insert(v);
                    class_members[c].push(v as u32);
                }
                None => {
                    let mut s = VertexSet::empty(self.g.vertex_count());
                    s.insert(v);
                    class_sets.push(s);
                    class_members.push(vec![v as u32]);
                }
            }
        }
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        for (ci, members) in class_members.iter().enumerate() {
            for &v in members {
                order.push(v);
                colors.push(ci + 1);
            }
        }
        (order, colors)
    }

    /// Phase 1: the maximum clique size reachable from `(size, p)`.
    fn best_size(&self, size: usize, p: VertexSet, best: &mut usize) {
        if p.is_empty() {
            if size > *best {
                *best = size;
            }
            return;
        }
        let (order, colors) = self.greedy_color(&p);
        let mut p = p;
        for idx in (0..order.len()).rev() {
            if size + colors[idx] <= *best {
                return;
            }
            let v = order[idx] as usize;
            self.best_size(size + 1, p.intersection(self.row(v)), best);
            p.remove(v);
        }
    }

    /// Phase 2: collects every clique of size exactly `target` (each found
    /// once; `target` must be the clique number for completeness of the
    /// pruning rule).
    fn collect(&self, r: &mut Vec<u32>, p: VertexSet, target: usize, out: &mut Vec<Vec<u32>>) {
        if r.len() == target {
            out.push(r.clone());
            return;
        }
        if p.is_empty() {
            return;
        }
        let (order, colors) = self.greedy_color(&p);
        let mut p = p;
        for idx in (0..order.len()).rev() {
            if r.len() + colors[idx] < target {
                return;
            }
            let v = order[idx];
            r.push(v);
            self.collect(r, p.intersection(self.row(v as usize)), target, out);
            r.pop();
            p.remove(v as usize);
        }
    }

    fn maximum_size(&self) -> usize {
        let mut best = 0;
        self.best_size(0, VertexSet::full(self.g.vertex_count()), &mut best);
        best
    }

    fn all_maximum(&self) -> (usize, Vec<VertexSet>) {
        let best = self.maximum_size();
        let mut raw = Vec::new();
        self.collect(
            &mut Vec::new(),
            VertexSet::full(self.g.vertex_count()),
            best,
            &mut raw,
        );
        let mut sets: Vec<Vec<u32>> = raw
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort();
        let sets = sets
            .into_iter()
            .map(|s| {
                VertexSet::from_indices(self.g.vertex_count(), s.iter().map(|&v| v as usize))
                    .expect("vertices in range")
            })
            .collect();
        (best, sets)
    }
}

fn check_search_size(graph: &ExplicitGraph) -> Result<(), ExtremalError> {
    if graph.vertex_count() > EXACT_SEARCH_MAX_VERTICES {
        return Err(ExtremalError::SearchTooLarge(
            graph.vertex_count(),
            EXACT_SEARCH_MAX_VERTICES,
        ));
    }
    Ok(())
}

/// The independence number and the complete, lexicographically sorted list
/// of maximum independent sets.
#[derive(Debug, Clone)]
pub struct IndependenceOutcome {
    pub alpha: usize,
    pub sets: Vec<VertexSet>,
}

/// Exact enumeration of all maximum independent sets via maximum cliques of
/// the complement.
pub fn maximum_independent_sets(
    graph: &ExplicitGraph,
) -> Result<IndependenceOutcome, ExtremalError> {
    check_search_size(graph)?;
    let complement = graph.complement()?;
    let engine = CliqueEngine { g: &complement };
    let (alpha, sets) = engine.all_maximum();
    Ok(IndependenceOutcome { alpha, sets })
}

/// The independence number alone (no enumeration pass).
pub fn independence_number(graph: &ExplicitGraph) -> Result<usize, ExtremalError> {
    check_search_size(graph)?;
    let complement = graph.complement()?;
    Ok(CliqueEngine { g: &complement }.maximum_size())
}

/// The exact clique number.
pub fn clique_number(graph: &ExplicitGraph) -> Result<usize, ExtremalError> {
    check_search_size(graph)?;
    Ok(CliqueEngine { g: graph }.maximum_size())
}

/// The diagonal clique of cycle powers: the `n` tuples whose every
/// coordinate is the same power of the full cycle `(1 2 … n)`.  Powers of an
/// odd-order full cycle are even and fixed-point-free, so distinct tuples
/// are adjacent in every coordinate; even `n` is rejected.
pub fn cycle_power_clique(oracle: &TensorPowerOracle) -> Result<VertexSet, ExtremalError> {
    let n = oracle.n();
    if n.is_multiple_of(2) {
        return Err(ExtremalError::EvenCycleOrder(n));
    }
    let cycle: Vec<usize> = (1..=n).collect();
    let c = crate::perm::Permutation::from_cycles(n, &[cycle]).expect("valid cycle");
    let group = oracle.group();
    let mut members = VertexSet::empty(oracle.vertex_count());
    let mut power = crate::perm::Permutation::identity(n);
    for _ in 0..n {
        let idx = group
            .index_of(&power)
            .expect("cycle powers are even for odd n")
            .as_usize();
        // The diagonal tuple (g, g, …, g) in mixed radix.
        let m = oracle.base_order();
        let mut v = 0usize;
        for _ in 0..oracle.q() {
            v = v * m + idx;
        }
        members.insert(v);
        power = power.compose(&c).expect("same degree");
    }
    Ok(members)
}

/// A vertex coloring with a 1-based palette.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: Vec<u16>,
    palette: usize,
}

impl Coloring {
    pub fn color_of(&self, v: usize) -> usize {
        self.colors[v] as usize
    }

    pub fn palette_size(&self) -> usize {
        self.palette
    }

    /// True iff no edge is monochromatic.
    pub fn is_proper(&self, graph: &ExplicitGraph) -> bool {
        graph
            .edges()
            .all(|(u, v)| self.colors[u as usize] != self.colors[v as usize])
    }

    /// Color classes as vertex sets, palette order.
    pub fn classes(&self, universe: usize) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::empty(universe); self.palette];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c as usize - 1].insert(v);
        }
        out
    }
}

/// Colors every tuple by the image of point 1 under its first coordinate.
/// Adjacent tuples differ at coordinate 1 by a derangement, which cannot fix
/// the preimage of 1, so the coloring is proper with exactly `n` colors; the
/// color classes are the pinned sets `(1, 1, j)`.
pub fn color_by_first_image(oracle: &TensorPowerOracle) -> Coloring {
    let m = oracle.base_order();
    let group = oracle.group();
    let divisor = m.pow((oracle.q() - 1) as u32);
    let first_image: Vec<u16> = group
        .elements()
        .iter()
        .map(|g| g.image(1) as u16)
        .collect();
    let colors = (0..oracle.vertex_count())
        .map(|v| first_image[v / divisor])
        .collect();
    Coloring {
        colors,
        palette: oracle.n(),
    }
}

/// Exact pairwise-intersection sizes of the pinned family, classified by
/// how two coordinates `(k,i,j)`, `(k',i',j')` relate.  Each case is
/// reported only if its observed size is uniform across all pairs of that
/// case (`uniform` records this).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    /// |B ∩ B| for every set: the common set size.
    pub same_set: usize,
    /// k=k', i=i', j≠j': distinct targets for one pinned source point.
    pub same_coordinate_same_source: usize,
    /// k=k', i≠i', j=j': distinct sources pinned to one target.
    pub same_coordinate_same_target: usize,
    /// k=k', i≠i', j≠j'.
    pub same_coordinate_distinct: usize,
    /// k≠k' (absent when q = 1).
    pub cross_coordinate: Option<usize>,
    /// Every case had one size across all its pairs.
    pub uniform: bool,
}

pub fn intersection_profile(
    oracle: &TensorPowerOracle,
) -> Result<IntersectionProfile, ExtremalError> {
    if oracle.vertex_count() > INTERSECTION_MAX_VERTICES {
        return Err(ExtremalError::ProfileTooLarge(
            oracle.vertex_count(),
            INTERSECTION_MAX_VERTICES,
        ));
    }
    let family = canonical_family(oracle)?;
    let mut cases: [Option<usize>; 4] = [None; 4];
    let mut uniform = true;
    let mut record = |slot: usize, value: usize| match cases[slot] {
        None => cases[slot] = Some(value),
        Some(prev) => {
            if prev != value {
                uniform = false;
            }
        }
    };
    for (a, sa) in family.iter().enumerate() {
        for sb in family.iter().skip(a + 1) {
            let size = sa.members.intersection_len(&sb.members);
            let (ca, cb) = (sa.coord, sb.coord);
            let slot = if ca.k != cb.k {
                3
            } else if ca.i == cb.i {
                0 // same source, j must differ (distinct sets)
            } else if ca.j == cb.j {
                1
            } else {
                2
            };
            record(slot, size);
        }
    }
    Ok(IntersectionProfile {
        same_set: family[0].members.len(),
        same_coordinate_same_source: cases[0].unwrap_or(0),
        same_coordinate_same_target: cases[1].unwrap_or(0),
        same_coordinate_distinct: cases[2].unwrap_or(0),
        cross_coordinate: cases[3],
        uniform,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    // Each step forms a prefix binomial, so the division is exact.
    for t in 0..k {
        out = out * (n - t) as u128 / (t + 1) as u128;
    }
    out
}

/// Outcome of the exhaustive cover scan: which `n`-subsets of the pinned
/// family union to the whole vertex set.
#[derive(Debug, Clone, Serialize)]
pub struct CoverScanReport {
    /// Every covering n-subset, by set coordinates, lexicographic.
    pub covers: Vec<Vec<SetCoordinate>>,
    /// Number of n-subsets examined (all of them).
    pub combinations_checked: u64,
    /// True iff the covers are exactly the row families (fixed k,i) and
    /// column families (fixed k,j).
    pub rows_and_columns_only: bool,
}

/// Scans every `n`-subset of the pinned family and records those whose
/// union is the full vertex set.  The expected answer is the `2·q·n` row
/// and column families, each of which partitions the vertex set.
pub fn cover_scan(oracle: &TensorPowerOracle) -> Result<CoverScanReport, ExtremalError> {
    let n = oracle.n();
    let family = canonical_family(oracle)?;
    let total = binomial(family.len() as u64, n as u64);
    if total > COVER_SCAN_MAX_COMBINATIONS {
        return Err(ExtremalError::CoverScanTooLarge(
            total,
            COVER_SCAN_MAX_COMBINATIONS,
        ));
    }
    let universe = oracle.vertex_count();

    struct Scan<'f> {
        family: &'f [CanonicalIndepSet],
        depth: usize,
        universe: usize,
        unions: Vec<VertexSet>,
        chosen: Vec<usize>,
        covers: Vec<Vec<usize>>,
        checked: u64,
    }
    impl Scan<'_> {
        fn rec(&mut self, level: usize, start: usize) {
            if level == self.depth {
                self.checked += 1;
                if self.unions[level].len() == self.universe {
                    self.covers.push(self.chosen.clone());
                }
                return;
            }
            for idx in start..=(self.family.len() - (self.depth - level)) {
                let (parents, rest) = self.unions.split_at_mut(level + 1);
                rest[0].clone_from(&parents[level]);
                rest[0].union_with(&self.family[idx].members);
                self.chosen.push(idx);
                self.rec(level + 1, idx + 1);
                self.chosen.pop();
            }
        }
    }

    let mut scan = Scan {
        family: &family,
        depth: n,
        universe,
        unions: vec![VertexSet::empty(universe); n + 1],
        chosen: Vec::with_capacity(n),
        covers: Vec::new(),
        checked: 0,
    };
    scan.rec(0, 0);

    let mut expected: Vec<Vec<usize>> = Vec::new();
    for k in 1..=oracle.q() {
        for i in 1..=n {
            expected.push(
                (1..=n)
                    .map(|j| (k - 1) * n * n + (i - 1) * n + (j - 1))
                    .collect(),
            );
        }
        for j in 1..=n {
            expected.push(
                (1..=n)
                    .map(|i| (k - 1) * n * n + (i - 1) * n + (j - 1))
                    .collect(),
            );
        }
    }
    expected.sort();
    let mut found = scan.covers.clone();
    found.sort();
    let rows_and_columns_only = found == expected;

    Ok(CoverScanReport {
        covers: scan
            .covers
            .iter()
            .map(|cover| cover.iter().map(|&idx| family[idx].coord).collect())
            .collect(),
        combinations_checked: scan.checked,
        rows_and_columns_only,
    })
}

/// Spectral membership certificate: after removing its mean, the indicator
/// of a maximum-size independent set in a ratio-tight regular graph must lie
/// in the least-eigenvalue eigenspace.  Returns true iff the projection of
/// `indicator − (|s|/N)·𝟙` outside that eigenspace has norm < `tol`.
pub fn eigenspace_certificate(
    s: &VertexSet,
    spectrum: &Spectrum,
    tol: f64,
) -> Result<bool, ExtremalError> {
    let basis = spectrum.basis().ok_or(ExtremalError::MissingBasis)?;
    let n = spectrum.dim();
    if s.universe() != n {
        return Err(ExtremalError::DimensionMismatch(s.universe(), n));
    }
    let least = spectrum.least();
    let mean = s.len() as f64 / n as f64;
    let mut residual_sq = 0.0;
    for (k, vector) in basis.iter().enumerate() {
        if (spectrum.values()[k] - least).abs() <= INTEGER_SNAP_TOL {
            continue;
        }
        let on_set: f64 = s.iter().map(|v| vector[v]).sum();
        let total: f64 = vector.iter().sum();
        let coefficient = on_set - mean * total;
        residual_sq += coefficient * coefficient;
    }
    Ok(residual_sq.sqrt() < tol)
}

/// Eigenspace certificate for the tensor square, computed through the base
/// eigenbasis: with `X` the centered indicator reshaped to an `m×m` matrix
/// and `V` the base eigenvector matrix, the coefficient on the product
/// eigenvector `(a,b)` is `(Vᵀ X V)[a][b]`.  The residual sums coefficients
/// whose eigenvalue product is not the least product eigenvalue.
pub fn tensor_square_eigenspace_certificate(
    s: &VertexSet,
    base: &Spectrum,
    tol: f64,
) -> Result<bool, ExtremalError> {
    let basis = base.basis().ok_or(ExtremalError::MissingBasis)?;
    let m = base.dim();
    let n = m * m;
    if s.universe() != n {
        return Err(ExtremalError::DimensionMismatch(s.universe(), n));
    }
    let mean = s.len() as f64 / n as f64;
    let mut x = vec![-mean; n];
    for v in s.iter() {
        x[v] += 1.0;
    }
    // t = X·V  (column b of V is basis[b])
    let mut t = vec![0.0f64; n];
    for row in 0..m {
        for (b, vec_b) in basis.iter().enumerate() {
            let mut acc = 0.0;
            for j in 0..m {
                acc += x[row * m + j] * vec_b[j];
            }
            t[row * m + b] = acc;
        }
    }
    // c = Vᵀ·t
    let least_product = {
        let vals = base.values();
        let mut least = f64::INFINITY;
        for &a in vals {
            for &b in vals {
                least = least.min(a * b);
            }
        }
        least
    };
    let mut residual_sq = 0.0;
    for (a, vec_a) in basis.iter().enumerate() {
        for b in 0..m {
            let product = base.values()[a] * base.values()[b];
            if (product - least_product).abs() <= INTEGER_SNAP_TOL {
                continue;
            }
            let mut acc = 0.0;
            for i in 0..m {
                acc += vec_a[i] * t[i * m + b];
            }
            residual_sq += acc * acc;
        }
    }
    Ok(residual_sq.sqrt() < tol)
}

/// Exhaustive neighborhood-expansion check for connected regular bipartite
/// graphs with equal parts: every nonempty proper subset `S` of either part
/// must satisfy `|N(S)| > |S|`.  (For connected such graphs this is forced:
/// `|N(S)| ≥ |S|` by regularity, and equality would disconnect `S ∪ N(S)`.)
pub fn bipartite_neighborhood_expansion(graph: &ExplicitGraph) -> Result<bool, ExtremalError> {
    if !graph.is_connected() {
        return Err(ExtremalError::NotConnected);
    }
    if graph.regular_degree().is_none() {
        return Err(ExtremalError::NotRegular);
    }
    let (part_a, part_b) = match graph.bipartiteness() {
        Bipartiteness::Bipartite(a, b) => (a.to_indices(), b.to_indices()),
        Bipartiteness::OddCycle(_) => return Err(ExtremalError::NotBipartite),
    };
    if part_a.len() != part_b.len() {
        return Err(ExtremalError::UnequalParts(part_a.len(), part_b.len()));
    }
    if part_a.len() > EXPANSION_MAX_PART {
        return Err(ExtremalError::PartTooLarge(part_a.len(), EXPANSION_MAX_PART));
    }
    for (side, other) in [(&part_a, &part_b), (&part_b, &part_a)] {
        let position: std::collections::HashMap<usize, usize> = other
            .iter()
            .enumerate()
            .map(|(pos, &v)| (v, pos))
            .collect();
        let masks: Vec<u32> = side
            .iter()
            .map(|&v| {
                graph
                    .neighbors(v)
                    .iter()
                    .map(|&u| 1u32 << position[&(u as usize)])
                    .fold(0, |acc, bit| acc | bit)
            })
            .collect();
        let p = side.len();
        for subset in 1..((1u32 << p) - 1) {
            let mut neighborhood = 0u32;
            for (idx, mask) in masks.iter().enumerate() {
                if subset & (1 << idx) != 0 {
                    neighborhood |= mask;
                }
            }
            if neighborhood.count_ones() <= subset.count_ones() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Diagonal-embedding report: the map `g ↦ (g, g)` into the tensor square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiagonalEmbeddingReport {
    pub edges_checked: usize,
    /// Every base edge maps to an edge of the square.
    pub homomorphism: bool,
    /// α_base/|V_base| = α_square/|V_square| as an exact cross-product.
    pub ratio_equality: bool,
    /// The diagonal preimage of the pinned set (1,1,1) in the square is the
    /// base pinned set (1,1,1).
    pub preimage_is_base_set: bool,
}

impl DiagonalEmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.homomorphism && self.ratio_equality && self.preimage_is_base_set
    }
}

pub fn diagonal_embedding_check(
    n: usize,
    alpha_base: u64,
    alpha_square: u64,
) -> Result<DiagonalEmbeddingReport, ExtremalError> {
    let base_oracle = TensorPowerOracle::new(n, 1)?;
    let square = TensorPowerOracle::new(n, 2)?;
    let base = crate::graph::even_derangement_graph(n)?;
    let m = base.vertex_count();

    let mut edges_checked = 0;
    let mut homomorphism = true;
    for (u, v) in base.edges() {
        edges_checked += 1;
        let (u, v) = (u as usize, v as usize);
        if !square.adjacent(u * m + u, v * m + v) {
            homomorphism = false;
        }
    }

    let ratio_equality =
        alpha_base as u128 * square.vertex_count() as u128
            == alpha_square as u128 * base.vertex_count() as u128;

    let pinned_square = canonical_independent_set(&square, 1, 1, 1)?;
    let pinned_base = canonical_independent_set(&base_oracle, 1, 1, 1)?;
    let mut preimage = VertexSet::empty(m);
    for g in 0..m {
        if pinned_square.members.contains(g * m + g) {
            preimage.insert(g);
        }
    }
    let preimage_is_base_set = preimage == pinned_base.members;

    Ok(DiagonalEmbeddingReport {
        edges_checked,
        homomorphism,
        ratio_equality,
        preimage_is_base_set,
    })
}

/// Classifies the tensor square's vertices by which coordinates fix point 1
/// and examines the induced graph on the two single-fix classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizerSplitReport {
    /// Tuples whose both coordinates fix point 1.
    pub both_fixed: usize,
    /// Exactly the first / exactly the second coordinate fixes point 1.
    pub first_only: usize,
    pub second_only: usize,
    pub expected_both: usize,
    pub expected_single: usize,
    /// No edges inside either single-fix class (so the induced graph is
    /// bipartite with these parts).
    pub parts_independent: bool,
    /// Uniform degrees (first-only side, second-only side) when biregular.
    pub biregular_degrees: Option<(usize, usize)>,
    /// Whether the induced graph is connected (reported, not asserted).
    pub connected: bool,
}

pub fn stabilizer_split_report(n: usize) -> Result<StabilizerSplitReport, ExtremalError> {
    let oracle = TensorPowerOracle::new(n, 2)?;
    let graph = oracle.materialize(crate::graph::BIT_MATRIX_MAX_VERTICES)?;
    let m = oracle.base_order();
    let fixes: Vec<bool> = oracle
        .group()
        .elements()
        .iter()
        .map(|g| g.image(1) == 1)
        .collect();

    let total = oracle.vertex_count();
    let mut both = VertexSet::empty(total);
    let mut first_only = VertexSet::empty(total);
    let mut second_only = VertexSet::empty(total);
    for v in 0..total {
        match (fixes[v / m], fixes[v % m]) {
            (true, true) => both.insert(v),
            (true, false) => first_only.insert(v),
            (false, true) => second_only.insert(v),
            (false, false) => {}
        }
    }

    let keep = first_only.union(&second_only);
    let (induced, old_of_new) = graph.induced_subgraph(&keep);
    let side_of: Vec<bool> = old_of_new
        .iter()
        .map(|&old| first_only.contains(old as usize))
        .collect();

    let mut parts_independent = true;
    for (u, v) in induced.edges() {
        if side_of[u as usize] == side_of[v as usize] {
            parts_independent = false;
        }
    }
    let mut degrees = [std::collections::BTreeSet::new(), std::collections::BTreeSet::new()];
    for v in 0..induced.vertex_count() {
        degrees[side_of[v] as usize].insert(induced.degree(v));
    }
    let biregular_degrees = match (degrees[1].len(), degrees[0].len()) {
        (1, 1) => Some((
            *degrees[1].iter().next().expect("nonempty"),
            *degrees[0].iter().next().expect("nonempty"),
        )),
        _ => None,
    };

    let single_fixers = (0..m).filter(|&g| fixes[g]).count();
    Ok(StabilizerSplitReport {
        both_fixed: both.len(),
        first_only: first_only.len(),
        second_only: second_only.len(),
        expected_both: single_fixers * single_fixers,
        expected_single: single_fixers * (m - single_fixers),
        parts_independent,
        biregular_degrees,
        connected: induced.is_connected(),
    })
}
