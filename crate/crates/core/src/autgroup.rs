//! Named automorphisms of the tensor powers and two independent routes to
//! automorphism-group orders.
//!
//! Four families of vertex maps are constructed by name — right
//! translations, per-coordinate conjugations, coordinate permutations, and
//! per-coordinate inversions.  Each is realized as an explicit [`PointPerm`]
//! on vertex indices so that edge preservation, generated group order
//! (Schreier–Sims), faithfulness of the induced action on the pinned-set
//! family, and the action on the row/column families can all be checked
//! mechanically.  Independently of the named generators,
//! [`full_automorphism_order`] computes `|Aut|` of an explicit graph from
//! scratch by individualization-refinement, giving an oracle the generated
//! order can be compared against.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::extremal::{canonical_family, CanonicalIndepSet, ExtremalError, SetCoordinate};
use crate::graph::{ExplicitGraph, GraphError, GroupVertex, TensorPowerOracle};
use crate::group::{Bsgs, GroupError, PointPerm};
use crate::perm::{PermError, Permutation};

/// Vertex-domain cap for realizing automorphisms explicitly.
pub const REALIZATION_MAX_VERTICES: usize = 10_000;
/// Individualization-refinement cap.
pub const IR_MAX_VERTICES: usize = 400;
/// Node budget for the refinement search tree.
pub const IR_NODE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("vertex domain {0} exceeds the realization cap {1}")]
    DomainTooLarge(usize, usize),
    #[error("graph with {0} vertices exceeds the search cap {1}")]
    SearchTooLarge(usize, usize),
    #[error("refinement search exceeded its node budget {0}")]
    SearchBudgetExceeded(u64),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coordinate {k} out of range 1..={q}")]
    CoordinateOutOfRange { k: usize, q: usize },
    #[error("image of pinned set {0:?} is not a pinned set")]
    SetImageOutsideFamily(SetCoordinate),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

/// The constructor data of a named automorphism.
#[derive(Debug, Clone)]
pub enum AutomorphismKind {
    /// `g ↦ g·h`, coordinatewise group multiplication.
    RightTranslation(GroupVertex),
    /// Coordinate `k` is conjugated: `σ_k ↦ τ⁻¹ σ_k τ`; `τ` may be odd.
    Conjugation { tau: Permutation, k: usize },
    /// Tuple positions permuted: position `t` receives coordinate `t^{π⁻¹}`.
    CoordinatePermutation(Permutation),
    /// Coordinate `k` is inverted: `σ_k ↦ σ_k⁻¹`.
    Inversion { k: usize },
}

/// A vertex permutation remembered together with how it was built.
#[derive(Debug, Clone)]
pub struct NamedAutomorphism {
    kind: AutomorphismKind,
    perm: PointPerm,
}

impl NamedAutomorphism {
    pub fn kind(&self) -> &AutomorphismKind {
        &self.kind
    }

    pub fn perm(&self) -> &PointPerm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    /// Forward and backward edge scans: every edge maps to an edge under
    /// the map and under its inverse.  (Either direction alone already
    /// suffices for a bijection, but both are scanned.)
    pub fn preserves_edges(&self, graph: &ExplicitGraph) -> bool {
        let inverse = self.perm.inverse();
        graph.edges().all(|(u, v)| {
            graph.adjacent(self.perm.image(u as usize), self.perm.image(v as usize))
                && graph.adjacent(inverse.image(u as usize), inverse.image(v as usize))
        })
    }

    /// The image of a vertex set.
    pub fn set_image(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(s.universe());
        for v in s.iter() {
            out.insert(self.perm.image(v));
        }
        out
    }
}

fn check_domain(oracle: &TensorPowerOracle) -> Result<(), AutError> {
    if oracle.vertex_count() > REALIZATION_MAX_VERTICES {
        return Err(AutError::DomainTooLarge(
            oracle.vertex_count(),
            REALIZATION_MAX_VERTICES,
        ));
    }
    Ok(())
}

fn check_coordinate(oracle: &TensorPowerOracle, k: usize) -> Result<(), AutError> {
    if k == 0 || k > oracle.q() {
        return Err(AutError::CoordinateOutOfRange { k, q: oracle.q() });
    }
    Ok(())
}

/// Realizes a coordinatewise vertex map given per-element images at each
/// coordinate: `table[t][e]` is the image of base element `e` at coordinate
/// `t`.
fn realize_coordinatewise(
    oracle: &TensorPowerOracle,
    table: &[Vec<u32>],
) -> Result<PointPerm, AutError> {
    let m = oracle.base_order();
    let q = oracle.q();
    let mut images = Vec::with_capacity(oracle.vertex_count());
    for v in 0..oracle.vertex_count() {
        let mut rest = v;
        let mut digits = [0usize; 8];
        for t in (0..q).rev() {
            digits[t] = rest % m;
            rest /= m;
        }
        let mut image = 0usize;
        for (t, row) in table.iter().enumerate() {
            image = image * m + row[digits[t]] as usize;
        }
        images.push(image as u32);
    }
    Ok(PointPerm::new(images)?)
}

/// `g ↦ g·h`: right translation by the tuple `h`.
pub fn right_translation(
    oracle: &TensorPowerOracle,
    h: &GroupVertex,
) -> Result<NamedAutomorphism, AutError> {
    check_domain(oracle)?;
    if h.coords().len() != oracle.q() {
        return Err(AutError::DegreeMismatch {
            expected: oracle.q(),
            got: h.coords().len(),
        });
    }
    let group = oracle.group();
    let mut table = Vec::with_capacity(oracle.q());
    for &ht in h.coords() {
        let h_elem = group.element(ht);
        let row: Result<Vec<u32>, _> = group
            .elements()
            .iter()
            .map(|g| {
                group
                    .index_of(&g.compose(h_elem)?)
                    .map(|idx| idx.0)
            })
            .collect();
        table.push(row?);
    }
    Ok(NamedAutomorphism {
        kind: AutomorphismKind::RightTranslation(h.clone()),
        perm: realize_coordinatewise(oracle, &table)?,
    })
}

/// Conjugation of coordinate `k` by `τ ∈ S_n` (odd `τ` allowed: conjugation
/// preserves parity and cycle type, hence the group and the connection set).
pub fn conjugation_automorphism(
    oracle: &TensorPowerOracle,
    tau: &Permutation,
    k: usize,
) -> Result<NamedAutomorphism, AutError> {
    check_domain(oracle)?;
    check_coordinate(oracle, k)?;
    if tau.degree() != oracle.n() {
        return Err(AutError::DegreeMismatch {
            expected: oracle.n(),
            got: tau.degree(),
        });
    }
    let group = oracle.group();
    let conjugated: Result<Vec<u32>, AutError> = group
        .elements()
        .iter()
        .map(|g| Ok(group.index_of(&g.conjugate(tau)?)?.0))
        .collect();
    let conjugated = conjugated?;
    let identity: Vec<u32> = (0..group.order() as u32).collect();
    let table: Vec<Vec<u32>> = (1..=oracle.q())
        .map(|t| {
            if t == k {
                conjugated.clone()
            } else {
                identity.clone()
            }
        })
        .collect();
    Ok(NamedAutomorphism {
        kind: AutomorphismKind::Conjugation {
            tau: tau.clone(),
            k,
        },
        perm: realize_coordinatewise(oracle, &table)?,
    })
}

/// Permutes tuple positions: position `t` of the image holds coordinate
/// `t^{π⁻¹}` of the argument.
pub fn coordinate_permutation(
    oracle: &TensorPowerOracle,
    pi: &Permutation,
) -> Result<NamedAutomorphism, AutError> {
    check_domain(oracle)?;
    if pi.degree() != oracle.q() {
        return Err(AutError::DegreeMismatch {
            expected: oracle.q(),
            got: pi.degree(),
        });
    }
    let m = oracle.base_order();
    let q = oracle.q();
    let pi_inv = pi.inverse();
    let mut images = Vec::with_capacity(oracle.vertex_count());
    for v in 0..oracle.vertex_count() {
        let mut rest = v;
        let mut digits = [0usize; 8];
        for t in (0..q).rev() {
            digits[t] = rest % m;
            rest /= m;
        }
        let mut image = 0usize;
        for t in 1..=q {
            image = image * m + digits[pi_inv.image(t) - 1];
        }
        images.push(image as u32);
    }
    Ok(NamedAutomorphism {
        kind: AutomorphismKind::CoordinatePermutation(pi.clone()),
        perm: PointPerm::new(images)?,
    })
}

/// Inverts coordinate `k` of every tuple; an involution.
pub fn inversion(oracle: &TensorPowerOracle, k: usize) -> Result<NamedAutomorphism, AutError> {
    check_domain(oracle)?;
    check_coordinate(oracle, k)?;
    let group = oracle.group();
    let inverted: Result<Vec<u32>, AutError> = group
        .elements()
        .iter()
        .map(|g| Ok(group.index_of(&g.inverse())?.0))
        .collect();
    let inverted = inverted?;
    let identity: Vec<u32> = (0..group.order() as u32).collect();
    let table: Vec<Vec<u32>> = (1..=oracle.q())
        .map(|t| {
            if t == k {
                inverted.clone()
            } else {
                identity.clone()
            }
        })
        .collect();
    Ok(NamedAutomorphism {
        kind: AutomorphismKind::Inversion { k },
        perm: realize_coordinatewise(oracle, &table)?,
    })
}

/// `q!·(n!)^{2q}`: the claimed order of the full automorphism group.
pub fn claimed_group_order(n: usize, q: usize) -> BigUint {
    let mut out = BigUint::from(1u32);
    for t in 1..=q {
        out *= BigUint::from(t);
    }
    let mut fact = BigUint::from(1u32);
    for t in 1..=n {
        fact *= BigUint::from(t);
    }
    out * fact.pow(2 * q as u32)
}

/// Generators of the base group: `(1 2 3)` and the full cycle for odd `n`,
/// or the `(n−1)`-cycle `(2 3 … n)` for even `n`.
fn base_group_generators(n: usize) -> Vec<Permutation> {
    let three = Permutation::from_cycles(n, &[vec![1, 2, 3]]).expect("valid 3-cycle");
    let long = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(1..=n).collect()]).expect("valid n-cycle")
    } else {
        Permutation::from_cycles(n, &[(2..=n).collect()]).expect("valid (n-1)-cycle")
    };
    vec![three, long]
}

/// The standard generating set of the claimed automorphism group:
/// translations by base-group generators in each coordinate, conjugations
/// by `(1 2)` and `(1 2 … n)` in each coordinate, adjacent coordinate
/// transpositions, and every coordinate inversion.
pub fn standard_generators(
    oracle: &TensorPowerOracle,
) -> Result<Vec<NamedAutomorphism>, AutError> {
    let group = oracle.group();
    let q = oracle.q();
    let n = oracle.n();
    let mut out = Vec::new();
    for t in 0..q {
        for gen in base_group_generators(n) {
            let mut coords = vec![group.identity_index(); q];
            coords[t] = group.index_of(&gen)?;
            out.push(right_translation(oracle, &GroupVertex(coords))?);
        }
    }
    let swap = Permutation::from_cycles(n, &[vec![1, 2]]).expect("valid transposition");
    let cycle = Permutation::from_cycles(n, &[(1..=n).collect()]).expect("valid cycle");
    for k in 1..=q {
        out.push(conjugation_automorphism(oracle, &swap, k)?);
        out.push(conjugation_automorphism(oracle, &cycle, k)?);
    }
    for t in 1..q {
        let transposition =
            Permutation::from_cycles(q, &[vec![t, t + 1]]).expect("valid transposition");
        out.push(coordinate_permutation(oracle, &transposition)?);
    }
    for k in 1..=q {
        out.push(inversion(oracle, k)?);
    }
    Ok(out)
}

/// Result of comparing the generated group's exact order with the claim.
#[derive(Debug, Clone)]
pub struct GeneratedOrderReport {
    pub computed: BigUint,
    pub claimed: BigUint,
    pub matches: bool,
}

/// Builds the standard generators, runs Schreier–Sims on the vertex domain,
/// and compares with `q!·(n!)^{2q}`.
pub fn generated_order_check(oracle: &TensorPowerOracle) -> Result<GeneratedOrderReport, AutError> {
    let gens: Vec<PointPerm> = standard_generators(oracle)?
        .into_iter()
        .map(|a| a.perm)
        .collect();
    let bsgs = Bsgs::new(&gens, 42)?;
    let computed = bsgs.order();
    let claimed = claimed_group_order(oracle.n(), oracle.q());
    Ok(GeneratedOrderReport {
        matches: computed == claimed,
        computed,
        claimed,
    })
}

/// Exact orders of the chain: translations only, then adding conjugations,
/// then inversions, then coordinate permutations.  Stage names record what
/// was added.
pub fn order_ladder(oracle: &TensorPowerOracle) -> Result<Vec<(String, BigUint)>, AutError> {
    let group = oracle.group();
    let q = oracle.q();
    let n = oracle.n();
    let mut gens: Vec<PointPerm> = Vec::new();
    let mut ladder = Vec::new();

    for t in 0..q {
        for gen in base_group_generators(n) {
            let mut coords = vec![group.identity_index(); q];
            coords[t] = group.index_of(&gen)?;
            gens.push(right_translation(oracle, &GroupVertex(coords))?.perm);
        }
    }
    ladder.push(("translations".to_string(), Bsgs::new(&gens, 42)?.order()));

    let swap = Permutation::from_cycles(n, &[vec![1, 2]]).expect("valid transposition");
    let cycle = Permutation::from_cycles(n, &[(1..=n).collect()]).expect("valid cycle");
    for k in 1..=q {
        gens.push(conjugation_automorphism(oracle, &swap, k)?.perm);
        gens.push(conjugation_automorphism(oracle, &cycle, k)?.perm);
    }
    ladder.push(("with conjugations".to_string(), Bsgs::new(&gens, 42)?.order()));

    for k in 1..=q {
        gens.push(inversion(oracle, k)?.perm);
    }
    ladder.push(("with inversions".to_string(), Bsgs::new(&gens, 42)?.order()));

    if q > 1 {
        for t in 1..q {
            let transposition =
                Permutation::from_cycles(q, &[vec![t, t + 1]]).expect("valid transposition");
            gens.push(coordinate_permutation(oracle, &transposition)?.perm);
        }
        ladder.push((
            "with coordinate permutations".to_string(),
            Bsgs::new(&gens, 42)?.order(),
        ));
    }
    Ok(ladder)
}

/// The permutation a vertex map induces on the pinned-set family, by set
/// image; errors if any image leaves the family.
pub fn family_action(
    family: &[CanonicalIndepSet],
    auto: &PointPerm,
) -> Result<PointPerm, AutError> {
    let lookup: HashMap<&VertexSet, usize> = family
        .iter()
        .enumerate()
        .map(|(idx, s)| (&s.members, idx))
        .collect();
    let mut images = Vec::with_capacity(family.len());
    for set in family {
        let mut image = VertexSet::empty(set.members.universe());
        for v in set.members.iter() {
            image.insert(auto.image(v));
        }
        match lookup.get(&image) {
            Some(&idx) => images.push(idx as u32),
            None => return Err(AutError::SetImageOutsideFamily(set.coord)),
        }
    }
    Ok(PointPerm::new(images)?)
}

/// Whether the generated group acts faithfully on the pinned-set family:
/// the image group's order (Schreier–Sims on family indices) must equal the
/// vertex group's order.
#[derive(Debug, Clone)]
pub struct FaithfulActionReport {
    pub vertex_order: BigUint,
    pub family_order: BigUint,
    pub faithful: bool,
}

pub fn faithful_family_action_check(
    oracle: &TensorPowerOracle,
) -> Result<FaithfulActionReport, AutError> {
    let gens = standard_generators(oracle)?;
    let family = canonical_family(oracle)?;
    let vertex_perms: Vec<PointPerm> = gens.iter().map(|a| a.perm.clone()).collect();
    let family_perms: Vec<PointPerm> = gens
        .iter()
        .map(|a| family_action(&family, &a.perm))
        .collect::<Result<_, _>>()?;
    let vertex_order = Bsgs::new(&vertex_perms, 42)?.order();
    let family_order = Bsgs::new(&family_perms, 42)?.order();
    Ok(FaithfulActionReport {
        faithful: vertex_order == family_order,
        vertex_order,
        family_order,
    })
}

/// How one group element acts on the row/column families: rows `(k,i)`
/// collect the pinned sets with source `i` at coordinate `k`; columns
/// `(k,j)` those with target `j`.
#[derive(Debug, Clone)]
pub struct OmegaActionReport {
    pub elements_checked: usize,
    /// Every image of a row or column is again a row or column.
    pub preserves_omega: bool,
    /// Each element maps coordinate blocks by a single coordinate
    /// permutation (rows/columns of block `k` land in one block `k^σ`).
    pub block_coherent: bool,
}

/// Checks the action on rows and columns for every standard generator and
/// `samples` random elements of the generated group.
pub fn omega_action_check(
    oracle: &TensorPowerOracle,
    samples: usize,
    seed: u64,
) -> Result<OmegaActionReport, AutError> {
    let gens = standard_generators(oracle)?;
    let family = canonical_family(oracle)?;
    let n = oracle.n();
    let q = oracle.q();

    // Row/column members as sorted family-index vectors.
    let mut omega: Vec<(usize, bool, Vec<usize>)> = Vec::new(); // (k, is_row, members)
    for k in 1..=q {
        for i in 1..=n {
            let members: Vec<usize> = (1..=n)
                .map(|j| (k - 1) * n * n + (i - 1) * n + (j - 1))
                .collect();
            omega.push((k, true, members));
        }
        for j in 1..=n {
            let members: Vec<usize> = (1..=n)
                .map(|i| (k - 1) * n * n + (i - 1) * n + (j - 1))
                .collect();
            omega.push((k, false, members));
        }
    }
    let omega_lookup: HashMap<&[usize], usize> = omega
        .iter()
        .enumerate()
        .map(|(idx, (_, _, members))| (members.as_slice(), idx))
        .collect();

    let vertex_perms: Vec<PointPerm> = gens.iter().map(|a| a.perm.clone()).collect();
    let bsgs = Bsgs::new(&vertex_perms, 42)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements = vertex_perms.clone();
    for _ in 0..samples {
        elements.push(bsgs.random_element(&mut rng));
    }

    let mut preserves_omega = true;
    let mut block_coherent = true;
    for element in &elements {
        let on_family = family_action(&family, element)?;
        let mut block_map: Vec<Option<usize>> = vec![None; q + 1];
        for (k, _, members) in &omega {
            let mut image: Vec<usize> = members.iter().map(|&x| on_family.image(x)).collect();
            image.sort_unstable();
            match omega_lookup.get(image.as_slice()) {
                None => preserves_omega = false,
                Some(&idx) => {
                    let image_k = omega[idx].0;
                    match block_map[*k] {
                        None => block_map[*k] = Some(image_k),
                        Some(prev) => {
                            if prev != image_k {
                                block_coherent = false;
                            }
                        }
                    }
                }
            }
        }
        // The blocks must be hit bijectively.
        let mut seen = vec![false; q + 1];
        for slot in block_map.iter().skip(1) {
            match slot {
                Some(target) if !seen[*target] => seen[*target] = true,
                _ => block_coherent = false,
            }
        }
    }
    Ok(OmegaActionReport {
        elements_checked: elements.len(),
        preserves_omega,
        block_coherent,
    })
}

// ---------------------------------------------------------------------------
// Individualization-refinement: an independent |Aut| oracle.
// ---------------------------------------------------------------------------

/// Result of the refinement search.
#[derive(Debug, Clone)]
pub struct IrOutcome {
    pub order: BigUint,
    pub generators: Vec<PointPerm>,
    pub leaves_visited: u64,
}

struct IrSearch<'g> {
    graph: &'g ExplicitGraph,
    n: usize,
    first_leaf: Option<Vec<u32>>,
    first_invariants: Vec<Vec<u32>>,
    generators: Vec<PointPerm>,
    leaves: u64,
    nodes: u64,
}

type Cells = Vec<Vec<u32>>;

impl IrSearch<'_> {
    /// Equitable refinement: repeatedly split cells by neighbor counts into
    /// a splitter cell until stable.  Deterministic: cells keep their order,
    /// subcells are ordered by ascending count.
    fn refine(&self, mut cells: Cells) -> Cells {
        let mut queue: std::collections::VecDeque<usize> = (0..cells.len()).collect();
        let mut in_queue = vec![true; cells.len()];
        while let Some(splitter_idx) = queue.pop_front() {
            in_queue[splitter_idx] = false;
            let mut counts = vec![0u32; self.n];
            for &v in &cells[splitter_idx] {
                for &u in self.graph.neighbors(v as usize) {
                    counts[u as usize] += 1;
                }
            }
            let mut idx = 0;
            while idx < cells.len() {
                if cells[idx].len() > 1 {
                    let mut buckets: std::collections::BTreeMap<u32, Vec<u32>> =
                        std::collections::BTreeMap::new();
                    for &v in &cells[idx] {
                        buckets.entry(counts[v as usize]).or_default().push(v);
                    }
                    if buckets.len() > 1 {
                        let mut pieces: Vec<Vec<u32>> = buckets.into_values().collect();
                        cells[idx] = pieces.remove(0);
                        cells.splice(idx + 1..idx + 1, pieces);
                        // Re-derive the queue to track shifted indices.
                        queue.clear();
                        queue.extend(0..cells.len());
                        in_queue = vec![true; cells.len()];
                        break;
                    }
                }
                idx += 1;
            }
        }
        cells
    }

    fn invariant(cells: &Cells) -> Vec<u32> {
        cells.iter().map(|c| c.len() as u32).collect()
    }

    fn is_discrete(cells: &Cells) -> bool {
        cells.iter().all(|c| c.len() == 1)
    }

    fn leaf_labeling(cells: &Cells) -> Vec<u32> {
        cells.iter().map(|c| c[0]).collect()
    }

    /// Candidate map sending the first leaf's labeling to this leaf's.
    fn candidate(&self, leaf: &[u32]) -> Option<PointPerm> {
        let first = self.first_leaf.as_ref().expect("first leaf recorded");
        let mut images = vec![0u32; self.n];
        for (pos, &v0) in first.iter().enumerate() {
            images[v0 as usize] = leaf[pos];
        }
        let perm = PointPerm::new(images).ok()?;
        let preserves = self.graph.edges().all(|(u, v)| {
            self.graph
                .adjacent(perm.image(u as usize), perm.image(v as usize))
        });
        (preserves && !perm.is_identity()).then_some(perm)
    }

    /// Orbit of `w` under the discovered generators that fix `prefix`
    /// pointwise.
    fn orbit_under_prefix_stabilizer(&self, tried: &[u32], prefix: &[u32]) -> Vec<bool> {
        let mut in_orbit = vec![false; self.n];
        let fixing: Vec<&PointPerm> = self
            .generators
            .iter()
            .filter(|g| prefix.iter().all(|&p| g.image(p as usize) == p as usize))
            .collect();
        let mut stack: Vec<u32> = tried.to_vec();
        for &t in tried {
            in_orbit[t as usize] = true;
        }
        while let Some(x) = stack.pop() {
            for g in &fixing {
                let y = g.image(x as usize);
                if !in_orbit[y] {
                    in_orbit[y] = true;
                    stack.push(y as u32);
                }
            }
        }
        in_orbit
    }

    fn dfs(&mut self, cells: Cells, depth: usize, prefix: &mut Vec<u32>) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > IR_NODE_BUDGET {
            return Err(AutError::SearchBudgetExceeded(IR_NODE_BUDGET));
        }
        let invariant = Self::invariant(&cells);
        if self.first_leaf.is_none() {
            self.first_invariants.push(invariant);
        } else {
            match self.first_invariants.get(depth) {
                Some(expected) if *expected == invariant => {}
                _ => return Ok(()), // cannot match the first leaf
            }
        }

        if Self::is_discrete(&cells) {
            self.leaves += 1;
            let leaf = Self::leaf_labeling(&cells);
            if self.first_leaf.is_none() {
                self.first_leaf = Some(leaf);
            } else if let Some(perm) = self.candidate(&leaf) {
                if !self.generators.contains(&perm) {
                    self.generators.push(perm);
                }
            }
            return Ok(());
        }

        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(pos, c)| (c.len(), *pos))
            .map(|(pos, _)| pos)
            .expect("non-discrete partition has a splittable cell");

        let branch_vertices = cells[target].clone();
        let mut tried: Vec<u32> = Vec::new();
        for w in branch_vertices {
            if !tried.is_empty() {
                let orbit = self.orbit_under_prefix_stabilizer(&tried, prefix);
                if orbit[w as usize] {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (pos, cell) in cells.iter().enumerate() {
                if pos == target {
                    child.push(vec![w]);
                    child.push(cell.iter().copied().filter(|&v| v != w).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            let child = self.refine(child);
            prefix.push(w);
            self.dfs(child, depth + 1, prefix)?;
            prefix.pop();
            tried.push(w);
        }
        Ok(())
    }
}

/// Exact `|Aut(graph)|` by individualization-refinement with orbit pruning;
/// generators are found by comparing discrete refinements against the first
/// leaf, and the order is computed by Schreier–Sims.
pub fn full_automorphism_order(graph: &ExplicitGraph) -> Result<IrOutcome, AutError> {
    let n = graph.vertex_count();
    if n > IR_MAX_VERTICES {
        return Err(AutError::SearchTooLarge(n, IR_MAX_VERTICES));
    }
    // Initial partition: cells by degree, ascending.
    let mut by_degree: std::collections::BTreeMap<usize, Vec<u32>> =
        std::collections::BTreeMap::new();
    for v in 0..n {
        by_degree.entry(graph.degree(v)).or_default().push(v as u32);
    }
    let initial: Cells = by_degree.into_values().collect();

    let mut search = IrSearch {
        graph,
        n,
        first_leaf: None,
        first_invariants: Vec::new(),
        generators: Vec::new(),
        leaves: 0,
        nodes: 0,
    };
    let refined = search.refine(initial);
    search.dfs(refined, 0, &mut Vec::new())?;

    let order = if search.generators.is_empty() {
        BigUint::from(1u32)
    } else {
        Bsgs::new(&search.generators, 42)?.order()
    };
    Ok(IrOutcome {
        order,
        generators: search.generators,
        leaves_visited: search.leaves,
    })
}
