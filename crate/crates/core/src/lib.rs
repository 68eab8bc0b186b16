//! Even derangement Cayley graphs and their tensor powers, at desk scale.
//!
//! The central object is the Cayley graph on the alternating group `A_n`
//! whose connection set is the even derangements, together with its tensor
//! (categorical) powers.  The crate provides:
//!
//! - [`perm`]: permutations, cycle notation, parity, and enumeration of the
//!   small alternating groups;
//! - [`group`]: permutation images ([`PointPerm`]) and a randomized
//!   Schreier–Sims engine ([`Bsgs`]) for exact group orders and membership;
//! - [`graph`]: explicit graphs, the [`TensorPowerOracle`] for adjacency
//!   without materialization, and BFS-based structure checks;
//! - [`spectral`]: dense Jacobi eigendecomposition, exact ratio-bound
//!   certificates, and tensor spectrum assembly;
//! - [`extremal`]: maximum independent sets and cliques (branch and bound),
//!   the pinned-set family, intersection profiles, cover scans, and
//!   eigenspace membership certificates;
//! - [`autgroup`]: named automorphisms, generated-group orders, actions on
//!   the pinned family, and an independent individualization-refinement
//!   `|Aut|` oracle.
//!
//! # Conventions
//!
//! Permutations act on points **on the right**: `i^(pq) = (i^p)^q`, so
//! [`Permutation::compose`] applies `self` first.  Points are `1`-based in
//! [`perm`] and `0`-based in [`group`] and in vertex indices.  Two vertices
//! `u, v` of a Cayley graph are adjacent iff `v·u⁻¹` lies in the connection
//! set; tuples are adjacent in a tensor power iff they are adjacent in
//! every coordinate.  Tuple indices are mixed-radix with the first
//! coordinate most significant, so the identity tuple is index `0`.

pub mod autgroup;
pub mod bitset;
pub mod extremal;
pub mod graph;
pub mod group;
pub mod perm;
pub mod spectral;

pub use autgroup::NamedAutomorphism;
pub use bitset::VertexSet;
pub use extremal::{CanonicalIndepSet, Coloring, SetCoordinate};
pub use graph::{CayleyGraphSpec, ExplicitGraph, GroupVertex, TensorPowerOracle};
pub use group::{Bsgs, PointPerm};
pub use perm::{AlternatingGroup, ElementIndex, Permutation};
pub use spectral::{DenseSymMatrix, Spectrum};
