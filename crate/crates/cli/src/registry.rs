//! The claim registry: every check the verifier can run, instantiated for
//! the requested `(n, q)` grid.
//!
//! Claims carry pinned expected values where an instance has one (frozen by
//! independent derivations and the test suite); exploratory instances are
//! registered as informational so their computed values are reported
//! without a pass criterion.  Guard- or budget-limited checks surface as
//! skipped records, never silently dropped.

use serde_json::{json, Value};

use altgraph_core::autgroup::{
    claimed_group_order, faithful_family_action_check, full_automorphism_order,
    generated_order_check, inversion, omega_action_check, order_ladder, right_translation,
    standard_generators,
};
use altgraph_core::extremal::{
    bipartite_neighborhood_expansion, canonical_family, color_by_first_image, cover_scan,
    cycle_power_clique, diagonal_embedding_check, eigenspace_certificate, intersection_profile,
    is_independent_set, is_maximal_independent, maximum_independent_sets, clique_number,
    stabilizer_split_report, tensor_square_eigenspace_certificate,
};
use altgraph_core::graph::{
    bipartite_circulant, common_neighbor_report, components_are_connection_closure_cosets,
    product_decomposition_check, validate_odd_cycle, Bipartiteness, GroupVertex,
};
use altgraph_core::perm::Permutation;
use altgraph_core::spectral::{ratio_tightness_certificate, tensor_spectrum, INTEGER_SNAP_TOL};

use crate::claims::{ClaimOutcome, ClaimSpec};
use crate::config::{RunConfig, Suite};
use crate::context::ContextError;

/// Connection-set size by base degree.
pub fn connection_size(n: usize) -> usize {
    match n {
        3 => 2,
        4 => 3,
        5 => 24,
        6 => 130,
        _ => unreachable!("degree outside supported range"),
    }
}

/// Independence number of the base graph by degree.
pub fn base_alpha(n: usize) -> usize {
    match n {
        3 => 1,
        4 => 3,
        5 => 12,
        6 => 60,
        _ => unreachable!("degree outside supported range"),
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `(n!/2)^q`: the vertex count.
fn vertex_count(n: usize, q: usize) -> u64 {
    (factorial(n) / 2).pow(q as u32)
}

/// The pinned-set size `(n!/2n)·(n!/2)^{q−1}`.
fn pinned_set_size(n: usize, q: usize) -> u64 {
    (factorial(n) / (2 * n as u64)) * (factorial(n) / 2).pow(q as u32 - 1)
}

/// Expected component count, where pinned.
fn expected_components(n: usize, q: usize) -> Option<usize> {
    match (n, q) {
        (3, 1) | (5, 1) | (6, 1) | (3, 2) | (5, 2) => Some(1),
        (4, 1) => Some(3),
        (4, 2) => Some(9),
        _ => None,
    }
}

fn expected_diameter(n: usize, q: usize) -> Option<usize> {
    match (n, q) {
        (3, 1) => Some(1),
        (5, 1) | (6, 1) | (5, 2) => Some(2),
        _ => None,
    }
}

/// Full integer spectra of the base graphs.
fn base_spectrum_table(n: usize) -> Vec<(i64, usize)> {
    match n {
        3 => vec![(2, 1), (-1, 2)],
        4 => vec![(3, 3), (-1, 9)],
        5 => vec![(24, 1), (4, 18), (0, 25), (-6, 16)],
        6 => vec![
            (130, 1),
            (10, 81),
            (4, 100),
            (-2, 25),
            (-5, 128),
            (-26, 25),
        ],
        _ => unreachable!("degree outside supported range"),
    }
}

fn ctx_outcome(err: ContextError) -> ClaimOutcome {
    match err {
        ContextError::Guard(msg) => ClaimOutcome::skipped(msg),
        ContextError::Failure(msg) => ClaimOutcome::error(msg),
    }
}

/// Fetches the materialized graph or returns the corresponding outcome.
macro_rules! try_graph {
    ($ctx:expr, $n:expr, $q:expr) => {
        match $ctx.graph($n, $q) {
            Ok(graph) => graph,
            Err(err) => return ctx_outcome(err),
        }
    };
}

macro_rules! try_oracle {
    ($ctx:expr, $n:expr, $q:expr) => {
        match $ctx.oracle($n, $q) {
            Ok(oracle) => oracle,
            Err(err) => return ctx_outcome(err),
        }
    };
}

macro_rules! try_spectrum {
    ($ctx:expr, $n:expr, $q:expr) => {
        match $ctx.spectrum($n, $q) {
            Ok(spectrum) => spectrum,
            Err(err) => return ctx_outcome(err),
        }
    };
}

/// Builds every claim the configuration selects, in deterministic order.
pub fn registry(config: &RunConfig) -> Vec<ClaimSpec> {
    let mut out = Vec::new();
    if config.wants(Suite::Structure) {
        structure_claims(config, &mut out);
    }
    if config.wants(Suite::Spectra) {
        spectra_claims(config, &mut out);
    }
    if config.wants(Suite::Extremal) {
        extremal_claims(config, &mut out);
    }
    if config.wants(Suite::Aut) {
        aut_claims(config, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// structure
// ---------------------------------------------------------------------------

fn structure_claims(config: &RunConfig, out: &mut Vec<ClaimSpec>) {
    for (n, q) in config.instances() {
        if q == 1 {
            out.push(ClaimSpec::new(
                format!("connection_set_size_n{n}"),
                format!(
                    "the even derangements of degree {n} number exactly {}",
                    connection_size(n)
                ),
                Suite::Structure,
                1,
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, 1);
                    ClaimOutcome::exact(
                        json!(oracle.connection_size()),
                        json!(connection_size(n)),
                    )
                },
            ));
        }

        out.push(ClaimSpec::new(
            format!("vertex_count_and_degree_n{n}_q{q}"),
            format!(
                "the power-{q} graph on degree-{n} even permutations has \
                 (n!/2)^q vertices and is e(n)^q-regular"
            ),
            Suite::Structure,
            1,
            move |ctx| {
                let oracle = try_oracle!(ctx, n, q);
                ClaimOutcome::exact(
                    json!({
                        "vertices": oracle.vertex_count(),
                        "degree": oracle.degree(),
                    }),
                    json!({
                        "vertices": vertex_count(n, q),
                        "degree": (connection_size(n) as u64).pow(q as u32),
                    }),
                )
            },
        ));

        out.push(ClaimSpec::new(
            format!("connectivity_n{n}_q{q}"),
            match expected_components(n, q) {
                Some(1) => format!("the (n={n}, q={q}) graph is connected"),
                Some(c) => format!("the (n={n}, q={q}) graph has exactly {c} components"),
                None => format!("component count of the (n={n}, q={q}) graph (reported)"),
            },
            Suite::Structure,
            if (n, q) == (5, 2) { 10 } else { 2 },
            move |ctx| {
                let graph = try_graph!(ctx, n, q);
                let components = graph.connected_components();
                let computed = json!({ "components": components.len() });
                match expected_components(n, q) {
                    Some(c) => ClaimOutcome::exact(computed, json!({ "components": c })),
                    None => ClaimOutcome::informational(computed, Value::Null),
                }
            },
        ));

        if (n, q) == (4, 1) {
            out.push(ClaimSpec::new(
                "components_complete_n4_q1",
                "each of the 3 components of the degree-4 base graph is an \
                 induced complete graph on 4 vertices",
                Suite::Structure,
                1,
                move |ctx| {
                    let graph = try_graph!(ctx, 4, 1);
                    let components = graph.connected_components();
                    let all_complete = components.iter().all(|c| {
                        c.len() == 4
                            && c.iter().all(|&u| {
                                c.iter()
                                    .all(|&v| u == v || graph.adjacent(u as usize, v as usize))
                            })
                    });
                    ClaimOutcome::exact(
                        json!({
                            "components": components.len(),
                            "each_induced_complete_on_4": all_complete,
                        }),
                        json!({ "components": 3, "each_induced_complete_on_4": true }),
                    )
                },
            ));

            out.push(ClaimSpec::new(
                "components_are_cosets_n4_q1",
                "the components of the degree-4 base graph are exactly the \
                 right cosets of the subgroup generated by the connection set",
                Suite::Structure,
                1,
                move |_ctx| match components_are_connection_closure_cosets(4) {
                    Ok(flag) => ClaimOutcome::exact(json!(flag), json!(true)),
                    Err(err) => ClaimOutcome::error(err.to_string()),
                },
            ));
        }

        out.push(ClaimSpec::new(
            format!("odd_cycle_witness_n{n}_q{q}"),
            format!(
                "the (n={n}, q={q}) graph is not bipartite, witnessed by an \
                 explicit validated odd cycle"
            ),
            Suite::Structure,
            if (n, q) == (5, 2) { 10 } else { 2 },
            move |ctx| {
                let graph = try_graph!(ctx, n, q);
                match graph.bipartiteness() {
                    Bipartiteness::OddCycle(cycle) => {
                        let valid = validate_odd_cycle(&graph, &cycle);
                        ClaimOutcome::verdict(
                            valid,
                            json!({
                                "bipartite": false,
                                "witness_length": cycle.len(),
                                "witness_valid": valid,
                            }),
                            json!({ "bipartite": false, "witness_valid": true }),
                        )
                    }
                    Bipartiteness::Bipartite(_, _) => ClaimOutcome::verdict(
                        false,
                        json!({ "bipartite": true }),
                        json!({ "bipartite": false, "witness_valid": true }),
                    ),
                }
            },
        ));

        let connected = expected_components(n, q) == Some(1);
        if connected {
            out.push(ClaimSpec::new(
                format!("diameter_n{n}_q{q}"),
                match expected_diameter(n, q) {
                    Some(d) => format!(
                        "the (n={n}, q={q}) graph has diameter {d} \
                         (single-source eccentricity; the graph is vertex-transitive)"
                    ),
                    None => {
                        format!("diameter of the (n={n}, q={q}) graph (reported)")
                    }
                },
                Suite::Structure,
                if (n, q) == (5, 2) { 10 } else { 2 },
                move |ctx| {
                    let graph = try_graph!(ctx, n, q);
                    let diameter = match graph.diameter_vertex_transitive() {
                        Ok(d) => d,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    match expected_diameter(n, q) {
                        Some(d) => ClaimOutcome::exact(json!(diameter), json!(d)),
                        None => ClaimOutcome::informational(json!(diameter), Value::Null),
                    }
                },
            ));
        }

        if q == 1 && (n == 5 || n == 6) {
            out.push(ClaimSpec::new(
                format!("common_neighbors_n{n}_q1"),
                format!(
                    "every pair of distinct vertices of the degree-{n} base \
                     graph has a common neighbor (diameter ≤ 2 directly)"
                ),
                Suite::Structure,
                5,
                move |ctx| {
                    let graph = try_graph!(ctx, n, 1);
                    let report = common_neighbor_report(&graph);
                    ClaimOutcome::exact(
                        json!({
                            "pairs_checked": report.pairs_checked,
                            "pairs_without_common_neighbor": report.failures.len(),
                        }),
                        json!({
                            "pairs_checked": report.pairs_checked,
                            "pairs_without_common_neighbor": 0,
                        }),
                    )
                },
            ));
        }

        if q == 1 {
            let expected_decomposition = n != 4;
            out.push(ClaimSpec::new(
                format!("product_decomposition_n{n}"),
                format!(
                    "whether every even permutation of degree {n} is a \
                     product of two even derangements"
                ),
                Suite::Structure,
                2,
                move |_ctx| match product_decomposition_check(n) {
                    Ok(flag) => {
                        ClaimOutcome::exact(json!(flag), json!(expected_decomposition))
                    }
                    Err(err) => ClaimOutcome::error(err.to_string()),
                },
            ));
        }
    }
}

// ---------------------------------------------------------------------------
// spectra
// ---------------------------------------------------------------------------

/// Integer-grouped tensor spectrum from a base integer spectrum.
fn tensor_integer_spectrum(base: &[(i64, usize)], q: usize) -> Vec<(i64, usize)> {
    let float: Vec<(f64, usize)> = base.iter().map(|&(v, m)| (v as f64, m)).collect();
    tensor_spectrum(&float, q, 0.5)
        .into_iter()
        .map(|(v, m)| (v.round() as i64, m))
        .collect()
}

fn spectra_claims(config: &RunConfig, out: &mut Vec<ClaimSpec>) {
    for (n, q) in config.instances() {
        if q == 1 {
            out.push(ClaimSpec::new(
                format!("spectrum_n{n}_q1"),
                format!(
                    "the full adjacency spectrum of the degree-{n} base graph \
                     is integral with the pinned eigenvalue multiplicities"
                ),
                Suite::Spectra,
                if n == 6 { 30 } else { 2 },
                move |ctx| {
                    let spectrum = try_spectrum!(ctx, n, 1);
                    match spectrum.integer_grouped(1e-6) {
                        Ok(grouped) => ClaimOutcome::exact(
                            json!(grouped),
                            json!(base_spectrum_table(n)),
                        ),
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            ));
        }

        out.push(ClaimSpec::new(
            format!("least_eigenvalue_n{n}_q{q}"),
            format!(
                "the least eigenvalue of the (n={n}, q={q}) graph matches \
                 the pinned value within 1e-6"
            ),
            Suite::Spectra,
            if n == 6 { 30 } else { 2 },
            move |ctx| {
                let base_table = base_spectrum_table(n);
                let expected_pair = {
                    let full = tensor_integer_spectrum(&base_table, q);
                    *full.iter().min_by_key(|&&(v, _)| v).expect("non-empty")
                };
                if q == 1 {
                    let spectrum = try_spectrum!(ctx, n, 1);
                    let least = spectrum.least();
                    let mult = spectrum.least_multiplicity(1e-6);
                    let ok = (least - expected_pair.0 as f64).abs() <= 1e-6
                        && mult == expected_pair.1;
                    ClaimOutcome::verdict(
                        ok,
                        json!({ "least": least, "multiplicity": mult }),
                        json!({ "least": expected_pair.0, "multiplicity": expected_pair.1 }),
                    )
                } else {
                    // Assemble the tensor spectrum from the verified base
                    // spectrum rather than decomposing a large matrix.
                    let spectrum = try_spectrum!(ctx, n, 1);
                    let grouped = match spectrum.integer_grouped(1e-6) {
                        Ok(g) => g,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let full = tensor_integer_spectrum(&grouped, q);
                    let least = *full.iter().min_by_key(|&&(v, _)| v).expect("non-empty");
                    ClaimOutcome::exact(
                        json!({ "least": least.0, "multiplicity": least.1 }),
                        json!({ "least": expected_pair.0, "multiplicity": expected_pair.1 }),
                    )
                }
            },
        ));

        out.push(ClaimSpec::new(
            format!("ratio_bound_n{n}_q{q}"),
            format!(
                "the spectral ratio bound for the (n={n}, q={q}) graph is \
                 attained exactly by the pinned-set size (integer arithmetic)"
            ),
            Suite::Spectra,
            if n == 6 { 30 } else { 2 },
            move |ctx| {
                // α(n,q) = α(n,1)·(n!/2)^{q−1}: the pinned-set size.
                let alpha = base_alpha(n) as u64 * vertex_count(n, q - 1);
                let vertices = vertex_count(n, q);
                let degree = (connection_size(n) as u64).pow(q as u32);
                let least = if q == 1 {
                    let spectrum = try_spectrum!(ctx, n, 1);
                    spectrum.least()
                } else {
                    let spectrum = try_spectrum!(ctx, n, 1);
                    let grouped = match spectrum.integer_grouped(1e-6) {
                        Ok(g) => g,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let full = tensor_integer_spectrum(&grouped, q);
                    full.iter().map(|&(v, _)| v).min().expect("non-empty") as f64
                };
                match ratio_tightness_certificate(
                    alpha,
                    vertices,
                    degree,
                    least,
                    INTEGER_SNAP_TOL,
                ) {
                    Ok(tight) => ClaimOutcome::exact(
                        json!({ "bound_attained_by": alpha, "tight": tight }),
                        json!({ "bound_attained_by": alpha, "tight": true }),
                    ),
                    Err(err) => ClaimOutcome::error(err.to_string()),
                }
            },
        ));

        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "tensor_spectrum_n5_q2",
                "the tensor-square spectrum assembled from the degree-5 base \
                 spectrum has top eigenvalue 576, least −144 with \
                 multiplicity 32, and 2375 zero eigenvalues over 3600 total",
                Suite::Spectra,
                2,
                move |ctx| {
                    let spectrum = try_spectrum!(ctx, 5, 1);
                    let grouped = match spectrum.integer_grouped(1e-6) {
                        Ok(g) => g,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let full = tensor_integer_spectrum(&grouped, 2);
                    let total: usize = full.iter().map(|&(_, m)| m).sum();
                    let top = *full.iter().max_by_key(|&&(v, _)| v).expect("non-empty");
                    let least = *full.iter().min_by_key(|&&(v, _)| v).expect("non-empty");
                    let zero = full
                        .iter()
                        .find(|&&(v, _)| v == 0)
                        .map(|&(_, m)| m)
                        .unwrap_or(0);
                    ClaimOutcome::exact(
                        json!({
                            "top": top, "least": least, "zero_multiplicity": zero,
                            "total": total,
                        }),
                        json!({
                            "top": [576, 1], "least": [-144, 32],
                            "zero_multiplicity": 2375, "total": 3600,
                        }),
                    )
                },
            ));
        }

        out.push(ClaimSpec::new(
            format!("trace_energy_n{n}_q{q}"),
            format!(
                "eigenvalue sum is 0 and eigenvalue square sum equals twice \
                 the edge count for the (n={n}, q={q}) graph"
            ),
            Suite::Spectra,
            if n == 6 { 30 } else { 2 },
            move |ctx| {
                if q == 1 || vertex_count(n, q) <= 200 {
                    let graph = try_graph!(ctx, n, q);
                    let spectrum = try_spectrum!(ctx, n, q);
                    let dim = spectrum.dim() as f64;
                    let trace_ok = spectrum.trace().abs() <= 1e-8 * dim;
                    let energy = spectrum.energy();
                    let expected_energy = 2.0 * graph.edge_count() as f64;
                    let energy_ok = (energy - expected_energy).abs() <= 1e-7 * dim * dim;
                    ClaimOutcome::verdict(
                        trace_ok && energy_ok,
                        json!({ "trace": spectrum.trace(), "energy": energy }),
                        json!({ "trace": 0, "energy": expected_energy }),
                    )
                } else {
                    // Large powers: exact integer arithmetic on the
                    // assembled tensor spectrum.
                    let base = base_spectrum_table(n);
                    let full = tensor_integer_spectrum(&base, q);
                    let trace: i64 = full.iter().map(|&(v, m)| v * m as i64).sum();
                    let energy: i64 = full.iter().map(|&(v, m)| v * v * m as i64).sum();
                    let vertices = vertex_count(n, q) as i64;
                    let degree = (connection_size(n) as i64).pow(q as u32);
                    ClaimOutcome::exact(
                        json!({ "trace": trace, "energy": energy }),
                        json!({ "trace": 0, "energy": vertices * degree }),
                    )
                }
            },
        ));
    }
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

fn extremal_claims(config: &RunConfig, out: &mut Vec<ClaimSpec>) {
    for (n, q) in config.instances() {
        if q == 1 {
            let stretch_needed = n == 6;
            let expected_alpha = base_alpha(n);
            let spec = ClaimSpec::new(
                format!("alpha_n{n}_q1"),
                format!(
                    "exact search gives independence number {expected_alpha} \
                     for the degree-{n} base graph"
                ),
                Suite::Extremal,
                if n == 6 { 30 } else { 5 },
                move |ctx| {
                    let graph = try_graph!(ctx, n, 1);
                    match maximum_independent_sets(&graph) {
                        Ok(outcome) => {
                            ClaimOutcome::exact(json!(outcome.alpha), json!(expected_alpha))
                        }
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            );
            out.push(if stretch_needed { spec.stretch() } else { spec });

            if n >= 5 {
                let expected_count = n * n;
                let spec = ClaimSpec::new(
                    format!("mis_family_uniqueness_n{n}_q1"),
                    format!(
                        "the degree-{n} base graph has exactly {expected_count} \
                         maximum independent sets and they are precisely the \
                         pinned sets"
                    ),
                    Suite::Extremal,
                    if n == 6 { 30 } else { 5 },
                    move |ctx| {
                        let graph = try_graph!(ctx, n, 1);
                        let oracle = try_oracle!(ctx, n, 1);
                        let outcome = match maximum_independent_sets(&graph) {
                            Ok(o) => o,
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        };
                        let family = match canonical_family(&oracle) {
                            Ok(f) => f,
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        };
                        let mut family_sets: Vec<Vec<usize>> =
                            family.iter().map(|s| s.members.to_indices()).collect();
                        family_sets.sort();
                        let mut found: Vec<Vec<usize>> =
                            outcome.sets.iter().map(|s| s.to_indices()).collect();
                        found.sort();
                        ClaimOutcome::verdict(
                            found == family_sets,
                            json!({
                                "maximum_sets": outcome.sets.len(),
                                "equal_to_pinned_family": found == family_sets,
                            }),
                            json!({
                                "maximum_sets": expected_count,
                                "equal_to_pinned_family": true,
                            }),
                        )
                    },
                );
                out.push(if stretch_needed { spec.stretch() } else { spec });
            }

            if n == 4 {
                out.push(ClaimSpec::new(
                    "mis_family_not_unique_n4_q1",
                    "at degree 4 the pinned sets are maximum independent \
                     sets but not the only ones (64 in total)",
                    Suite::Extremal,
                    5,
                    move |ctx| {
                        let graph = try_graph!(ctx, 4, 1);
                        let oracle = try_oracle!(ctx, 4, 1);
                        let outcome = match maximum_independent_sets(&graph) {
                            Ok(o) => o,
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        };
                        let family = match canonical_family(&oracle) {
                            Ok(f) => f,
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        };
                        let found: Vec<Vec<usize>> =
                            outcome.sets.iter().map(|s| s.to_indices()).collect();
                        let family_all_maximum = family
                            .iter()
                            .all(|s| found.contains(&s.members.to_indices()));
                        ClaimOutcome::exact(
                            json!({
                                "alpha": outcome.alpha,
                                "maximum_sets": outcome.sets.len(),
                                "pinned_family_all_maximum": family_all_maximum,
                            }),
                            json!({
                                "alpha": 3,
                                "maximum_sets": 64,
                                "pinned_family_all_maximum": true,
                            }),
                        )
                    },
                ));
            }
        }

        if q == 2 && n == 5 {
            out.push(ClaimSpec::new(
                "alpha_n5_q2",
                "the tensor square of the degree-5 base graph has \
                 independence number 720, certified by the product formula \
                 and exact ratio-bound tightness (no enumeration at 3600 \
                 vertices)",
                Suite::Extremal,
                10,
                move |ctx| {
                    let spectrum = try_spectrum!(ctx, 5, 1);
                    let grouped = match spectrum.integer_grouped(1e-6) {
                        Ok(g) => g,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let full = tensor_integer_spectrum(&grouped, 2);
                    let least = full.iter().map(|&(v, _)| v).min().expect("non-empty");
                    let formula = (base_alpha(5) * 60) as u64;
                    let tight = match ratio_tightness_certificate(
                        formula,
                        3600,
                        576,
                        least as f64,
                        INTEGER_SNAP_TOL,
                    ) {
                        Ok(t) => t,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    ClaimOutcome::verdict(
                        tight && formula == 720,
                        json!({
                            "alpha": formula,
                            "tensor_least_eigenvalue": least,
                            "ratio_bound_tight": tight,
                        }),
                        json!({
                            "alpha": 720,
                            "tensor_least_eigenvalue": -144,
                            "ratio_bound_tight": true,
                        }),
                    )
                },
            ));
        }

        // Pinned-family soundness: independent, maximal, of the pinned size.
        // At (6, 2) the materialization guard turns this into a skip.
        {
            let set_size = pinned_set_size(n, q);
            let family_count = q * n * n;
            out.push(ClaimSpec::new(
                format!("family_independent_maximal_n{n}_q{q}"),
                format!(
                    "all {family_count} pinned sets of the (n={n}, q={q}) \
                     graph are independent, maximal, and of size {set_size}"
                ),
                Suite::Extremal,
                if (n, q) == (5, 2) { 30 } else { 5 },
                move |ctx| {
                    let graph = try_graph!(ctx, n, q);
                    let oracle = try_oracle!(ctx, n, q);
                    let family = match canonical_family(&oracle) {
                        Ok(f) => f,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let mut independent = 0usize;
                    let mut maximal = 0usize;
                    let mut sized = 0usize;
                    for set in &family {
                        if is_independent_set(&graph, &set.members) {
                            independent += 1;
                        }
                        if is_maximal_independent(&graph, &set.members) {
                            maximal += 1;
                        }
                        if set.members.len() as u64 == set_size {
                            sized += 1;
                        }
                    }
                    ClaimOutcome::exact(
                        json!({
                            "sets": family.len(),
                            "independent": independent,
                            "maximal": maximal,
                            "of_pinned_size": sized,
                        }),
                        json!({
                            "sets": family_count,
                            "independent": family_count,
                            "maximal": family_count,
                            "of_pinned_size": family_count,
                        }),
                    )
                },
            ));
        }

        // Eigenspace certificates for the pinned family.
        if (n, q) == (5, 1) {
            out.push(ClaimSpec::new(
                "family_eigenspace_certificate_n5_q1",
                "the centered indicator of each of the 25 pinned sets lies \
                 in the least-eigenvalue eigenspace (ratio-bound equality \
                 structure)",
                Suite::Extremal,
                5,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 1);
                    let spectrum = try_spectrum!(ctx, 5, 1);
                    let family = match canonical_family(&oracle) {
                        Ok(f) => f,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let mut passing = 0usize;
                    for set in &family {
                        match eigenspace_certificate(&set.members, &spectrum, 1e-6) {
                            Ok(true) => passing += 1,
                            Ok(false) => {}
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        }
                    }
                    ClaimOutcome::exact(json!(passing), json!(25))
                },
            ));
        }
        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "family_eigenspace_certificate_n5_q2",
                "the centered indicator of each of the 50 pinned sets of \
                 the tensor square lies in the least-eigenvalue product \
                 eigenspace (certificate route to uniqueness)",
                Suite::Extremal,
                60,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 2);
                    let base = try_spectrum!(ctx, 5, 1);
                    let family = match canonical_family(&oracle) {
                        Ok(f) => f,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let mut passing = 0usize;
                    for set in &family {
                        match tensor_square_eigenspace_certificate(&set.members, &base, 1e-6)
                        {
                            Ok(true) => passing += 1,
                            Ok(false) => {}
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        }
                    }
                    ClaimOutcome::exact(json!(passing), json!(50))
                },
            ));
        }

        // Clique and chromatic numbers.
        if (n, q) == (5, 1) {
            out.push(ClaimSpec::new(
                "clique_chromatic_n5_q1",
                "the degree-5 base graph has clique number 5 (exact search) \
                 and chromatic number 5 (proper 5-coloring by first image \
                 meets the |V|/α lower bound)",
                Suite::Extremal,
                10,
                move |ctx| {
                    let graph = try_graph!(ctx, 5, 1);
                    let oracle = try_oracle!(ctx, 5, 1);
                    let omega = match clique_number(&graph) {
                        Ok(w) => w,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let coloring = color_by_first_image(&oracle);
                    let proper = coloring.is_proper(&graph);
                    let palette = coloring.palette_size();
                    let lower = graph.vertex_count() / base_alpha(5);
                    ClaimOutcome::exact(
                        json!({
                            "omega": omega,
                            "proper_coloring": proper,
                            "palette": palette,
                            "chromatic_lower_bound": lower,
                        }),
                        json!({
                            "omega": 5,
                            "proper_coloring": true,
                            "palette": 5,
                            "chromatic_lower_bound": 5,
                        }),
                    )
                },
            ));
        }
        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "clique_chromatic_n5_q2",
                "the tensor square keeps clique and chromatic number 5: the \
                 diagonal cycle-power clique, a proper 5-coloring, and the \
                 α·ω = |V| identity",
                Suite::Extremal,
                10,
                move |ctx| {
                    let graph = try_graph!(ctx, 5, 2);
                    let oracle = try_oracle!(ctx, 5, 2);
                    let clique = match cycle_power_clique(&oracle) {
                        Ok(c) => c,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let members = clique.to_indices();
                    let is_clique = members.iter().all(|&u| {
                        members
                            .iter()
                            .all(|&v| u == v || graph.adjacent(u, v))
                    });
                    let coloring = color_by_first_image(&oracle);
                    let proper = coloring.is_proper(&graph);
                    let identity = 720 * 5 == graph.vertex_count();
                    ClaimOutcome::exact(
                        json!({
                            "clique_size": members.len(),
                            "is_clique": is_clique,
                            "proper_coloring": proper,
                            "palette": coloring.palette_size(),
                            "alpha_times_omega_is_vertex_count": identity,
                        }),
                        json!({
                            "clique_size": 5,
                            "is_clique": true,
                            "proper_coloring": true,
                            "palette": 5,
                            "alpha_times_omega_is_vertex_count": true,
                        }),
                    )
                },
            ));
        }

        // Intersection profiles.
        let profile_expectation: Option<Value> = match (n, q) {
            (5, 1) => Some(json!({
                "same_set": 12, "same_coordinate_same_source": 0,
                "same_coordinate_same_target": 0, "same_coordinate_distinct": 3,
                "cross_coordinate": null, "uniform": true,
            })),
            (6, 1) => Some(json!({
                "same_set": 60, "same_coordinate_same_source": 0,
                "same_coordinate_same_target": 0, "same_coordinate_distinct": 12,
                "cross_coordinate": null, "uniform": true,
            })),
            (5, 2) => Some(json!({
                "same_set": 720, "same_coordinate_same_source": 0,
                "same_coordinate_same_target": 0, "same_coordinate_distinct": 180,
                "cross_coordinate": 144, "uniform": true,
            })),
            _ => None,
        };
        if let Some(expected) = profile_expectation {
            out.push(ClaimSpec::new(
                format!("intersection_profile_n{n}_q{q}"),
                format!(
                    "pairwise intersection sizes of the pinned family at \
                     (n={n}, q={q}) are uniform per case and match the \
                     formula values"
                ),
                Suite::Extremal,
                if (n, q) == (5, 2) { 30 } else { 5 },
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, q);
                    match intersection_profile(&oracle) {
                        Ok(profile) => {
                            let computed =
                                serde_json::to_value(profile).expect("serializable profile");
                            ClaimOutcome::exact(computed, expected.clone())
                        }
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            ));
        }
        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "intersection_distinct_case_note_n5_q2",
                "the same-coordinate distinct-cell intersection size at \
                 (n=5, q=2) computes to 180, the value of the closed form \
                 (n−2)!·(n!)^(q−1)/2^q; the previously reported value 720 \
                 does not match and is recorded here for transparency",
                Suite::Extremal,
                30,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 2);
                    match intersection_profile(&oracle) {
                        Ok(profile) => ClaimOutcome::informational(
                            json!({ "computed": profile.same_coordinate_distinct }),
                            json!({ "previously_reported": 720 }),
                        ),
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            ));
        }

        // Cover scans.
        let cover_expectation = match (n, q) {
            (5, 1) => Some(10usize),
            (6, 1) => Some(12),
            (5, 2) => Some(20),
            (6, 2) => None, // guard: C(72,6) exceeds the scan cap
            _ => None,
        };
        if matches!((n, q), (5, 1) | (6, 1) | (5, 2) | (6, 2)) {
            out.push(ClaimSpec::new(
                format!("cover_characterization_n{n}_q{q}"),
                match cover_expectation {
                    Some(c) => format!(
                        "exactly {c} of the n-subsets of the pinned family \
                         cover all vertices, and they are precisely the row \
                         and column families"
                    ),
                    None => format!(
                        "cover scan at (n={n}, q={q}) (expected to exceed \
                         the combination guard)"
                    ),
                },
                Suite::Extremal,
                if (n, q) == (5, 2) || (n, q) == (6, 1) { 60 } else { 5 },
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, q);
                    match cover_scan(&oracle) {
                        Ok(report) => match cover_expectation {
                            Some(c) => ClaimOutcome::exact(
                                json!({
                                    "covers": report.covers.len(),
                                    "rows_and_columns_only": report.rows_and_columns_only,
                                    "combinations_checked": report.combinations_checked,
                                }),
                                json!({
                                    "covers": c,
                                    "rows_and_columns_only": true,
                                    "combinations_checked": report.combinations_checked,
                                }),
                            ),
                            None => ClaimOutcome::error(
                                "cover scan unexpectedly ran past its guard".to_string(),
                            ),
                        },
                        Err(err) => match cover_expectation {
                            Some(_) => ClaimOutcome::error(err.to_string()),
                            None => ClaimOutcome::skipped(err.to_string()),
                        },
                    }
                },
            ));
        }

        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "diagonal_embedding_n5",
                "the diagonal map into the tensor square is an edge \
                 homomorphism, preserves the independence ratio exactly, \
                 and pulls the pinned set back to its base counterpart",
                Suite::Extremal,
                10,
                move |_ctx| match diagonal_embedding_check(5, 12, 720) {
                    Ok(report) => ClaimOutcome::verdict(
                        report.all_pass(),
                        json!({
                            "edges_checked": report.edges_checked,
                            "homomorphism": report.homomorphism,
                            "ratio_equality": report.ratio_equality,
                            "preimage_is_base_set": report.preimage_is_base_set,
                        }),
                        json!({
                            "homomorphism": true,
                            "ratio_equality": true,
                            "preimage_is_base_set": true,
                        }),
                    ),
                    Err(err) => ClaimOutcome::error(err.to_string()),
                },
            ));

            out.push(ClaimSpec::new(
                "stabilizer_split_n5_q2",
                "tuples fixing a point in both coordinates number 144; \
                 those fixing it in exactly one coordinate form two \
                 independent 576-vertex parts inducing a biregular \
                 bipartite graph",
                Suite::Extremal,
                10,
                move |_ctx| match stabilizer_split_report(5) {
                    Ok(report) => ClaimOutcome::exact(
                        json!({
                            "both_fixed": report.both_fixed,
                            "first_only": report.first_only,
                            "second_only": report.second_only,
                            "parts_independent": report.parts_independent,
                            "biregular_degrees": report.biregular_degrees,
                        }),
                        json!({
                            "both_fixed": 144,
                            "first_only": 576,
                            "second_only": 576,
                            "parts_independent": true,
                            "biregular_degrees": [144, 144],
                        }),
                    ),
                    Err(err) => ClaimOutcome::error(err.to_string()),
                },
            ));

            out.push(ClaimSpec::new(
                "stabilizer_split_connectivity_n5_q2",
                "whether the bipartite graph induced on the two \
                 single-coordinate parts is connected; proven only for \
                 degrees 7 and up, so the degree-5 observation is recorded \
                 without a pass criterion",
                Suite::Extremal,
                10,
                move |_ctx| match stabilizer_split_report(5) {
                    Ok(report) => ClaimOutcome::informational(
                        json!({ "connected": report.connected }),
                        Value::Null,
                    ),
                    Err(err) => ClaimOutcome::error(err.to_string()),
                },
            ));
        }
    }

    // Instance-independent fixture sweep.
    out.push(ClaimSpec::new(
        "bipartite_expansion_exhaustive",
        "every connected regular bipartite circulant with equal parts of \
         size at most 6 strictly expands all proper subsets of one part",
        Suite::Extremal,
        10,
        move |_ctx| {
            let mut fixtures = 0usize;
            for m in 2usize..=6 {
                let diff_sets = all_difference_sets(m);
                for diffs in diff_sets {
                    let graph = bipartite_circulant(m, &diffs);
                    if !graph.is_connected() {
                        continue;
                    }
                    fixtures += 1;
                    match bipartite_neighborhood_expansion(&graph) {
                        Ok(true) => {}
                        Ok(false) => {
                            return ClaimOutcome::verdict(
                                false,
                                json!({
                                    "fixtures": fixtures,
                                    "counterexample_part": m,
                                    "diffs": diffs,
                                }),
                                json!({ "all_expanding": true }),
                            )
                        }
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    }
                }
            }
            ClaimOutcome::verdict(
                fixtures > 0,
                json!({ "fixtures": fixtures, "all_expanding": true }),
                json!({ "all_expanding": true }),
            )
        },
    ));
}

/// All non-empty subsets of `0..m` as circulant difference sets.
fn all_difference_sets(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let diffs: Vec<usize> = (0..m).filter(|&d| mask & (1 << d) != 0).collect();
        out.push(diffs);
    }
    out
}

// ---------------------------------------------------------------------------
// aut
// ---------------------------------------------------------------------------

fn aut_claims(config: &RunConfig, out: &mut Vec<ClaimSpec>) {
    for (n, q) in config.instances() {
        let claimed = claimed_group_order(n, q);
        let claimed_u64 = u64::try_from(&claimed).expect("claimed order fits in u64");

        if (n, q) == (6, 2) {
            out.push(ClaimSpec::new(
                "claimed_aut_order_n6_q2",
                "the product-formula order q!·(n!)^{2q} at (n=6, q=2); the \
                 129,600-point domain exceeds every verification guard, so \
                 the value is reported without a verification run",
                Suite::Aut,
                1,
                move |_ctx| {
                    ClaimOutcome::informational(
                        json!({
                            "claimed_order": claimed_u64,
                            "verification": "not run: vertex domain 129600 exceeds the realization cap",
                        }),
                        json!(claimed_u64),
                    )
                },
            ));
            continue;
        }

        let pinned = matches!((n, q), (5, 1) | (6, 1) | (5, 2));
        out.push(ClaimSpec::new(
            format!("generated_aut_order_n{n}_q{q}"),
            if pinned {
                format!(
                    "the named generators (translations, conjugations, \
                     coordinate permutations, inversions) generate a vertex \
                     group of exact order {claimed_u64} = q!·(n!)^{{2q}} at \
                     (n={n}, q={q})"
                )
            } else {
                format!(
                    "order generated by the named maps at (n={n}, q={q}), \
                     reported alongside the product formula (the formula is \
                     not claimed below degree 5)"
                )
            },
            Suite::Aut,
            if (n, q) == (5, 2) { 60 } else { 10 },
            move |ctx| {
                let oracle = try_oracle!(ctx, n, q);
                match generated_order_check(&oracle) {
                    Ok(report) => {
                        let computed =
                            u64::try_from(&report.computed).expect("order fits in u64");
                        if pinned {
                            ClaimOutcome::exact(json!(computed), json!(claimed_u64))
                        } else {
                            ClaimOutcome::informational(
                                json!({ "generated": computed }),
                                json!({ "product_formula": claimed_u64 }),
                            )
                        }
                    }
                    Err(err) => ClaimOutcome::error(err.to_string()),
                }
            },
        ));

        if matches!((n, q), (5, 1) | (6, 1) | (5, 2)) {
            out.push(ClaimSpec::new(
                format!("edge_preservation_n{n}_q{q}"),
                format!(
                    "every standard named generator preserves adjacency at \
                     (n={n}, q={q}) under full forward and inverse edge scans"
                ),
                Suite::Aut,
                if (n, q) == (5, 2) { 60 } else { 10 },
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, q);
                    let graph = try_graph!(ctx, n, q);
                    let gens = match standard_generators(&oracle) {
                        Ok(g) => g,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let preserved = gens.iter().filter(|g| g.preserves_edges(&graph)).count();
                    ClaimOutcome::exact(
                        json!({ "generators": gens.len(), "preserving": preserved }),
                        json!({ "generators": gens.len(), "preserving": gens.len() }),
                    )
                },
            ));
        }

        if (n, q) == (5, 1) {
            out.push(ClaimSpec::new(
                "order_ladder_n5_q1",
                "group orders as generator families accumulate at (n=5, \
                 q=1): translations 60, adding conjugations 7200, adding \
                 inversion 14400",
                Suite::Aut,
                10,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 1);
                    ladder_outcome(&oracle, &[60, 7_200, 14_400])
                },
            ));
            out.push(ClaimSpec::new(
                "noncommuting_inversion_n5_q1",
                "coordinate inversion does not commute with right \
                 translations (the symmetry group is a nontrivial extension, \
                 not a direct product)",
                Suite::Aut,
                2,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 1);
                    let group = oracle.group();
                    let h_perm =
                        Permutation::parse_cycles(5, "(1 2 3)").expect("valid cycle");
                    let h_idx = match group.index_of(&h_perm) {
                        Ok(idx) => idx,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let translation =
                        match right_translation(&oracle, &GroupVertex(vec![h_idx])) {
                            Ok(t) => t,
                            Err(err) => return ClaimOutcome::error(err.to_string()),
                        };
                    let phi = match inversion(&oracle, 1) {
                        Ok(p) => p,
                        Err(err) => return ClaimOutcome::error(err.to_string()),
                    };
                    let ab = translation.perm().compose(phi.perm());
                    let ba = phi.perm().compose(translation.perm());
                    match (ab, ba) {
                        (Ok(ab), Ok(ba)) => ClaimOutcome::exact(
                            json!({ "commute": ab == ba }),
                            json!({ "commute": false }),
                        ),
                        _ => ClaimOutcome::error("composition failed".to_string()),
                    }
                },
            ));
        }
        if (n, q) == (5, 2) {
            out.push(ClaimSpec::new(
                "order_ladder_n5_q2",
                "group orders as generator families accumulate at (n=5, \
                 q=2): translations 3600, adding conjugations 51,840,000, \
                 adding inversions 207,360,000, adding the coordinate swap \
                 414,720,000",
                Suite::Aut,
                60,
                move |ctx| {
                    let oracle = try_oracle!(ctx, 5, 2);
                    ladder_outcome(
                        &oracle,
                        &[3_600, 51_840_000, 207_360_000, 414_720_000],
                    )
                },
            ));
        }

        if matches!((n, q), (5, 1) | (6, 1) | (5, 2)) {
            out.push(ClaimSpec::new(
                format!("faithful_family_action_n{n}_q{q}"),
                format!(
                    "the generated symmetry group acts faithfully on the \
                     pinned-set family at (n={n}, q={q}): the induced \
                     set-permutation group has the same order"
                ),
                Suite::Aut,
                if (n, q) == (5, 2) { 120 } else { 10 },
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, q);
                    match faithful_family_action_check(&oracle) {
                        Ok(report) => ClaimOutcome::verdict(
                            report.faithful,
                            json!({
                                "vertex_order": u64::try_from(&report.vertex_order)
                                    .expect("fits"),
                                "family_order": u64::try_from(&report.family_order)
                                    .expect("fits"),
                            }),
                            json!({ "faithful": true }),
                        ),
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            ));
        }

        if matches!((n, q), (5, 1) | (5, 2)) {
            out.push(ClaimSpec::new(
                format!("row_column_action_n{n}_q{q}"),
                format!(
                    "generators and sampled group elements permute the row \
                     and column families of pinned sets coherently, acting \
                     on coordinate blocks through a single block permutation \
                     at (n={n}, q={q})"
                ),
                Suite::Aut,
                if (n, q) == (5, 2) { 60 } else { 10 },
                move |ctx| {
                    let oracle = try_oracle!(ctx, n, q);
                    match omega_action_check(&oracle, 20, ctx.seed) {
                        Ok(report) => ClaimOutcome::verdict(
                            report.preserves_omega && report.block_coherent,
                            json!({
                                "elements_checked": report.elements_checked,
                                "preserves_rows_and_columns": report.preserves_omega,
                                "block_coherent": report.block_coherent,
                            }),
                            json!({
                                "preserves_rows_and_columns": true,
                                "block_coherent": true,
                            }),
                        ),
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            ));
        }

        if q == 1 {
            let expected_ir: u64 = match n {
                3 => 6,
                4 => 82_944,
                5 => 14_400,
                6 => 518_400,
                _ => unreachable!("degree outside supported range"),
            };
            let spec = ClaimSpec::new(
                format!("ir_aut_order_n{n}_q1"),
                format!(
                    "individualization-refinement (independent of the named \
                     generators) finds |Aut| = {expected_ir} for the \
                     degree-{n} base graph"
                ),
                Suite::Aut,
                if n == 6 { 60 } else { 10 },
                move |ctx| {
                    let graph = try_graph!(ctx, n, 1);
                    match full_automorphism_order(&graph) {
                        Ok(outcome) => {
                            let order =
                                u64::try_from(&outcome.order).expect("order fits in u64");
                            ClaimOutcome::exact(json!(order), json!(expected_ir))
                        }
                        Err(err) => ClaimOutcome::error(err.to_string()),
                    }
                },
            );
            out.push(if n == 6 { spec.stretch() } else { spec });
        }
    }
}

fn ladder_outcome(
    oracle: &altgraph_core::graph::TensorPowerOracle,
    expected: &[u64],
) -> ClaimOutcome {
    match order_ladder(oracle) {
        Ok(ladder) => {
            let computed: Vec<(String, u64)> = ladder
                .iter()
                .map(|(stage, order)| {
                    (
                        stage.clone(),
                        u64::try_from(order).expect("ladder order fits in u64"),
                    )
                })
                .collect();
            let values: Vec<u64> = computed.iter().map(|&(_, v)| v).collect();
            ClaimOutcome::verdict(
                values == expected,
                json!(computed),
                json!(expected),
            )
        }
        Err(err) => ClaimOutcome::error(err.to_string()),
    }
}
