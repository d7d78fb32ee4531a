//! Exact automorphism groups and isomorphism tests by
//! individualization-refinement, plus the orbit, dihedral and transitivity
//! verdicts built on them.

mod perm;
mod refine;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_connected, line_graph, UGraph};

pub use perm::{enumerate_group, orbit_partition, Permutation};
use search::Search;

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Groups up to this order are enumerated to find the largest element order.
const ELEMENT_ENUMERATION_LIMIT: u128 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("permutation has {got} points, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("automorphism search requires a connected graph")]
    Disconnected,
    #[error("search tree exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("group order does not fit in 128 bits")]
    OrderOverflow,
}

pub fn is_automorphism(g: &UGraph, p: &Permutation) -> Result<bool, SymmetryError> {
    if p.len() != g.vertex_count() {
        return Err(SymmetryError::LengthMismatch {
            expected: g.vertex_count(),
            got: p.len(),
        });
    }
    // a bijection on a finite simple graph that maps edges to edges also maps
    // non-edges to non-edges
    Ok(g.edges().all(|(u, v)| g.has_edge(p.apply(u), p.apply(v))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutReport {
    pub generators: Vec<Permutation>,
    pub group_order: u128,
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Order 10n with a rotation of order 5n and an inverting involution,
    /// where `n = vertex_count / 10`.
    pub is_dihedral_10n: bool,
    /// `None` when the group is too large to enumerate.
    pub max_element_order: Option<u64>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

pub fn automorphism_group(g: &UGraph, budget: u64) -> Result<AutReport, SymmetryError> {
    if !is_connected(g) {
        return Err(SymmetryError::Disconnected);
    }
    let mut search = Search::new(g, budget);
    let found = search.automorphisms()?;
    let n = g.vertex_count();
    debug_assert!(found
        .generators
        .iter()
        .all(|p| is_automorphism(g, p) == Ok(true)));

    let max_element_order = (found.order <= ELEMENT_ENUMERATION_LIMIT)
        .then(|| enumerate_group(&found.generators, n, found.order as usize))
        .flatten()
        .map(|all| all.iter().map(Permutation::order).max().unwrap_or(1));

    let mut report = AutReport {
        vertex_orbits: orbit_partition(&found.generators, n),
        generators: found.generators,
        group_order: found.order,
        is_dihedral_10n: false,
        max_element_order,
        nodes: search.visited(),
    };
    if n >= 10 && n.is_multiple_of(10) {
        report.is_dihedral_10n = dihedral_check(&report, n / 10);
    }
    Ok(report)
}

pub fn orbits(report: &AutReport, vertex_count: usize) -> Vec<Vec<usize>> {
    orbit_partition(&report.generators, vertex_count)
}

/// True iff the group has order `10n` and contains a rotation `r` of order
/// `5n` together with an involution `s` satisfying `s r s = r^-1`.
pub fn dihedral_check(report: &AutReport, n: usize) -> bool {
    let order = 10 * n;
    if report.group_order != order as u128 {
        return false;
    }
    let Some(points) = report.generators.first().map(Permutation::len) else {
        return false;
    };
    let Some(elements) = enumerate_group(&report.generators, points, 4 * order) else {
        return false;
    };
    if elements.len() != order {
        return false;
    }
    let rotations: Vec<&Permutation> = elements
        .iter()
        .filter(|x| x.order() == 5 * n as u64)
        .collect();
    let involutions: Vec<&Permutation> = elements.iter().filter(|x| x.order() == 2).collect();
    rotations.iter().any(|r| {
        let r_inv = r.inverse();
        involutions.iter().any(|s| s.then(r).then(s) == r_inv)
    })
}

pub fn is_vertex_transitive(g: &UGraph, budget: u64) -> Result<bool, SymmetryError> {
    Ok(automorphism_group(g, budget)?.vertex_orbits.len() == 1)
}

/// Vertex-transitivity of the line graph. Graphs without edges are
/// vacuously edge-transitive.
pub fn is_edge_transitive(g: &UGraph, budget: u64) -> Result<bool, SymmetryError> {
    if g.edge_count() == 0 {
        return Ok(true);
    }
    if !is_connected(g) {
        return Err(SymmetryError::Disconnected);
    }
    is_vertex_transitive(&line_graph(g), budget)
}

/// A bijection `p` with `g.has_edge(u, v) == h.has_edge(p(u), p(v))`, if any.
pub fn are_isomorphic(
    g: &UGraph,
    h: &UGraph,
    budget: u64,
) -> Result<Option<Permutation>, SymmetryError> {
    let found = Search::new(g, budget).isomorphism_to(h)?;
    debug_assert!(found
        .as_ref()
        .is_none_or(|p| g.edges().all(|(u, v)| h.has_edge(p.apply(u), p.apply(v)))));
    Ok(found)
}
