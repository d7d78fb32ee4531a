//! Structural classification: Hamiltonicity, chromatic number, strong
//! regularity and distance-regularity.

mod coloring;
mod hamilton;

use std::fmt;

use serde::Serialize;

use crate::graph::{common_neighbor_counts, distance_matrix, is_connected, regular_degree, UGraph};

pub use coloring::{chromatic_number, verify_coloring, ChromaticOutcome, DEFAULT_COLORING_BUDGET};
pub use hamilton::{
    hamiltonian_cycle, verify_hamiltonian_cycle, HamiltonVerdict, DEFAULT_HAMILTON_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// `(v, k, lambda, mu)` when `g` is strongly regular. Complete and edgeless
/// graphs are excluded: one of the two pair classes is empty.
pub fn strongly_regular_params(g: &UGraph) -> Option<SrgParams> {
    let k = regular_degree(g)?;
    let counts = common_neighbor_counts(g);
    let single = |m: &std::collections::BTreeMap<usize, usize>| {
        (m.len() == 1).then(|| *m.keys().next().expect("one key"))
    };
    Some(SrgParams {
        v: g.vertex_count(),
        k,
        lambda: single(&counts.adjacent)?,
        mu: single(&counts.non_adjacent)?,
    })
}

/// Intersection array `{b_0, ..., b_{D-1}; c_1, ..., c_D}`, with the
/// `a_i` kept alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub a: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// For every ordered pair `(u, v)` at distance `k`, counts the neighbours of
/// `u` at distance `k - 1`, `k`, `k + 1` from `v`; returns the array when
/// these depend only on `k`.
pub fn distance_regular_check(g: &UGraph) -> Option<IntersectionArray> {
    if !is_connected(g) {
        return None;
    }
    let dist = distance_matrix(g);
    let adjacency = g.adjacency_lists();
    let diam = dist.iter().flatten().copied().max().unwrap_or(0);
    // (c_k, a_k, b_k) per distance k, fixed by the first pair seen
    let mut table: Vec<Option<(usize, usize, usize)>> = vec![None; diam + 1];
    for (u, nbrs) in adjacency.iter().enumerate() {
        for v in 0..g.vertex_count() {
            let k = dist[u][v];
            let mut triple = (0, 0, 0);
            for &w in nbrs {
                let dw = dist[w][v];
                if dw + 1 == k {
                    triple.0 += 1;
                } else if dw == k {
                    triple.1 += 1;
                } else {
                    triple.2 += 1;
                }
            }
            match table[k] {
                None => table[k] = Some(triple),
                Some(t) if t == triple => {}
                Some(_) => return None,
            }
        }
    }
    let table: Vec<(usize, usize, usize)> = table
        .into_iter()
        .map(|t| t.expect("every distance occurs"))
        .collect();
    Some(IntersectionArray {
        b: table[..diam].iter().map(|t| t.2).collect(),
        c: table[1..].iter().map(|t| t.0).collect(),
        a: table.iter().map(|t| t.1).collect(),
    })
}

/// Budgets for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub hamilton_nodes: u64,
    pub coloring_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            hamilton_nodes: DEFAULT_HAMILTON_BUDGET,
            coloring_nodes: DEFAULT_COLORING_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub hamiltonian: HamiltonVerdict,
    pub chromatic: ChromaticOutcome,
    pub strongly_regular: Option<SrgParams>,
    pub distance_regular: Option<IntersectionArray>,
}

pub fn classify(g: &UGraph, budgets: &Budgets) -> ClassificationReport {
    ClassificationReport {
        hamiltonian: hamiltonian_cycle(g, budgets.hamilton_nodes),
        chromatic: chromatic_number(g, budgets.coloring_nodes),
        strongly_regular: strongly_regular_params(g),
        distance_regular: distance_regular_check(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::weave::{build, petersen, WeaveSpec};

    #[test]
    fn srg_examples() {
        assert_eq!(
            strongly_regular_params(&petersen()),
            Some(SrgParams {
                v: 10,
                k: 3,
                lambda: 0,
                mu: 1
            })
        );
        assert_eq!(
            strongly_regular_params(&cycle(5)),
            Some(SrgParams {
                v: 5,
                k: 2,
                lambda: 0,
                mu: 1
            })
        );
        assert_eq!(
            strongly_regular_params(&build(&WeaveSpec::cycle(4).unwrap())),
            None
        );
        assert_eq!(strongly_regular_params(&complete(4)), None);
        assert_eq!(strongly_regular_params(&path(4)), None);
        assert_eq!(
            strongly_regular_params(&complete_bipartite(3, 3)),
            Some(SrgParams {
                v: 6,
                k: 3,
                lambda: 0,
                mu: 3
            })
        );
    }

    #[test]
    fn distance_regular_examples() {
        let p = distance_regular_check(&petersen()).unwrap();
        assert_eq!(p.to_string(), "{3,2;1,1}");
        assert_eq!(p.a, vec![0, 0, 2]);
        let k4 = distance_regular_check(&complete(4)).unwrap();
        assert_eq!(k4.to_string(), "{3;1}");
        assert_eq!(k4.diameter(), 1);
        assert_eq!(
            distance_regular_check(&cube()).unwrap().to_string(),
            "{3,2,1;1,2,3}"
        );
        assert_eq!(
            distance_regular_check(&build(&WeaveSpec::cycle(3).unwrap())),
            None
        );
        assert_eq!(distance_regular_check(&path(4)), None);
        assert_eq!(distance_regular_check(&UGraph::empty(2)), None);
    }

    #[test]
    fn classify_petersen() {
        let r = classify(&petersen(), &Budgets::default());
        assert_eq!(r.hamiltonian, HamiltonVerdict::No);
        assert_eq!(r.chromatic.exact(), Some(3));
        assert!(r.strongly_regular.is_some());
        assert!(r.distance_regular.is_some());
    }
}
