use serde::Serialize;

use crate::graph::UGraph;

pub const DEFAULT_HAMILTON_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "cycle", rename_all = "lowercase")]
pub enum HamiltonVerdict {
    /// Vertex order of a Hamiltonian cycle starting at vertex 0; the closing
    /// edge runs from the last entry back to the first.
    Yes(Vec<usize>),
    No,
    Timeout,
}

impl HamiltonVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            HamiltonVerdict::Yes(_) => Some(true),
            HamiltonVerdict::No => Some(false),
            HamiltonVerdict::Timeout => None,
        }
    }
}

/// Checks that `cycle` visits every vertex once with consecutive vertices
/// (cyclically) adjacent.
pub fn verify_hamiltonian_cycle(g: &UGraph, cycle: &[usize]) -> bool {
    let n = g.vertex_count();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|k| g.has_edge(cycle[k], cycle[(k + 1) % n]))
}

struct Walker<'a> {
    g: &'a UGraph,
    start: usize,
    path: Vec<usize>,
    unvisited: Vec<u64>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Walker<'_> {
    fn is_unvisited(&self, v: usize) -> bool {
        self.unvisited[v / 64] >> (v % 64) & 1 == 1
    }

    fn flip(&mut self, v: usize) {
        self.unvisited[v / 64] ^= 1 << (v % 64);
    }

    fn unvisited_degree(&self, v: usize) -> usize {
        self.g
            .row(v)
            .iter()
            .zip(&self.unvisited)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Necessary conditions for the current path to extend to a cycle: every
    /// unvisited vertex keeps two usable neighbours, both path ends can still
    /// step into the unvisited region, and that region is connected.
    fn feasible(&self) -> bool {
        let n = self.g.vertex_count();
        let last = *self.path.last().expect("path starts at the root");
        let remaining: Vec<usize> = (0..n).filter(|&v| self.is_unvisited(v)).collect();
        let Some(&first) = remaining.first() else {
            return true;
        };
        if self.unvisited_degree(last) == 0 || self.unvisited_degree(self.start) == 0 {
            return false;
        }
        for &u in &remaining {
            let mut usable = self.unvisited_degree(u);
            if self.g.has_edge(u, last) {
                usable += 1;
            }
            if self.start != last && self.g.has_edge(u, self.start) {
                usable += 1;
            }
            if usable < 2 {
                return false;
            }
        }
        let mut reached = vec![0u64; self.unvisited.len()];
        reached[first / 64] |= 1 << (first % 64);
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for (k, (&row, &open)) in self.g.row(x).iter().zip(&self.unvisited).enumerate() {
                let mut fresh = row & open & !reached[k];
                reached[k] |= fresh;
                while fresh != 0 {
                    let t = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    stack.push(k * 64 + t);
                    count += 1;
                }
            }
        }
        count == remaining.len()
    }

    fn extend(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let n = self.g.vertex_count();
        let last = *self.path.last().expect("path starts at the root");
        if self.path.len() == n {
            return if self.g.has_edge(last, self.start) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        let mut candidates: Vec<(usize, usize)> = self
            .g
            .neighbors(last)
            .filter(|&w| self.is_unvisited(w))
            .map(|w| (self.unvisited_degree(w), w))
            .collect();
        candidates.sort_unstable();
        for (_, w) in candidates {
            self.flip(w);
            self.path.push(w);
            if self.feasible() {
                match self.extend() {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.path.pop();
            self.flip(w);
        }
        Step::Exhausted
    }
}

/// Exact backtracking search for a Hamiltonian cycle, extending towards the
/// neighbour with the fewest unvisited neighbours first. Returns `Timeout`
/// once `node_budget` extensions have been tried.
pub fn hamiltonian_cycle(g: &UGraph, node_budget: u64) -> HamiltonVerdict {
    let n = g.vertex_count();
    if n < 3 {
        return HamiltonVerdict::No;
    }
    let mut unvisited = vec![0u64; n.div_ceil(64)];
    for v in 1..n {
        unvisited[v / 64] |= 1 << (v % 64);
    }
    let mut walker = Walker {
        g,
        start: 0,
        path: vec![0],
        unvisited,
        nodes: 0,
        budget: node_budget,
    };
    if !walker.feasible() {
        return HamiltonVerdict::No;
    }
    match walker.extend() {
        Step::Found => HamiltonVerdict::Yes(walker.path),
        Step::Exhausted => HamiltonVerdict::No,
        Step::OutOfBudget => HamiltonVerdict::Timeout,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::weave::{build, petersen, WeaveSpec};

    #[test]
    fn petersen_is_not_hamiltonian() {
        assert_eq!(
            hamiltonian_cycle(&petersen(), DEFAULT_HAMILTON_BUDGET),
            HamiltonVerdict::No
        );
    }

    #[test]
    fn cycle_is_its_own_certificate() {
        let g = cycle(5);
        let HamiltonVerdict::Yes(c) = hamiltonian_cycle(&g, DEFAULT_HAMILTON_BUDGET) else {
            panic!("C5 is Hamiltonian");
        };
        assert!(verify_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn trees_and_tiny_graphs() {
        assert_eq!(hamiltonian_cycle(&star(4), 1000), HamiltonVerdict::No);
        assert_eq!(hamiltonian_cycle(&complete(2), 1000), HamiltonVerdict::No);
        assert_eq!(
            hamiltonian_cycle(&complete_bipartite(2, 3), 1000),
            HamiltonVerdict::No
        );
        assert!(matches!(
            hamiltonian_cycle(&complete_bipartite(3, 3), 1000),
            HamiltonVerdict::Yes(_)
        ));
    }

    #[test]
    fn woven_three_is_hamiltonian() {
        let g = build(&WeaveSpec::cycle(3).unwrap());
        let HamiltonVerdict::Yes(c) = hamiltonian_cycle(&g, DEFAULT_HAMILTON_BUDGET) else {
            panic!("G_3 should be Hamiltonian");
        };
        assert_eq!(c.len(), 30);
        assert!(verify_hamiltonian_cycle(&g, &c));
    }

    #[test]
    fn verifier_rejects_bad_certificates() {
        let g = cycle(5);
        assert!(!verify_hamiltonian_cycle(&g, &[0, 1, 2, 3]));
        assert!(!verify_hamiltonian_cycle(&g, &[0, 2, 1, 3, 4]));
        assert!(!verify_hamiltonian_cycle(&g, &[0, 1, 1, 3, 4]));
    }

    #[test]
    fn budget_gives_timeout() {
        assert_eq!(hamiltonian_cycle(&petersen(), 3), HamiltonVerdict::Timeout);
    }
}
