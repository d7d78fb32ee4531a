use serde::Serialize;

use crate::graph::UGraph;

pub const DEFAULT_COLORING_BUDGET: u64 = 10_000_000;

/// Result of the exact chromatic search. When the budget runs out before
/// the bounds meet, `lower < upper` and `coloring` certifies `upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticOutcome {
    pub lower: usize,
    pub upper: usize,
    /// Colour of each vertex, using exactly `upper` colours.
    pub coloring: Vec<usize>,
}

impl ChromaticOutcome {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Number of distinct colours if `coloring` is proper, else `None`.
pub fn verify_coloring(g: &UGraph, coloring: &[usize]) -> Option<usize> {
    if coloring.len() != g.vertex_count() {
        return None;
    }
    if g.edges().any(|(u, v)| coloring[u] == coloring[v]) {
        return None;
    }
    let mut used: Vec<usize> = coloring.to_vec();
    used.sort_unstable();
    used.dedup();
    Some(used.len())
}

struct Colorer<'a> {
    g: &'a UGraph,
    adjacency: Vec<Vec<usize>>,
    k: usize,
    color: Vec<Option<usize>>,
    /// `blocked[v][c]`: coloured neighbours of `v` holding colour `c`.
    blocked: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Colored,
    Impossible,
    OutOfBudget,
}

impl Colorer<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.blocked[v].iter().filter(|&&c| c > 0).count()
    }

    /// Uncoloured vertex with the most distinct neighbour colours, ties
    /// broken by uncoloured degree and then by lowest id.
    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| {
                let free_degree = self.adjacency[v]
                    .iter()
                    .filter(|&&w| self.color[w].is_none())
                    .count();
                (self.saturation(v), free_degree, std::cmp::Reverse(v))
            })
    }

    fn assign(&mut self, v: usize, c: Option<usize>) {
        if let Some(old) = self.color[v] {
            for &w in &self.adjacency[v] {
                self.blocked[w][old] -= 1;
            }
        }
        self.color[v] = c;
        if let Some(new) = c {
            for &w in &self.adjacency[v] {
                self.blocked[w][new] += 1;
            }
        }
    }

    fn solve(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        let Some(v) = self.pick() else {
            return Outcome::Colored;
        };
        // colours are interchangeable: open at most one new colour
        let used = self.color.iter().flatten().max().map_or(0, |&c| c + 1);
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.blocked[v][c] > 0 {
                continue;
            }
            self.assign(v, Some(c));
            match self.solve() {
                Outcome::Impossible => {}
                other => return other,
            }
            self.assign(v, None);
        }
        Outcome::Impossible
    }
}

/// Searches for a proper `k`-colouring; also returns the nodes spent.
fn k_coloring(g: &UGraph, k: usize, budget: u64) -> (Result<Option<Vec<usize>>, ()>, u64) {
    let n = g.vertex_count();
    let mut colorer = Colorer {
        g,
        adjacency: g.adjacency_lists(),
        k,
        color: vec![None; n],
        blocked: vec![vec![0; k.max(1)]; n],
        nodes: 0,
        budget,
    };
    let outcome = match colorer.solve() {
        Outcome::Colored => Ok(Some(colorer.color.iter().flatten().copied().collect())),
        Outcome::Impossible => Ok(None),
        Outcome::OutOfBudget => Err(()),
    };
    (outcome, colorer.nodes)
}

/// Greedy DSATUR colouring; gives the initial upper bound.
fn dsatur_greedy(g: &UGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let adjacency = g.adjacency_lists();
    let mut colorer = Colorer {
        g,
        adjacency,
        k: n.max(1),
        color: vec![None; n],
        blocked: vec![vec![0; n.max(1)]; n],
        nodes: 0,
        budget: u64::MAX,
    };
    while let Some(v) = colorer.pick() {
        let c = (0..)
            .find(|&c| colorer.blocked[v][c] == 0)
            .expect("n colours always suffice");
        colorer.assign(v, Some(c));
    }
    colorer.color.into_iter().flatten().collect()
}

/// Exact chromatic number: tries `k = lower, lower + 1, ...` below the
/// greedy bound, each by DSATUR-ordered backtracking sharing `node_budget`.
pub fn chromatic_number(g: &UGraph, node_budget: u64) -> ChromaticOutcome {
    let n = g.vertex_count();
    let mut coloring = dsatur_greedy(g);
    let mut upper = verify_coloring(g, &coloring).unwrap_or(n);
    let mut lower = match (n, g.edge_count()) {
        (0, _) => 0,
        (_, 0) => 1,
        _ => 2,
    };
    let mut remaining = node_budget;
    while lower < upper {
        let (outcome, spent) = k_coloring(g, lower, remaining);
        remaining = remaining.saturating_sub(spent);
        match outcome {
            Ok(Some(found)) => {
                upper = lower;
                coloring = found;
            }
            Ok(None) => lower += 1,
            Err(()) => break,
        }
    }
    ChromaticOutcome {
        lower,
        upper,
        coloring,
    }
}
