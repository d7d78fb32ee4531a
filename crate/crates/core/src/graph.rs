//! Immutable undirected simple graphs with bit-packed adjacency rows, and the
//! breadth-first primitives (distances, girth, diameter, bipartiteness) the
//! rest of the crate is built on.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("label table has {labels} entries for {count} vertices")]
    LabelCount { labels: usize, count: usize },
    #[error("labels are not a bijection onto 1..={copies} x 0..=9")]
    LabelsNotBijective { copies: usize },
}

/// Vertex label `(copy, petersen_vertex)` with `copy` in `1..=n` and
/// `petersen_vertex` in `0..=9`.
pub type Label = (usize, usize);

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Rows are stored as packed `u64` words; the matrix is symmetric with an
/// empty diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct UGraph {
    vertex_count: usize,
    words: usize,
    rows: Vec<u64>,
    edge_count: usize,
    labels: Option<Vec<Label>>,
}

impl fmt::Debug for UGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UGraph")
            .field("vertex_count", &self.vertex_count)
            .field("edge_count", &self.edge_count)
            .field("labelled", &self.labels.is_some())
            .finish()
    }
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl UGraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        UGraph {
            vertex_count: n,
            words,
            rows: vec![0; n * words],
            edge_count: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = UGraph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set(u, v);
        self.set(v, u);
        self.edge_count += 1;
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    /// Attaches `(copy, petersen_vertex)` labels. They must form a bijection
    /// onto `{1..n} x {0..9}` where `n = vertex_count / 10`.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                count: self.vertex_count,
            });
        }
        let copies = self.vertex_count / 10;
        let mut seen = vec![false; self.vertex_count];
        let bijective = self.vertex_count.is_multiple_of(10)
            && labels.iter().all(|&(i, x)| {
                if i == 0 || i > copies || x > 9 {
                    return false;
                }
                let slot = (i - 1) * 10 + x;
                !std::mem::replace(&mut seen[slot], true)
            });
        if !bijective {
            return Err(GraphError::LabelsNotBijective { copies });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count)
            .map(|v| self.neighbors(v).collect())
            .collect()
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// The graph with vertex `v` renamed to `images[v]`.
    pub fn relabel(&self, images: &[usize]) -> Result<UGraph, GraphError> {
        UGraph::from_edges(
            self.vertex_count,
            self.edges().map(|(u, v)| (images[u], images[v])),
        )
    }

    /// Dense 0/1 adjacency matrix in row-major order.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.vertex_count;
        let mut m = vec![0.0; n * n];
        for (u, v) in self.edges() {
            m[u * n + v] = 1.0;
            m[v * n + u] = 1.0;
        }
        m
    }
}

pub fn degree_sequence(g: &UGraph) -> Vec<usize> {
    (0..g.vertex_count()).map(|v| g.degree(v)).collect()
}

/// `Some(d)` when every vertex has degree `d`.
pub fn regular_degree(g: &UGraph) -> Option<usize> {
    let degrees = degree_sequence(g);
    let first = *degrees.first()?;
    degrees.iter().all(|&d| d == first).then_some(first)
}

/// BFS distances from a single source; `None` marks unreachable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: usize,
    pub distances: Vec<Option<usize>>,
}

impl DistanceProfile {
    pub fn eccentricity(&self) -> Option<usize> {
        self.distances
            .iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}

pub fn bfs(g: &UGraph, source: usize) -> DistanceProfile {
    let mut distances = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    distances[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = distances[u].unwrap_or_default();
        for w in g.neighbors(u) {
            if distances[w].is_none() {
                distances[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    DistanceProfile { source, distances }
}

/// All-pairs distance table (`usize::MAX` for unreachable pairs).
pub fn distance_matrix(g: &UGraph) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|s| {
            bfs(g, s)
                .distances
                .into_iter()
                .map(|d| d.unwrap_or(usize::MAX))
                .collect()
        })
        .collect()
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &UGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[root] = 0;
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // no shorter cycle can be closed past this depth
            if let Some(b) = best {
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Largest BFS eccentricity, `None` when the graph is disconnected.
/// The empty graph (no vertices) has diameter 0.
pub fn diameter(g: &UGraph) -> Option<usize> {
    (0..g.vertex_count()).try_fold(0, |acc, s| bfs(g, s).eccentricity().map(|e| acc.max(e)))
}

/// A vertex pair realising the diameter, with its distance.
pub fn diametral_pair(g: &UGraph) -> Option<(usize, usize, usize)> {
    let mut best = None;
    for s in 0..g.vertex_count() {
        let profile = bfs(g, s);
        for (t, d) in profile.distances.iter().enumerate() {
            let d = (*d)?;
            if best.is_none_or(|(_, _, b)| d > b) {
                best = Some((s, t, d));
            }
        }
    }
    best
}

pub fn is_connected(g: &UGraph) -> bool {
    if g.vertex_count() == 0 {
        return false;
    }
    bfs(g, 0).distances.iter().all(Option::is_some)
}

pub fn is_bipartite(g: &UGraph) -> bool {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap_or(false);
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Line graph: one vertex per edge (in `g.edges()` order), adjacent when the
/// underlying edges share an endpoint.
pub fn line_graph(g: &UGraph) -> UGraph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(k);
        incident[v].push(k);
    }
    let mut lg = UGraph::empty(edges.len());
    for list in &incident {
        for (a, &e) in list.iter().enumerate() {
            for &f in &list[a + 1..] {
                // simple graph: two edges share at most one endpoint
                lg.set(e, f);
                lg.set(f, e);
                lg.edge_count += 1;
            }
        }
    }
    lg
}

/// Multisets of common-neighbour counts, split by whether the pair is
/// adjacent. Keys are counts, values are how many unordered pairs have them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommonNeighborCounts {
    pub adjacent: BTreeMap<usize, usize>,
    pub non_adjacent: BTreeMap<usize, usize>,
}

pub fn common_neighbor_counts(g: &UGraph) -> CommonNeighborCounts {
    let mut out = CommonNeighborCounts::default();
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbors(u, v);
            let bucket = if g.has_edge(u, v) {
                &mut out.adjacent
            } else {
                &mut out.non_adjacent
            };
            *bucket.entry(c).or_default() += 1;
        }
    }
    out
}

/// Small named graphs used throughout the tests and as CLI fixtures.
pub mod named {
    use super::UGraph;

    pub fn complete(n: usize) -> UGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        UGraph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> UGraph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        UGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> UGraph {
        UGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn star(leaves: usize) -> UGraph {
        UGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> UGraph {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
        UGraph::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    /// 3-dimensional hypercube.
    pub fn cube() -> UGraph {
        let edges = (0..8usize).flat_map(|u| {
            (0..3)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        });
        UGraph::from_edges(8, edges).expect("cube edges are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::weave::petersen;

    #[test]
    fn degree_sequences() {
        assert_eq!(degree_sequence(&petersen()), vec![3; 10]);
        assert_eq!(degree_sequence(&UGraph::empty(4)), vec![0; 4]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(UGraph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            UGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            UGraph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn label_bijection_is_enforced() {
        let g = UGraph::empty(10);
        let good: Vec<Label> = (0..10).map(|x| (1, x)).collect();
        assert!(g.clone().with_labels(good).is_ok());
        let mut bad: Vec<Label> = (0..10).map(|x| (1, x)).collect();
        bad[3] = (1, 2);
        assert!(g.with_labels(bad).is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&petersen()), Some(5));
        assert_eq!(girth(&path(5)), None);
        assert_eq!(girth(&star(4)), None);
        assert_eq!(girth(&complete(4)), Some(3));
        assert_eq!(girth(&cube()), Some(4));
        assert_eq!(girth(&cycle(7)), Some(7));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&petersen()), Some(2));
        assert_eq!(diameter(&UGraph::empty(1)), Some(0));
        assert_eq!(diameter(&UGraph::empty(2)), None);
        assert_eq!(diameter(&path(6)), Some(5));
        let (s, t, d) = diametral_pair(&cycle(8)).unwrap();
        assert_eq!(d, 4);
        assert_eq!(bfs(&cycle(8), s).distances[t], Some(4));
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&UGraph::empty(1)));
        assert!(!is_connected(
            &UGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
        ));
        assert!(is_connected(&petersen()));
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&cycle(6)));
        assert!(!is_bipartite(&cycle(5)));
        assert!(is_bipartite(&cube()));
        assert!(!is_bipartite(&petersen()));
    }

    #[test]
    fn line_graph_examples() {
        let l = line_graph(&path(3));
        assert_eq!((l.vertex_count(), l.edge_count()), (2, 1));
        let l = line_graph(&complete(3));
        assert_eq!((l.vertex_count(), l.edge_count()), (3, 3));
        // L(K_{1,3}) = K_3
        let l = line_graph(&star(3));
        assert_eq!((l.vertex_count(), l.edge_count()), (3, 3));
    }

    #[test]
    fn common_neighbors_examples() {
        let k4 = common_neighbor_counts(&complete(4));
        assert_eq!(k4.adjacent, BTreeMap::from([(2, 6)]));
        assert!(k4.non_adjacent.is_empty());

        let c4 = common_neighbor_counts(&cycle(4));
        assert_eq!(c4.adjacent, BTreeMap::from([(0, 4)]));
        assert_eq!(c4.non_adjacent, BTreeMap::from([(2, 2)]));
    }

    #[test]
    fn petersen_common_neighbors_by_brute_force() {
        let p = petersen();
        let adj = p.adjacency_lists();
        for u in 0..10 {
            for v in u + 1..10 {
                let brute = adj[u].iter().filter(|w| adj[v].contains(w)).count();
                let expected = if p.has_edge(u, v) { 0 } else { 1 };
                assert_eq!(brute, expected);
            }
        }
        let counts = common_neighbor_counts(&p);
        assert_eq!(counts.adjacent, BTreeMap::from([(0, 15)]));
        assert_eq!(counts.non_adjacent, BTreeMap::from([(1, 30)]));
    }

    #[test]
    fn neighbors_cross_word_boundary() {
        let g = UGraph::from_edges(130, [(0, 63), (0, 64), (0, 129)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![63, 64, 129]);
        assert_eq!(g.degree(129), 1);
    }
}
