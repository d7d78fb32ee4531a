//! The directed Petersen meta-graph and the woven family built from it.
//!
//! `G_n` takes `n` copies of the Petersen graph, keeps every copy's internal
//! edges, and for every arc `(u, v)` of the meta-graph joins `(i, u)` to
//! `(sigma(i), v)`. Vertex `(i, x)` is stored at index `(i - 1) * 10 + x`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Label, UGraph};

/// The fixed acyclic orientation of the Petersen graph's 15 edges.
pub const META_ARCS: [(usize, usize); 15] = [
    (0, 1),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 6),
    (2, 3),
    (2, 7),
    (3, 4),
    (3, 8),
    (4, 9),
    (5, 7),
    (5, 8),
    (6, 8),
    (6, 9),
    (7, 9),
];

pub const PETERSEN_ORDER: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeaveError {
    #[error("need at least 2 copies, got {0}")]
    TooFewCopies(usize),
    #[error("sigma must be a permutation of 1..={n}: {reason}")]
    InvalidSigma { n: usize, reason: String },
    #[error("cannot parse cycle notation {text:?}: {reason}")]
    CycleSyntax { text: String, reason: String },
    #[error("sigma fixes copy {0}; its cross edges would duplicate internal edges")]
    FixedPoint(usize),
    #[error("this check is only defined for the standard n-cycle wiring")]
    NotStandardCycle,
    #[error("n = {0} is outside the closed-form range (n >= 3)")]
    BelowClosedFormRange(usize),
}

/// Directed view of the Petersen graph used to orient the cross wiring.
#[derive(Debug, Clone, Copy, Default)]
pub struct MetaGraph;

impl MetaGraph {
    pub fn arcs(&self) -> &'static [(usize, usize)] {
        &META_ARCS
    }

    pub fn out_degree(&self, v: usize) -> usize {
        META_ARCS.iter().filter(|&&(u, _)| u == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        META_ARCS.iter().filter(|&&(_, w)| w == v).count()
    }

    /// Kahn's algorithm: true when every vertex can be removed in
    /// topological order.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = (0..PETERSEN_ORDER).map(|v| self.in_degree(v)).collect();
        let mut ready: Vec<usize> = (0..PETERSEN_ORDER).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = ready.pop() {
            removed += 1;
            for &(a, b) in &META_ARCS {
                if a == u {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        removed == PETERSEN_ORDER
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..PETERSEN_ORDER)
            .filter(|&v| self.in_degree(v) == 0)
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..PETERSEN_ORDER)
            .filter(|&v| self.out_degree(v) == 0)
            .collect()
    }

    pub fn underlying(&self) -> UGraph {
        petersen()
    }
}

/// The undirected Petersen graph on `0..=9`.
pub fn petersen() -> UGraph {
    UGraph::from_edges(PETERSEN_ORDER, META_ARCS).expect("meta arcs form a simple graph")
}

/// A permutation of `1..=n`, stored zero-based.
#[derive(Clone, PartialEq, Eq)]
pub struct Sigma {
    images: Vec<usize>,
}

impl Sigma {
    /// The standard cycle `(1 2 ... n)`.
    pub fn cycle(n: usize) -> Self {
        Sigma {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// From one-based images: `images[i - 1] = sigma(i)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, WeaveError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in images {
            if img == 0 || img > n {
                return Err(WeaveError::InvalidSigma {
                    n,
                    reason: format!("image {img} out of range"),
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(WeaveError::InvalidSigma {
                    n,
                    reason: format!("image {img} repeated"),
                });
            }
        }
        Ok(Sigma {
            images: images.iter().map(|i| i - 1).collect(),
        })
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)` over `1..=n`. Points not
    /// mentioned are fixed; `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, WeaveError> {
        let syntax = |reason: &str| WeaveError::CycleSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(syntax("empty input"));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax("expected '('"))?;
            let close = body.find(')').ok_or_else(|| syntax("unclosed cycle"))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| syntax("non-numeric point")))
                .collect::<Result<Vec<_>, _>>()?;
            for &p in &points {
                if p == 0 || p > n {
                    return Err(WeaveError::InvalidSigma {
                        n,
                        reason: format!("point {p} out of range"),
                    });
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(WeaveError::InvalidSigma {
                        n,
                        reason: format!("point {p} appears in more than one place"),
                    });
                }
            }
            for (k, &p) in points.iter().enumerate() {
                images[p - 1] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Sigma::from_one_based(&images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `sigma(i)` for a one-based copy index.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn is_standard_cycle(&self) -> bool {
        *self == Sigma::cycle(self.len())
    }
}

impl fmt::Debug for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sigma({self})")
    }
}

impl fmt::Display for Sigma {
    /// Cycle notation with fixed points omitted; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push((p + 1).to_string());
                p = self.images[p];
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Construction parameters for one member of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeaveSpec {
    n: usize,
    sigma: Sigma,
}

impl WeaveSpec {
    /// The standard member `G_n` wired by `(1 2 ... n)`.
    pub fn cycle(n: usize) -> Result<Self, WeaveError> {
        if n < 2 {
            return Err(WeaveError::TooFewCopies(n));
        }
        Ok(WeaveSpec {
            n,
            sigma: Sigma::cycle(n),
        })
    }

    pub fn with_sigma(n: usize, sigma: Sigma) -> Result<Self, WeaveError> {
        if n < 2 {
            return Err(WeaveError::TooFewCopies(n));
        }
        if sigma.len() != n {
            return Err(WeaveError::InvalidSigma {
                n,
                reason: format!("permutation acts on {} points", sigma.len()),
            });
        }
        if let Some(i) = (1..=n).find(|&i| sigma.apply(i) == i) {
            return Err(WeaveError::FixedPoint(i));
        }
        Ok(WeaveSpec { n, sigma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    /// Non-standard wirings are exploratory: no closed forms apply.
    pub fn is_exploratory(&self) -> bool {
        !self.sigma.is_standard_cycle()
    }
}

#[inline]
pub fn vertex_index(copy: usize, x: usize) -> usize {
    (copy - 1) * PETERSEN_ORDER + x
}

/// Edges of the copies of the Petersen graph, `15n` in total.
fn internal_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(|i| {
        META_ARCS
            .iter()
            .map(move |&(x, y)| (vertex_index(i, x), vertex_index(i, y)))
    })
}

/// Builds the woven graph with `(copy, x)` labels attached.
pub fn build(spec: &WeaveSpec) -> UGraph {
    let n = spec.n;
    let cross = (1..=n).flat_map(|i| {
        let j = spec.sigma.apply(i);
        META_ARCS
            .iter()
            .map(move |&(u, v)| (vertex_index(i, u), vertex_index(j, v)))
    });
    let g = UGraph::from_edges(n * PETERSEN_ORDER, internal_edges(n).chain(cross))
        .expect("woven edges are distinct: the meta-graph is acyclic");
    let labels: Vec<Label> = (1..=n)
        .flat_map(|i| (0..PETERSEN_ORDER).map(move |x| (i, x)))
        .collect();
    g.with_labels(labels)
        .expect("construction labels are bijective")
}

/// Outcome of comparing the woven graph against the union of the Cartesian
/// part and the tensor part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub cartesian_edges: usize,
    pub tensor_edges: usize,
    pub disjoint: bool,
    pub union_matches: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.disjoint && self.union_matches
    }
}

type EdgeSet = BTreeSet<(usize, usize)>;

fn normalised(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Product-vertex `(x, i)` with zero-based copy `i` to woven index.
fn product_index(x: usize, copy: usize) -> usize {
    copy * PETERSEN_ORDER + x
}

/// Cartesian product of the Petersen graph with the edgeless graph on `n`
/// vertices: `(x, i) ~ (y, j)` iff (`x ~ y` and `i = j`) or (`x = y` and
/// `i ~ j`), the latter never holding.
fn cartesian_with_edgeless(n: usize) -> EdgeSet {
    let p = petersen();
    let mut out = EdgeSet::new();
    for x in 0..PETERSEN_ORDER {
        for y in 0..PETERSEN_ORDER {
            for i in 0..n {
                for j in 0..n {
                    let internal = p.has_edge(x, y) && i == j;
                    if internal {
                        out.insert(normalised(product_index(x, i), product_index(y, j)));
                    }
                }
            }
        }
    }
    out
}

/// Underlying undirected graph of the tensor product of the meta-graph with
/// the directed n-cycle: an arc `(u, i) -> (v, j)` whenever `u -> v` and
/// `i -> j`.
fn tensor_with_directed_cycle(n: usize) -> EdgeSet {
    let cycle_arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut out = EdgeSet::new();
    for &(u, v) in &META_ARCS {
        for &(i, j) in &cycle_arcs {
            out.insert(normalised(product_index(u, i), product_index(v, j)));
        }
    }
    out
}

pub fn decomposition_check(spec: &WeaveSpec) -> Result<Decomposition, WeaveError> {
    if !spec.sigma.is_standard_cycle() {
        return Err(WeaveError::NotStandardCycle);
    }
    let cartesian = cartesian_with_edgeless(spec.n);
    let tensor = tensor_with_directed_cycle(spec.n);
    let woven: EdgeSet = build(spec).edges().collect();
    let union: EdgeSet = cartesian.union(&tensor).copied().collect();
    Ok(Decomposition {
        cartesian_edges: cartesian.len(),
        tensor_edges: tensor.len(),
        disjoint: cartesian.is_disjoint(&tensor),
        union_matches: union == woven,
    })
}

/// The claimed closed-form diameter `floor(n/2) + 2` for the standard
/// wiring. It agrees with the measured diameter for `3 <= n <= 8` only; from
/// `n = 9` the measured value is larger.
pub fn expected_diameter(n: usize) -> Result<usize, WeaveError> {
    if n < 3 {
        return Err(WeaveError::BelowClosedFormRange(n));
    }
    Ok(n / 2 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_sequence, diameter, girth, is_connected};

    #[test]
    fn meta_graph_invariants() {
        let m = MetaGraph;
        assert_eq!(m.arcs().len(), 15);
        assert!(m.is_acyclic());
        for v in 0..10 {
            assert_eq!(m.out_degree(v) + m.in_degree(v), 3, "vertex {v}");
        }
        assert_eq!(m.sources(), vec![0]);
        assert_eq!(m.sinks(), vec![8, 9]);
        let p = m.underlying();
        assert_eq!(girth(&p), Some(5));
        assert_eq!(degree_sequence(&p), vec![3; 10]);
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert_eq!(diameter(&p), Some(2));
    }

    #[test]
    fn rejects_degenerate_copy_counts() {
        assert_eq!(WeaveSpec::cycle(1), Err(WeaveError::TooFewCopies(1)));
        assert_eq!(WeaveSpec::cycle(0), Err(WeaveError::TooFewCopies(0)));
        assert!(WeaveSpec::with_sigma(3, Sigma::cycle(4)).is_err());
        let partial = Sigma::parse_cycles("(1 2)", 3).unwrap();
        assert_eq!(
            WeaveSpec::with_sigma(3, partial),
            Err(WeaveError::FixedPoint(3))
        );
    }

    #[test]
    fn build_counts() {
        let g3 = build(&WeaveSpec::cycle(3).unwrap());
        assert_eq!((g3.vertex_count(), g3.edge_count()), (30, 90));
        let g7 = build(&WeaveSpec::cycle(7).unwrap());
        assert_eq!((g7.vertex_count(), g7.edge_count()), (70, 210));
        assert!(degree_sequence(&g7).iter().all(|&d| d == 6));
        let swap = Sigma::parse_cycles("(1 2)", 2).unwrap();
        let g2 = build(&WeaveSpec::with_sigma(2, swap).unwrap());
        assert_eq!((g2.vertex_count(), g2.edge_count()), (20, 60));
    }

    #[test]
    fn three_internal_three_cross_neighbours() {
        for n in 3..=8 {
            let g = build(&WeaveSpec::cycle(n).unwrap());
            let labels = g.labels().unwrap();
            for v in 0..g.vertex_count() {
                let same = g
                    .neighbors(v)
                    .filter(|&w| labels[w].0 == labels[v].0)
                    .count();
                assert_eq!(same, 3);
                assert_eq!(g.degree(v) - same, 3);
            }
        }
    }

    #[test]
    fn directed_two_paths_close_four_cycles() {
        // u -> v -> w in the meta-graph gives (i,u) (i,v) (s(i),w) (s(i),v)
        for n in 3..=6 {
            let spec = WeaveSpec::cycle(n).unwrap();
            let g = build(&spec);
            let mut found = 0;
            for i in 1..=n {
                let j = spec.sigma().apply(i);
                for &(u, v) in &META_ARCS {
                    for &(_, w) in META_ARCS.iter().filter(|a| a.0 == v) {
                        let cyc = [
                            vertex_index(i, u),
                            vertex_index(i, v),
                            vertex_index(j, w),
                            vertex_index(j, v),
                        ];
                        for k in 0..4 {
                            assert!(g.has_edge(cyc[k], cyc[(k + 1) % 4]));
                        }
                        found += 1;
                    }
                }
            }
            assert!(found > 0);
            assert_eq!(girth(&g), Some(4));
        }
    }

    #[test]
    fn reversed_arc_square_is_not_a_cycle() {
        // (i,u) (s(i),v) (s(i),u) (i,v) would need the reverse arc v -> u
        let spec = WeaveSpec::cycle(4).unwrap();
        let g = build(&spec);
        for &(u, v) in &META_ARCS {
            assert!(!g.has_edge(vertex_index(2, u), vertex_index(1, v)));
        }
    }

    #[test]
    fn measured_diameter_matches_closed_form_up_to_eight() {
        for n in 3..=8 {
            let g = build(&WeaveSpec::cycle(n).unwrap());
            assert!(is_connected(&g));
            assert_eq!(diameter(&g), Some(expected_diameter(n).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn closed_form_diameter_undershoots_from_nine() {
        // measured values, cross-checked with an independent BFS
        let measured = [(9, 7), (10, 7), (11, 8), (12, 9)];
        for (n, d) in measured {
            let g = build(&WeaveSpec::cycle(n).unwrap());
            assert_eq!(diameter(&g), Some(d), "n = {n}");
        }
        assert_ne!(expected_diameter(9).unwrap(), 7);
        assert_ne!(expected_diameter(12).unwrap(), 9);
    }

    #[test]
    fn expected_diameter_values() {
        assert_eq!(expected_diameter(3), Ok(3));
        assert_eq!(expected_diameter(5), Ok(4));
        assert_eq!(expected_diameter(7), Ok(5));
        assert!(expected_diameter(2).is_err());
    }

    #[test]
    fn decomposition_holds() {
        for n in 3..=7 {
            let d = decomposition_check(&WeaveSpec::cycle(n).unwrap()).unwrap();
            assert!(d.holds(), "n = {n}");
            assert_eq!(d.cartesian_edges, 15 * n);
            assert_eq!(d.tensor_edges, 15 * n);
        }
        let odd = WeaveSpec::with_sigma(3, Sigma::parse_cycles("(1 3 2)", 3).unwrap()).unwrap();
        assert_eq!(decomposition_check(&odd), Err(WeaveError::NotStandardCycle));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let s = Sigma::parse_cycles("(1 3)(2 4 5)", 6).unwrap();
        assert_eq!(s.apply(1), 3);
        assert_eq!(s.apply(3), 1);
        assert_eq!(s.apply(2), 4);
        assert_eq!(s.apply(5), 2);
        assert_eq!(s.apply(6), 6);
        assert_eq!(s.to_string(), "(1 3)(2 4 5)");
        assert_eq!(Sigma::cycle(4).to_string(), "(1 2 3 4)");
        assert!(Sigma::parse_cycles("(1 2 3 4)", 4)
            .unwrap()
            .is_standard_cycle());
        assert_eq!(Sigma::parse_cycles("()", 3).unwrap().to_string(), "()");
    }

    #[test]
    fn cycle_notation_errors() {
        assert!(matches!(
            Sigma::parse_cycles("(1 2", 3),
            Err(WeaveError::CycleSyntax { .. })
        ));
        assert!(matches!(
            Sigma::parse_cycles("(1 4)", 3),
            Err(WeaveError::InvalidSigma { .. })
        ));
        assert!(matches!(
            Sigma::parse_cycles("(1 2)(2 3)", 3),
            Err(WeaveError::InvalidSigma { .. })
        ));
        assert!(matches!(
            Sigma::parse_cycles("(a b)", 3),
            Err(WeaveError::CycleSyntax { .. })
        ));
        assert!(Sigma::from_one_based(&[2, 2, 1]).is_err());
    }

    #[test]
    fn labels_follow_block_layout() {
        let g = build(&WeaveSpec::cycle(4).unwrap());
        let labels = g.labels().unwrap();
        assert_eq!(labels[0], (1, 0));
        assert_eq!(labels[17], (2, 7));
        assert_eq!(labels[39], (4, 9));
    }
}
