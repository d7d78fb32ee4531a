//! Individualization-refinement search trees.
//!
//! The leftmost path of the tree fixes a base `v_0, v_1, ...`. Working from
//! the deepest level up, every other vertex `w` in the target cell at level
//! `i` is either already in the orbit of `v_i` under the generators found so
//! far, or the subtree below `w` is searched for a leaf equivalent to the
//! reference leaf. This yields a strong generating set and the group order as
//! the product of basic orbit lengths.

use crate::graph::UGraph;

use super::perm::Permutation;
use super::refine::Partition;
use super::SymmetryError;

pub(crate) struct Search<'a> {
    g: &'a UGraph,
    visited: u64,
    budget: u64,
}

/// Invariant of a tree node used to prune subtrees.
#[derive(PartialEq, Eq)]
struct NodeKey {
    trace: u64,
    shape: Vec<(usize, usize)>,
}

impl NodeKey {
    fn of(p: &Partition) -> Self {
        NodeKey {
            trace: p.trace,
            shape: p.shape(),
        }
    }
}

pub(crate) struct GroupResult {
    pub generators: Vec<Permutation>,
    pub order: u128,
}

/// Leaf-to-leaf bijection: position `k` of `from` maps to position `k` of
/// `to`.
fn leaf_map(from: &Partition, to: &Partition) -> Permutation {
    let mut images = vec![0; from.elems.len()];
    for (&a, &b) in from.elems.iter().zip(&to.elems) {
        images[a] = b;
    }
    Permutation::from_images_unchecked(images)
}

/// True when `p` maps every edge of `g` onto an edge of `h` (edge counts
/// must already agree).
fn preserves_edges(g: &UGraph, h: &UGraph, p: &Permutation) -> bool {
    g.edges().all(|(u, v)| h.has_edge(p.apply(u), p.apply(v)))
}

fn orbit_of(v: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

impl<'a> Search<'a> {
    pub fn new(g: &'a UGraph, budget: u64) -> Self {
        Search {
            g,
            visited: 0,
            budget,
        }
    }

    pub fn visited(&self) -> u64 {
        self.visited
    }

    fn tick(&mut self) -> Result<(), SymmetryError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(SymmetryError::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Leftmost path from `root` down to a discrete partition.
    fn leftmost_path(
        &mut self,
        g: &UGraph,
        root: Partition,
    ) -> Result<Vec<Partition>, SymmetryError> {
        let mut path = vec![root];
        loop {
            let last = path.last().expect("path is non-empty");
            let Some((start, _)) = last.target_cell() else {
                return Ok(path);
            };
            self.tick()?;
            let v = last.cell(start)[0];
            let child = last.individualize(g, v);
            path.push(child);
        }
    }

    /// Depth-first search below `node` (a node of the tree for `target`) for
    /// a leaf whose bijection from `reference_leaf` maps `self.g` onto
    /// `target`. `keys[k]` is the reference node invariant at depth `k`.
    fn find_equivalent_leaf(
        &mut self,
        target: &UGraph,
        node: &Partition,
        depth: usize,
        keys: &[NodeKey],
        reference_leaf: &Partition,
    ) -> Result<Option<Permutation>, SymmetryError> {
        self.tick()?;
        if keys.get(depth).is_none_or(|k| *k != NodeKey::of(node)) {
            return Ok(None);
        }
        match node.target_cell() {
            None => {
                let p = leaf_map(reference_leaf, node);
                Ok(preserves_edges(self.g, target, &p).then_some(p))
            }
            Some((start, _)) => {
                for &u in node.cell(start) {
                    let child = node.individualize(target, u);
                    if let Some(p) =
                        self.find_equivalent_leaf(target, &child, depth + 1, keys, reference_leaf)?
                    {
                        return Ok(Some(p));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Generators and order of the automorphism group of `self.g`.
    pub fn automorphisms(&mut self) -> Result<GroupResult, SymmetryError> {
        let g = self.g;
        let n = g.vertex_count();
        let path = self.leftmost_path(g, Partition::equitable_unit(g))?;
        let keys: Vec<NodeKey> = path.iter().map(NodeKey::of).collect();
        let leaf = path.last().expect("path is non-empty").clone();

        let mut generators: Vec<Permutation> = Vec::new();
        let mut order: u128 = 1;
        for level in (0..path.len() - 1).rev() {
            let node = &path[level];
            let (start, _) = node.target_cell().expect("internal node has a target cell");
            let cell = node.cell(start).to_vec();
            let base = cell[0];
            let mut orbit = orbit_of(base, &generators, n);
            for &w in &cell[1..] {
                if orbit[w] {
                    continue;
                }
                let child = node.individualize(g, w);
                if let Some(p) = self.find_equivalent_leaf(g, &child, level + 1, &keys, &leaf)? {
                    generators.push(p);
                    orbit = orbit_of(base, &generators, n);
                }
            }
            let orbit_len = orbit.iter().filter(|&&b| b).count() as u128;
            order = order
                .checked_mul(orbit_len)
                .ok_or(SymmetryError::OrderOverflow)?;
        }
        Ok(GroupResult { generators, order })
    }

    /// A bijection mapping `self.g` onto `h`, if one exists.
    pub fn isomorphism_to(&mut self, h: &UGraph) -> Result<Option<Permutation>, SymmetryError> {
        let g = self.g;
        if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
            return Ok(None);
        }
        let mut gd: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        let mut hd: Vec<usize> = (0..h.vertex_count()).map(|v| h.degree(v)).collect();
        gd.sort_unstable();
        hd.sort_unstable();
        if gd != hd {
            return Ok(None);
        }
        let path = self.leftmost_path(g, Partition::equitable_unit(g))?;
        let keys: Vec<NodeKey> = path.iter().map(NodeKey::of).collect();
        let leaf = path.last().expect("path is non-empty").clone();
        let root = Partition::equitable_unit(h);
        self.find_equivalent_leaf(h, &root, 0, &keys, &leaf)
    }
}
