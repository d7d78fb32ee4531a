//! Ordered partitions and equitable refinement.
//!
//! Cells occupy contiguous ranges of `elems` and are identified by their
//! start position. Splitting keeps fragments inside the parent's range, so
//! every decision made here depends only on positions and neighbour counts;
//! relabelling the graph relabels the result and leaves the trace unchanged.

use std::collections::VecDeque;

use crate::graph::UGraph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    /// Vertices in cell order.
    pub elems: Vec<usize>,
    /// `cell_end[s]` is the exclusive end of the cell starting at `s`.
    cell_end: Vec<usize>,
    /// Start of the cell containing each vertex.
    cell_of: Vec<usize>,
    cells: usize,
    /// Hash of every split performed on the way to this partition.
    pub trace: u64,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n.max(1)];
        cell_end[0] = n;
        Partition {
            elems: (0..n).collect(),
            cell_end,
            cell_of: vec![0; n],
            cells: usize::from(n > 0),
            trace: 0xcbf2_9ce4_8422_2325,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    #[cfg(test)]
    pub fn cell_count(&self) -> usize {
        self.cells
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.elems.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s = self.cell_end[cur];
            Some(cur)
        })
    }

    /// `(start, end)` of every cell, in order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.starts().map(|s| (s, self.cell_end[s])).collect()
    }

    /// First smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<(usize, usize)> {
        self.starts()
            .map(|s| (s, self.cell_end[s]))
            .filter(|(s, e)| e - s > 1)
            .min_by_key(|(s, e)| (e - s, *s))
    }

    /// Moves `v` to the front of its cell as a singleton and refines.
    pub fn individualize(&self, g: &UGraph, v: usize) -> Partition {
        let mut p = self.clone();
        let start = p.cell_of[v];
        let end = p.cell_end[start];
        debug_assert!(end - start > 1, "individualizing a singleton");
        let at = start
            + p.elems[start..end]
                .iter()
                .position(|&x| x == v)
                .expect("v in its cell");
        p.elems[start..=at].rotate_right(1);
        p.cell_end[start] = start + 1;
        p.cell_end[start + 1] = end;
        for &x in &p.elems[start + 1..end] {
            p.cell_of[x] = start + 1;
        }
        p.cells += 1;
        p.trace = mix(p.trace, (start as u64) << 32 | (end - start) as u64);
        p.refine(g, vec![start]);
        p
    }

    /// Equitable refinement starting from the given splitter cells.
    pub fn refine(&mut self, g: &UGraph, initial: Vec<usize>) {
        let n = self.elems.len();
        let words = n.div_ceil(64);
        let mut in_queue = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in initial {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut splitter = vec![0u64; words];
        let mut counts = vec![0usize; n];
        let mut scratch: Vec<(usize, usize)> = Vec::new();

        while let Some(s) = queue.pop_front() {
            in_queue[s] = false;
            if self.is_discrete() {
                break;
            }
            splitter.fill(0);
            for &x in &self.elems[s..self.cell_end[s]] {
                splitter[x / 64] |= 1 << (x % 64);
            }
            let starts: Vec<usize> = self.starts().collect();
            for start in starts {
                let end = self.cell_end[start];
                if end - start == 1 {
                    continue;
                }
                for &x in &self.elems[start..end] {
                    counts[x] = g
                        .row(x)
                        .iter()
                        .zip(&splitter)
                        .map(|(a, b)| (a & b).count_ones() as usize)
                        .sum();
                }
                let first = counts[self.elems[start]];
                if self.elems[start..end].iter().all(|&x| counts[x] == first) {
                    continue;
                }
                scratch.clear();
                scratch.extend(self.elems[start..end].iter().map(|&x| (counts[x], x)));
                scratch.sort_by_key(|&(c, _)| c);
                self.trace = mix(
                    self.trace,
                    (s as u64) << 40 | (start as u64) << 20 | (end - start) as u64,
                );

                let mut frag = start;
                for (k, &(c, x)) in scratch.iter().enumerate() {
                    let pos = start + k;
                    if k > 0 && c != scratch[k - 1].0 {
                        self.cell_end[frag] = pos;
                        self.trace = mix(self.trace, (c as u64) << 32 | (pos - frag) as u64);
                        frag = pos;
                        self.cells += 1;
                    }
                    self.elems[pos] = x;
                    self.cell_of[x] = frag;
                }
                self.cell_end[frag] = end;

                let mut f = start;
                while f < end {
                    if !in_queue[f] {
                        in_queue[f] = true;
                        queue.push_back(f);
                    }
                    f = self.cell_end[f];
                }
            }
        }
    }

    /// Refines the unit partition of `g`.
    pub fn equitable_unit(g: &UGraph) -> Partition {
        let mut p = Partition::unit(g.vertex_count());
        if g.vertex_count() > 0 {
            p.refine(g, vec![0]);
        }
        p
    }

    pub fn cell(&self, start: usize) -> &[usize] {
        &self.elems[start..self.cell_end[start]]
    }
}
