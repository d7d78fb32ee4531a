use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

/// A bijection on `0..len`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// `None` unless `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_some());
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`: `v -> other(self(v))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// All elements of the group generated by `gens` on `n` points, or `None`
/// once more than `limit` elements have been produced.
pub fn enumerate_group(gens: &[Permutation], n: usize, limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(elements)
}

/// Connected components of the union of the generators' functional graphs,
/// each sorted, listed by smallest element.
pub fn orbit_partition(gens: &[Permutation], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[slot[r]].push(v);
    }
    cells
}
