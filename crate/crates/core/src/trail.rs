//! The open trail of a word and the folding closure on partitions of its
//! vertices.

use serde::Serialize;

use crate::partition::{Partition, UnionFind};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrailEdge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

/// Path graph on `s_0..s_{|w|}`; letter `j` (0-based) joins `s_j` and
/// `s_{j+1}`, pointing forward for a generator and backward for an inverse.
#[derive(Debug, Clone)]
pub struct OpenTrail {
    word: Word,
    edges: Vec<TrailEdge>,
    same_label_pairs: Vec<(usize, usize)>,
}

impl OpenTrail {
    pub fn new(word: &Word) -> Self {
        let edges: Vec<TrailEdge> = word
            .letters()
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let (from, to) = if l.is_inverse() { (j + 1, j) } else { (j, j + 1) };
                TrailEdge { from, to, label: l.generator() }
            })
            .collect();
        let mut same_label_pairs = Vec::new();
        for j in 0..edges.len() {
            for i in 0..j {
                if edges[i].label == edges[j].label {
                    same_label_pairs.push((i, j));
                }
            }
        }
        OpenTrail { word: word.clone(), edges, same_label_pairs }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    /// Index of `s_{|w|}`.
    pub fn last_vertex(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TrailEdge] {
        &self.edges
    }

    /// Unordered pairs of same-label edges, as edge indices `(i, j)`, `i < j`.
    pub fn same_label_pairs(&self) -> &[(usize, usize)] {
        &self.same_label_pairs
    }

    /// Smallest partition coarser than `p` in which no two same-label edges
    /// share an origin or a terminus.
    pub fn fold_closure(&self, p: &Partition) -> Partition {
        let mut uf = UnionFind::from_partition(p);
        self.fold_in_place(&mut uf, None);
        uf.to_partition()
    }

    /// Same closure, visiting the same-label edge pairs in `order` (a
    /// permutation of `0..same_label_pairs().len()`). The result does not
    /// depend on the order.
    pub fn fold_closure_in_order(&self, p: &Partition, order: &[usize]) -> Partition {
        let mut uf = UnionFind::from_partition(p);
        self.fold_in_place(&mut uf, Some(order));
        uf.to_partition()
    }

    /// Merges the blocks of `a` and `b`, then folds.
    pub fn merge_and_fold(&self, p: &Partition, a: usize, b: usize) -> Partition {
        let mut uf = UnionFind::from_partition(p);
        uf.union(a, b);
        self.fold_in_place(&mut uf, None);
        uf.to_partition()
    }

    /// The quotient generated by a set of vertex pairs: merge each pair in the
    /// given order, folding after each merge.
    pub fn generate(&self, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(self.vertex_count());
        for &(a, b) in pairs {
            uf.union(a, b);
            self.fold_in_place(&mut uf, None);
        }
        uf.to_partition()
    }

    fn fold_in_place(&self, uf: &mut UnionFind, order: Option<&[usize]>) {
        let pairs = &self.same_label_pairs;
        loop {
            let mut changed = false;
            let mut step = |idx: usize, uf: &mut UnionFind| {
                let (i, j) = pairs[idx];
                let (e, f) = (self.edges[i], self.edges[j]);
                if uf.same(e.from, f.from) {
                    changed |= uf.union(e.to, f.to);
                }
                if uf.same(e.to, f.to) {
                    changed |= uf.union(e.from, f.from);
                }
            };
            match order {
                Some(order) => order.iter().for_each(|&idx| step(idx, uf)),
                None => (0..pairs.len()).for_each(|idx| step(idx, uf)),
            }
            if !changed {
                break;
            }
        }
    }

    /// No two same-label edges share an origin or a terminus.
    pub fn is_folded(&self, p: &Partition) -> bool {
        self.same_label_pairs.iter().all(|&(i, j)| {
            let (e, f) = (self.edges[i], self.edges[j]);
            p.same(e.from, f.from) == p.same(e.to, f.to)
        })
    }

    /// `s_0 ≡ s_{|w|}`.
    pub fn is_closed(&self, p: &Partition) -> bool {
        p.same(0, self.last_vertex())
    }

    pub fn is_realizable(&self, p: &Partition) -> bool {
        p.len() == self.vertex_count() && self.is_closed(p) && self.is_folded(p)
    }
}
