//! Set partitions of `{0, …, n-1}`.
//!
//! [`Partition`] stores the canonical restricted-growth string, so two
//! partitions are equal exactly when they have the same blocks.
//! [`UnionFind`] is the mutable working form used while folding.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut uf = UnionFind::new(p.len());
        let mut first = vec![usize::MAX; p.block_count()];
        for (i, &b) in p.rgs.iter().enumerate() {
            let b = b as usize;
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                uf.union(first[b], i);
            }
        }
        uf
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two distinct sets were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn to_partition(&mut self) -> Partition {
        let n = self.len();
        let mut label = vec![u16::MAX; n];
        let mut rgs = Vec::with_capacity(n);
        let mut next = 0u16;
        for i in 0..n {
            let r = self.find(i);
            if label[r] == u16::MAX {
                label[r] = next;
                next += 1;
            }
            rgs.push(label[r]);
        }
        Partition { rgs, blocks: next as usize }
    }
}

/// A partition in canonical restricted-growth form: element `i` is in block
/// `rgs[i]`, and block labels appear in increasing order of first element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<u16>,
    blocks: usize,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { rgs: (0..n as u16).collect(), blocks: n }
    }

    /// Panics if `rgs` is not a restricted-growth string.
    pub fn from_rgs(rgs: Vec<u16>) -> Self {
        let mut max_seen: i32 = -1;
        for &b in &rgs {
            assert!(i32::from(b) <= max_seen + 1, "not a restricted growth string: {rgs:?}");
            max_seen = max_seen.max(i32::from(b));
        }
        Partition { rgs, blocks: (max_seen + 1) as usize }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.to_partition()
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.rgs[i] as usize
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.rgs[a] == self.rgs[b]
    }

    pub fn rgs(&self) -> &[u16] {
        &self.rgs
    }

    /// Blocks in label order; each block is sorted, so blocks are ordered by
    /// their minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// `true` if every block of `finer` lies inside a block of `self`.
    pub fn is_coarser_or_equal(&self, finer: &Partition) -> bool {
        if self.len() != finer.len() {
            return false;
        }
        let mut image = vec![u16::MAX; finer.block_count()];
        for (i, &b) in finer.rgs.iter().enumerate() {
            let slot = &mut image[b as usize];
            if *slot == u16::MAX {
                *slot = self.rgs[i];
            } else if *slot != self.rgs[i] {
                return false;
            }
        }
        true
    }

    /// Merges the blocks holding `a` and `b` without any folding.
    pub fn merged(&self, a: usize, b: usize) -> Partition {
        let mut uf = UnionFind::from_partition(self);
        uf.union(a, b);
        uf.to_partition()
    }

    /// Pairs `(i, j)` with `i < j` in the same block.
    pub fn equivalent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in 0..j {
                if self.rgs[i] == self.rgs[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Compact text key, e.g. `0.1.1.0`.
    pub fn key(&self) -> String {
        self.rgs.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let names: Vec<String> = b.iter().map(|i| format!("s{i}")).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_key_ignores_representation() {
        let mut a = UnionFind::new(5);
        a.union(4, 0);
        a.union(3, 1);
        let mut b = UnionFind::new(5);
        b.union(1, 3);
        b.union(0, 4);
        assert_eq!(a.to_partition(), b.to_partition());
        assert_eq!(a.to_partition().rgs(), &[0, 1, 2, 1, 0]);
    }

    #[test]
    fn blocks_sorted_by_minimum() {
        let p = Partition::from_rgs(vec![0, 1, 1, 2, 0]);
        assert_eq!(p.blocks(), vec![vec![0, 4], vec![1, 2], vec![3]]);
        assert_eq!(p.to_string(), "{s0,s4} {s1,s2} {s3}");
        assert_eq!(p.equivalent_pairs(), vec![(1, 2), (0, 4)]);
    }

    #[test]
    fn coarsening_order() {
        let fine = Partition::from_rgs(vec![0, 1, 2, 1]);
        let coarse = fine.merged(0, 2);
        assert!(coarse.is_coarser_or_equal(&fine));
        assert!(!fine.is_coarser_or_equal(&coarse));
        assert!(fine.is_coarser_or_equal(&Partition::discrete(4)));
    }

    proptest! {
        #[test]
        fn union_order_does_not_matter(pairs in proptest::collection::vec((0usize..8, 0usize..8), 0..12)) {
            let mut fwd = UnionFind::new(8);
            for &(a, b) in &pairs { fwd.union(a, b); }
            let mut rev = UnionFind::new(8);
            for &(a, b) in pairs.iter().rev() { rev.union(b, a); }
            let p = fwd.to_partition();
            prop_assert_eq!(&p, &rev.to_partition());
            prop_assert_eq!(Partition::from_blocks(8, &p.blocks()), p);
        }
    }
}
