//! Realizable quotient graphs of the open trail.
//!
//! A realizable quotient is a partition of `s_0..s_{|w|}` that identifies
//! `s_0` with `s_{|w|}` and is folded. Two routes enumerate them:
//! a restricted-growth-string sweep over all set partitions (complete, used
//! for short words) and breadth-first coarsening from the universal graph
//! bounded by Euler characteristic. The coarsening depth of a graph also
//! decides its type: a graph is type A exactly when it is reached from the
//! universal graph with `χ - 1` merges.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::Level;
use crate::partition::Partition;
use crate::trail::OpenTrail;
use crate::word::Word;

/// Default cap on `|w|` for full enumeration (Bell(11) partitions).
pub const DEFAULT_FULL_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuotientType {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuotientEdge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

/// Topological shape of a graph after pruning leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GraphShape {
    Circle,
    FigureEight,
    Theta,
    Barbell,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    partition: Partition,
    blocks: Vec<Vec<usize>>,
    edges: Vec<QuotientEdge>,
    /// Distinct edges per label; index 0 is label 1.
    edge_counts: Vec<usize>,
    chi: i64,
    #[serde(rename = "type")]
    type_tag: Option<QuotientType>,
}

impl QuotientGraph {
    pub fn from_partition(trail: &OpenTrail, partition: Partition) -> Self {
        let k = trail.word().k() as usize;
        let edges: BTreeSet<QuotientEdge> = trail
            .edges()
            .iter()
            .map(|e| QuotientEdge {
                from: partition.block_of(e.from),
                to: partition.block_of(e.to),
                label: e.label,
            })
            .collect();
        let mut edge_counts = vec![0; k];
        for e in &edges {
            edge_counts[e.label as usize - 1] += 1;
        }
        let chi = edges.len() as i64 - partition.block_count() as i64 + 1;
        QuotientGraph {
            blocks: partition.blocks(),
            partition,
            edges: edges.into_iter().collect(),
            edge_counts,
            chi,
            type_tag: None,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn edges(&self) -> &[QuotientEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_counts(&self) -> &[usize] {
        &self.edge_counts
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn type_tag(&self) -> Option<QuotientType> {
        self.type_tag
    }

    pub fn with_type(mut self, t: QuotientType) -> Self {
        self.type_tag = Some(t);
        self
    }

    pub fn key(&self) -> String {
        self.partition.key()
    }

    fn block_name(block: &[usize]) -> String {
        block.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("|")
    }

    /// Graphviz rendering; vertices are named by their sorted trail indices.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for b in &self.blocks {
            let _ = writeln!(out, "  \"{}\";", Self::block_name(b));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                Self::block_name(&self.blocks[e.from]),
                Self::block_name(&self.blocks[e.to]),
                e.label
            );
        }
        out.push_str("}\n");
        out
    }

    /// Shape of the graph with hanging trees removed.
    pub fn shape(&self) -> GraphShape {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.from].push((id, e.to));
            adj[e.to].push((id, e.from));
        }
        let mut alive_edge = vec![true; self.edges.len()];
        let mut alive = vec![true; n];
        let degree = |v: usize, adj: &Vec<Vec<(usize, usize)>>, alive_edge: &Vec<bool>| {
            adj[v].iter().filter(|(e, _)| alive_edge[*e]).count()
        };
        loop {
            let leaf = (0..n).find(|&v| alive[v] && degree(v, &adj, &alive_edge) == 1);
            match leaf {
                Some(v) => {
                    alive[v] = false;
                    for &(e, _) in &adj[v] {
                        alive_edge[e] = false;
                    }
                }
                None => break,
            }
        }
        let deg: Vec<usize> = (0..n).map(|v| degree(v, &adj, &alive_edge)).collect();
        let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
        match branch.as_slice() {
            [] if deg.contains(&2) => GraphShape::Circle,
            [v] if deg[*v] == 4 => GraphShape::FigureEight,
            [p, q] if deg[*p] == 3 && deg[*q] == 3 => {
                let mut back_to_start = false;
                for &(e0, u0) in adj[*p].iter().filter(|(e, _)| alive_edge[*e]) {
                    let (mut prev, mut u) = (e0, u0);
                    while deg[u] == 2 {
                        let &(e, next) = adj[u]
                            .iter()
                            .find(|(e, _)| alive_edge[*e] && *e != prev)
                            .expect("degree-2 vertex has a second edge");
                        prev = e;
                        u = next;
                    }
                    if u == *p {
                        back_to_start = true;
                    }
                }
                if back_to_start {
                    GraphShape::Barbell
                } else {
                    GraphShape::Theta
                }
            }
            _ => GraphShape::Other,
        }
    }
}

/// Euler characteristic of the quotient of `trail` by `p`, without building
/// the graph.
pub fn chi_of(trail: &OpenTrail, p: &Partition) -> i64 {
    let mut edges: Vec<(usize, usize, u8)> = trail
        .edges()
        .iter()
        .map(|e| (p.block_of(e.from), p.block_of(e.to), e.label))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges.len() as i64 - p.block_count() as i64 + 1
}

/// The quotient generated by `{s_0, s_|w|}` alone.
pub fn universal_partition(trail: &OpenTrail) -> Partition {
    trail.generate(&[(0, trail.last_vertex())])
}

/// The universal graph of a nonempty cyclically reduced word: a simple circle
/// on `|w|` vertices.
pub fn universal_graph(w: &Word) -> Result<QuotientGraph> {
    if w.is_empty() || !w.is_cyclically_reduced() {
        return Err(Error::precondition(format!(
            "universal graph needs a nonempty cyclically reduced word, got {w:?}",
            w = w.to_string()
        )));
    }
    let trail = OpenTrail::new(w);
    let g = QuotientGraph::from_partition(&trail, universal_partition(&trail));
    Ok(g.with_type(QuotientType::A))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Full,
    UpToChi(u32),
}

/// All realizable quotients of `w`'s trail (full mode) or those with
/// `χ ≤ c`, sorted by partition key, each tagged with its type.
pub fn enumerate_qw(w: &Word, mode: EnumerationMode, cap: usize) -> Result<Vec<QuotientGraph>> {
    let trail = OpenTrail::new(w);
    let depths = match mode {
        EnumerationMode::Full => {
            if w.len() > cap {
                return Err(Error::Resource {
                    what: format!("full enumeration of a word of length {}", w.len()),
                    cap: cap as u128,
                });
            }
            let depths = coarsening_depths(&trail, None);
            let partitions = enumerate_realizable_partitions(&trail);
            if partitions.len() != depths.len() {
                return Err(Error::internal(format!(
                    "partition sweep found {} quotients but coarsening reached {}",
                    partitions.len(),
                    depths.len()
                )));
            }
            depths
        }
        EnumerationMode::UpToChi(c) => coarsening_depths(&trail, Some(c as i64)),
    };
    let mut graphs: Vec<QuotientGraph> = depths
        .into_iter()
        .map(|(p, depth)| {
            let g = QuotientGraph::from_partition(&trail, p);
            let t = type_from_depth(g.chi(), depth);
            g.with_type(t)
        })
        .collect();
    graphs.sort_by(|a, b| a.partition.cmp(&b.partition));
    Ok(graphs)
}

fn type_from_depth(chi: i64, depth: usize) -> QuotientType {
    if chi >= 1 && depth as i64 == chi - 1 {
        QuotientType::A
    } else {
        QuotientType::B
    }
}

/// Every realizable partition, by restricted-growth-string enumeration that
/// rejects a prefix as soon as two same-label edges inside it disagree.
pub fn enumerate_realizable_partitions(trail: &OpenTrail) -> Vec<Partition> {
    let n = trail.vertex_count();
    // Pair (i, j) of edges becomes checkable once vertex j+1 is assigned.
    let mut checks: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); n];
    for &(i, j) in trail.same_label_pairs() {
        let (e, f) = (trail.edges()[i], trail.edges()[j]);
        checks[j + 1].push((e.from, f.from, e.to, f.to));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u16; n];
    fn recurse(
        m: usize,
        max_label: u16,
        rgs: &mut Vec<u16>,
        checks: &[Vec<(usize, usize, usize, usize)>],
        out: &mut Vec<Partition>,
    ) {
        let n = rgs.len();
        if m == n {
            if rgs[0] == rgs[n - 1] {
                out.push(Partition::from_rgs(rgs.clone()));
            }
            return;
        }
        let choices: Vec<u16> = if m == n - 1 && n > 1 { vec![0] } else { (0..=max_label + 1).collect() };
        for b in choices {
            rgs[m] = b;
            let ok = checks[m]
                .iter()
                .all(|&(o1, o2, t1, t2)| (rgs[o1] == rgs[o2]) == (rgs[t1] == rgs[t2]));
            if ok {
                recurse(m + 1, max_label.max(b), rgs, checks, out);
            }
        }
    }
    if n == 1 {
        return vec![Partition::discrete(1)];
    }
    rgs[0] = 0;
    let ok0 = checks[0].is_empty();
    debug_assert!(ok0);
    recurse(1, 0, &mut rgs, &checks, &mut out);
    out
}

/// Breadth-first coarsening from the universal partition: each step merges
/// two blocks and folds. Returns every reached partition with `χ ≤ max_chi`
/// and its least number of merges.
pub fn coarsening_depths(trail: &OpenTrail, max_chi: Option<i64>) -> Vec<(Partition, usize)> {
    let start = universal_partition(trail);
    let mut seen: HashMap<Partition, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    if max_chi.is_none_or(|c| chi_of(trail, &start) <= c) {
        seen.insert(start.clone(), 0);
        queue.push_back(start);
    }
    while let Some(p) = queue.pop_front() {
        let depth = seen[&p];
        let reps: Vec<usize> = p.blocks().iter().map(|b| b[0]).collect();
        for j in 0..reps.len() {
            for i in 0..j {
                let q = trail.merge_and_fold(&p, reps[i], reps[j]);
                if seen.contains_key(&q) {
                    continue;
                }
                if max_chi.is_some_and(|c| chi_of(trail, &q) > c) {
                    continue;
                }
                seen.insert(q.clone(), depth + 1);
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<(Partition, usize)> = seen.into_iter().collect();
    out.sort();
    out
}

/// Type of `g` by exhaustive search: type A iff some set of `χ - 1` pairs,
/// together with `{s_0, s_|w|}`, generates `g`. Candidate pairs are pairs of
/// universal-graph blocks lying in one block of `g`.
pub fn classify_type(w: &Word, g: &QuotientGraph) -> Result<QuotientType> {
    let trail = OpenTrail::new(w);
    if !trail.is_realizable(g.partition()) {
        return Err(Error::domain(format!(
            "partition {} is not a realizable quotient of {w}",
            g.partition()
        )));
    }
    let chi = g.chi();
    if chi <= 0 {
        return Ok(QuotientType::B);
    }
    let base = universal_partition(&trail);
    let target = g.partition();
    let reps: Vec<usize> = base.blocks().iter().map(|b| b[0]).collect();
    let mut candidates = Vec::new();
    for j in 0..reps.len() {
        for i in 0..j {
            if target.same(reps[i], reps[j]) {
                candidates.push((reps[i], reps[j]));
            }
        }
    }
    let need = (chi - 1) as usize;
    let found = any_subset(&candidates, need, &mut Vec::new(), 0, &mut |subset| {
        let mut p = base.clone();
        for &(a, b) in subset {
            p = trail.merge_and_fold(&p, a, b);
        }
        &p == target
    });
    Ok(if found { QuotientType::A } else { QuotientType::B })
}

fn any_subset<T: Copy>(
    items: &[T],
    size: usize,
    chosen: &mut Vec<T>,
    from: usize,
    test: &mut dyn FnMut(&[T]) -> bool,
) -> bool {
    if chosen.len() == size {
        return test(chosen);
    }
    for i in from..items.len() {
        if items.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(items[i]);
        let hit = any_subset(items, size, chosen, i + 1, test);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// Least number of pairs generating each folded partition of the trail,
/// by breadth-first search from the discrete partition over all folded
/// partitions.
pub fn generation_depths(trail: &OpenTrail) -> HashMap<Partition, usize> {
    let start = Partition::discrete(trail.vertex_count());
    let mut seen = HashMap::from([(start.clone(), 0usize)]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let depth = seen[&p];
        let reps: Vec<usize> = p.blocks().iter().map(|b| b[0]).collect();
        for j in 0..reps.len() {
            for i in 0..j {
                let q = trail.merge_and_fold(&p, reps[i], reps[j]);
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), depth + 1);
                    queue.push_back(q);
                }
            }
        }
    }
    seen
}

/// Least size of a generating set of pairs for `target`, trying all subsets
/// of its within-block pairs in increasing size up to `max_size`.
pub fn min_generating_set_brute(trail: &OpenTrail, target: &Partition, max_size: usize) -> Option<usize> {
    let pairs = target.equivalent_pairs();
    (0..=max_size).find(|&size| {
        any_subset(&pairs, size, &mut Vec::new(), 0, &mut |subset| &trail.generate(subset) == target)
    })
}

/// β on the cyclic core of the reduced word: least χ of a type-B quotient.
pub fn beta(w: &Word, chi_budget: u32, allow_full: bool, cap: usize) -> Result<Level> {
    let reduced = w.reduce();
    if reduced.is_empty() {
        return Ok(Level::Finite(0));
    }
    let (core, _) = reduced.cyclic_reduce();
    if allow_full {
        let graphs = enumerate_qw(&core, EnumerationMode::Full, cap)?;
        Ok(beta_from_graphs(&graphs, None))
    } else {
        let graphs = enumerate_qw(&core, EnumerationMode::UpToChi(chi_budget), cap)?;
        Ok(beta_from_graphs(&graphs, Some(chi_budget)))
    }
}

/// β read off type-tagged graphs. `budget` is `None` when `graphs` is all
/// of `Q_w`.
pub fn beta_from_graphs(graphs: &[QuotientGraph], budget: Option<u32>) -> Level {
    let min_b = graphs
        .iter()
        .filter(|g| g.type_tag() == Some(QuotientType::B))
        .filter(|g| budget.is_none_or(|c| g.chi() <= c as i64))
        .map(|g| g.chi())
        .min();
    match (min_b, budget) {
        (Some(c), _) => Level::Finite(c as u32),
        (None, None) => Level::Infinite,
        (None, Some(c)) => Level::GreaterThan(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn blocks_of(g: &QuotientGraph) -> Vec<Vec<usize>> {
        g.blocks().to_vec()
    }

    #[test]
    fn universal_graph_examples() {
        let g = universal_graph(&w("abAB")).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.chi()), (4, 4, 1));
        assert_eq!(g.shape(), GraphShape::Circle);
        let g = universal_graph(&w("a")).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.chi()), (1, 1, 1));
        let g = universal_graph(&w("aababAb")).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.chi()), (7, 7, 1));
        assert_eq!(g.edge_counts(), &[4, 3]);
        assert!(matches!(universal_graph(&w("")), Err(Error::Precondition(_))));
        assert!(matches!(universal_graph(&w("Bab")), Err(Error::Precondition(_))));
    }

    #[test]
    fn commutator_has_seven_quotients() {
        let graphs = enumerate_qw(&w("abAB"), EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap();
        assert_eq!(graphs.len(), 7);
        let mut chis: Vec<i64> = graphs.iter().map(|g| g.chi()).collect();
        chis.sort();
        assert_eq!(chis, vec![1, 2, 2, 2, 2, 2, 3]);
        let type_b: Vec<_> = graphs.iter().filter(|g| g.type_tag() == Some(QuotientType::B)).collect();
        assert_eq!(type_b.len(), 1);
        assert_eq!(blocks_of(type_b[0]), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn single_letter_has_one_quotient() {
        let graphs = enumerate_qw(&w("a"), EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0].chi(), 1);
        assert_eq!(graphs[0].type_tag(), Some(QuotientType::A));
    }

    #[test]
    fn empty_word_quotient() {
        let graphs = enumerate_qw(&w(""), EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0].chi(), 0);
        assert_eq!(graphs[0].type_tag(), Some(QuotientType::B));
    }

    #[test]
    fn full_cap_enforced() {
        let err = enumerate_qw(&w("abababababa"), EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: 10, .. }));
    }

    #[test]
    fn chi_examples() {
        let trail = OpenTrail::new(&w("abAB"));
        let fig8 = QuotientGraph::from_partition(&trail, Partition::from_rgs(vec![0; 5]));
        assert_eq!(fig8.chi(), 2);
        assert_eq!(fig8.shape(), GraphShape::FigureEight);
        let empty = OpenTrail::new(&w(""));
        assert_eq!(QuotientGraph::from_partition(&empty, Partition::discrete(1)).chi(), 0);
    }

    #[test]
    fn classify_commutator_graphs() {
        let c = w("abAB");
        let trail = OpenTrail::new(&c);
        let fig8 = QuotientGraph::from_partition(&trail, Partition::from_rgs(vec![0; 5]));
        assert_eq!(classify_type(&c, &fig8).unwrap(), QuotientType::B);
        assert_eq!(classify_type(&c, &universal_graph(&c).unwrap()).unwrap(), QuotientType::A);
        let barbell = QuotientGraph::from_partition(&trail, Partition::from_rgs(vec![0, 0, 1, 1, 0]));
        assert_eq!(barbell.shape(), GraphShape::Barbell);
        assert_eq!(classify_type(&c, &barbell).unwrap(), QuotientType::A);
        assert_eq!(trail.generate(&[(0, 1), (0, 4)]), *barbell.partition());
        let not_realizable = QuotientGraph::from_partition(&trail, Partition::discrete(5));
        assert!(matches!(classify_type(&c, &not_realizable), Err(Error::Domain(_))));
    }

    #[test]
    fn brute_force_type_matches_coarsening_depth() {
        for s in ["abAB", "aababAb", "abab", "aaBaab", "abcABC", "Bab", "aabbAB"] {
            let word = w(s);
            for g in enumerate_qw(&word, EnumerationMode::UpToChi(3), DEFAULT_FULL_CAP).unwrap() {
                assert_eq!(Some(classify_type(&word, &g).unwrap()), g.type_tag(), "{s} {}", g.partition());
            }
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&w("abAB"), 3, false, DEFAULT_FULL_CAP).unwrap(), Level::Finite(2));
        assert_eq!(beta(&w("abab"), 3, false, DEFAULT_FULL_CAP).unwrap(), Level::Finite(1));
        assert_eq!(beta(&w("a"), 3, true, DEFAULT_FULL_CAP).unwrap(), Level::Infinite);
        assert_eq!(beta(&w("a"), 3, false, DEFAULT_FULL_CAP).unwrap(), Level::GreaterThan(3));
        assert_eq!(beta(&w("abBA"), 3, false, DEFAULT_FULL_CAP).unwrap(), Level::Finite(0));
        assert!(matches!(beta(&w("abababababa"), 3, true, DEFAULT_FULL_CAP), Err(Error::Resource { .. })));
    }

    #[test]
    fn bounded_enumeration_is_a_filter_of_full() {
        for s in ["abAB", "aababAb", "abab", "aabAB", "abcacb", "aaa"] {
            let word = w(s);
            let full = enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap();
            for c in 0..=3 {
                let bounded = enumerate_qw(&word, EnumerationMode::UpToChi(c), DEFAULT_FULL_CAP).unwrap();
                let filtered: Vec<_> = full.iter().filter(|g| g.chi() <= c as i64).cloned().collect();
                assert_eq!(bounded, filtered, "{s} c={c}");
            }
        }
    }

    #[test]
    fn every_quotient_coarsens_the_universal_graph() {
        for s in ["abAB", "aababAb", "abcACb"] {
            let word = w(s);
            let u = universal_graph(&word).unwrap();
            for g in enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap() {
                assert!(g.partition().is_coarser_or_equal(u.partition()));
            }
        }
    }

    #[test]
    fn single_merge_raises_chi_by_at_most_one() {
        for s in ["abAB", "aababAb", "aaBBab"] {
            let word = w(s);
            let trail = OpenTrail::new(&word);
            for g in enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP).unwrap() {
                let reps: Vec<usize> = g.blocks().iter().map(|b| b[0]).collect();
                for j in 0..reps.len() {
                    for i in 0..j {
                        let q = trail.merge_and_fold(g.partition(), reps[i], reps[j]);
                        let d = chi_of(&trail, &q) - g.chi();
                        assert!(d <= 1, "{s}: {} -> {q} changes chi by {d}", g.partition());
                    }
                }
            }
        }
        // Folding can collapse edges, so a merge may also lower χ.
        let trail = OpenTrail::new(&w("abAB"));
        let p = Partition::from_rgs(vec![0, 1, 0, 1, 0]);
        assert_eq!(chi_of(&trail, &p), 3);
        assert_eq!(chi_of(&trail, &trail.merge_and_fold(&p, 0, 1)), 2);
    }

    #[test]
    fn generation_depth_matches_brute_force() {
        for s in ["abAB", "aab", "abAb"] {
            let trail = OpenTrail::new(&w(s));
            let depths = generation_depths(&trail);
            for (p, d) in &depths {
                assert_eq!(min_generating_set_brute(&trail, p, 4), Some(*d), "{s} {p}");
            }
        }
    }

    #[test]
    fn dot_export() {
        let trail = OpenTrail::new(&w("abAB"));
        let g = QuotientGraph::from_partition(&trail, trail.generate(&[(0, 4)]));
        let dot = g.to_dot("Q");
        let expected = "digraph Q {\n  \"s0|s4\";\n  \"s1\";\n  \"s2\";\n  \"s3\";\n  \
                        \"s0|s4\" -> \"s1\" [label=\"1\"];\n  \"s0|s4\" -> \"s3\" [label=\"2\"];\n  \
                        \"s1\" -> \"s2\" [label=\"2\"];\n  \"s3\" -> \"s2\" [label=\"1\"];\n}\n";
        assert_eq!(dot, expected);
    }

    #[test]
    fn theta_shape_detected() {
        // Two vertices joined by three edges.
        let word = w("abAB");
        let trail = OpenTrail::new(&word);
        let g = QuotientGraph::from_partition(&trail, Partition::from_rgs(vec![0, 1, 0, 1, 0]));
        assert_eq!(g.chi(), 3);
        assert_eq!(g.shape(), GraphShape::Other);
        let t = QuotientGraph::from_partition(&OpenTrail::new(&w("abAb")), Partition::from_rgs(vec![0, 1, 0, 1, 0]));
        assert_eq!(t.shape(), GraphShape::Theta);
    }
}
