//! The graph of pairs Υ of the universal graph, its components, the
//! recursive factorization attached to a component, and the correspondence
//! between components and type-A quotients of characteristic 2.
//!
//! Vertices of the universal graph are `v_0..v_{L-1}`, with `v_0` the block
//! `{s_0, s_L}`. Letter `i` (0-based) joins `v_i` and `v_{i+1 mod L}`,
//! pointing forward for a generator and backward for an inverse.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};
use crate::quotients::{
    classify_type, enumerate_qw, EnumerationMode, GraphShape, QuotientGraph, QuotientType,
    DEFAULT_FULL_CAP,
};
use crate::series;
use crate::trail::OpenTrail;
use crate::word::{Letter, Word};

fn check_word(w: &Word) -> Result<()> {
    if w.is_empty() || !w.is_cyclically_reduced() {
        return Err(Error::domain(format!("{w} is not a nonempty cyclically reduced word")));
    }
    if w.is_proper_power() {
        return Err(Error::domain(format!("{w} is a proper power")));
    }
    Ok(())
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Length of the forward arc from `v_i` to `v_j`.
pub fn arc(len: usize, i: usize, j: usize) -> usize {
    (j + len - i) % len
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UpsilonEdge {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub label: u8,
    /// The two letters (0-based positions in `w`) whose edges are paired.
    pub letters: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct PairGraph {
    word: Word,
    vertices: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    edges: Vec<UpsilonEdge>,
}

impl PairGraph {
    pub fn build(w: &Word) -> Result<Self> {
        check_word(w)?;
        let l = w.len();
        let ends = |i: usize, letter: Letter| {
            if letter.is_inverse() {
                ((i + 1) % l, i)
            } else {
                (i, (i + 1) % l)
            }
        };
        let mut vertices = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                vertices.push((i, j));
            }
        }
        let index = vertices.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let letters = w.letters();
        let mut edges = Vec::new();
        for q in 0..l {
            for p in 0..q {
                if letters[p].generator() != letters[q].generator() {
                    continue;
                }
                let (o1, t1) = ends(p, letters[p]);
                let (o2, t2) = ends(q, letters[q]);
                edges.push(UpsilonEdge {
                    from: pair(o1, o2),
                    to: pair(t1, t2),
                    label: letters[p].generator(),
                    letters: (p, q),
                });
            }
        }
        Ok(PairGraph { word: w.clone(), vertices, index, edges })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn vertices(&self) -> &[(usize, usize)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[UpsilonEdge] {
        &self.edges
    }

    pub fn degree(&self, v: (usize, usize)) -> usize {
        self.edges.iter().filter(|e| e.from == v).count() + self.edges.iter().filter(|e| e.to == v).count()
    }

    /// Connected components, classified. Fails if Υ has a cycle.
    pub fn components(&self) -> Result<Vec<Component>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if !uf.union(self.index[&e.from], self.index[&e.to]) {
                return Err(Error::internal(format!(
                    "Υ of {} has a cycle through {:?}",
                    self.word, e.from
                )));
            }
        }
        let part = uf.to_partition();
        let mut members: Vec<Vec<(usize, usize)>> = vec![Vec::new(); part.block_count()];
        for (k, &v) in self.vertices.iter().enumerate() {
            members[part.block_of(k)].push(v);
        }
        let mut edge_sets: Vec<Vec<UpsilonEdge>> = vec![Vec::new(); part.block_count()];
        for e in &self.edges {
            edge_sets[part.block_of(self.index[&e.from])].push(*e);
        }
        members
            .into_iter()
            .zip(edge_sets)
            .enumerate()
            .map(|(id, (vertices, edges))| Component::classify(id, &self.word, vertices, edges))
            .collect()
    }

    /// Component containing the pair `{v_i, v_j}`.
    pub fn component_of<'a>(&self, comps: &'a [Component], i: usize, j: usize) -> Option<&'a Component> {
        let p = pair(i, j);
        comps.iter().find(|c| c.vertices.binary_search(&p).is_ok())
    }

    /// Graphviz rendering with one fill color per component.
    pub fn to_dot(&self, comps: &[Component]) -> String {
        const COLORS: [&str; 8] =
            ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon", "lightcyan", "wheat"];
        let name = |p: (usize, usize)| format!("v{}|v{}", p.0, p.1);
        let mut out = String::from("digraph Upsilon {\n  node [style=filled];\n");
        for c in comps {
            for &v in &c.vertices {
                let _ = writeln!(out, "  \"{}\" [fillcolor={}];", name(v), COLORS[c.id % COLORS.len()]);
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", name(e.from), name(e.to), e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// Graphviz rendering of the universal graph on `v_0..v_{L-1}`.
pub fn universal_dot(w: &Word) -> Result<String> {
    check_word(w)?;
    let l = w.len();
    let mut out = String::from("digraph Universal {\n");
    for i in 0..l {
        let _ = writeln!(out, "  \"v{i}\";");
    }
    for (i, letter) in w.letters().iter().enumerate() {
        let (a, b) = if letter.is_inverse() { ((i + 1) % l, i) } else { (i, (i + 1) % l) };
        let _ = writeln!(out, "  \"v{a}\" -> \"v{b}\" [label=\"{}\"];", letter.generator());
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Isolated,
    Coherent,
    NonCoherent,
}

/// The maximal cyclic repetition behind a path component: `u` starts at
/// letter `starts.0`, and `u` (coherent) or `u^{-1}` (non-coherent) starts
/// at letter `starts.1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Repetition {
    pub u: Word,
    pub starts: (usize, usize),
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: usize,
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<UpsilonEdge>,
    pub kind: ComponentKind,
    pub repetition: Option<Repetition>,
    pub overlapping: bool,
    /// The distinguished pair `{v_x, v_y}`, ordered.
    pub xy: (usize, usize),
}

impl Component {
    fn classify(id: usize, w: &Word, mut vertices: Vec<(usize, usize)>, edges: Vec<UpsilonEdge>) -> Result<Self> {
        vertices.sort_unstable();
        let l = w.len();
        let overlapping = {
            let mut seen = BTreeSet::new();
            !vertices.iter().all(|&(i, j)| seen.insert(i) && seen.insert(j))
        };
        if edges.is_empty() {
            let xy = vertices[0];
            return Ok(Component { id, vertices, edges, kind: ComponentKind::Isolated, repetition: None, overlapping, xy });
        }
        let letters = w.letters();
        let same_sign = |e: &UpsilonEdge| letters[e.letters.0].sign() == letters[e.letters.1].sign();
        let coherent = same_sign(&edges[0]);
        if edges.iter().any(|e| same_sign(e) != coherent) {
            return Err(Error::internal(format!("component {vertices:?} of {w} mixes coherent and non-coherent edges")));
        }
        let pairs: BTreeSet<(usize, usize)> = edges.iter().map(|e| e.letters).collect();
        let has = |p: usize, q: usize| pairs.contains(&pair(p % l, q % l));
        let m = edges.len();
        let orientations = edges.iter().flat_map(|e| [e.letters, (e.letters.1, e.letters.0)]);
        if coherent {
            let (p, q) = orientations
                .clone()
                .find(|&(p, q)| !has(p + l - 1, q + l - 1))
                .ok_or_else(|| Error::internal(format!("no starting edge in coherent component of {w}")))?;
            let xy = if arc(l, p, q) < arc(l, q, p) || (arc(l, p, q) == arc(l, q, p) && p < q) { (p, q) } else { (q, p) };
            let repetition = Repetition { u: w.cyclic_subword(xy.0, m), starts: xy, len: m };
            Ok(Component { id, vertices, edges, kind: ComponentKind::Coherent, repetition: Some(repetition), overlapping, xy })
        } else {
            let (p, q) = orientations
                .clone()
                .find(|&(p, q)| !has(p + l - 1, q + 1))
                .ok_or_else(|| Error::internal(format!("no starting edge in non-coherent component of {w}")))?;
            let first = ((p + m) % l, (q + l + 1 - m) % l);
            let second = ((q + 1) % l, p);
            let xy = first.min(second);
            let repetition = Repetition { u: w.cyclic_subword(p, m), starts: (p, (q + l + 1 - m) % l), len: m };
            Ok(Component { id, vertices, edges, kind: ComponentKind::NonCoherent, repetition: Some(repetition), overlapping, xy })
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.vertices.binary_search(&pair(i, j)).is_ok()
    }
}

/// The pair `{v_x, v_y}` of a component.
pub fn choose_xy(c: &Component) -> (usize, usize) {
    c.xy
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sym {
    A,
    B,
}

fn expression_string(expr: &[Sym]) -> String {
    expr.iter().map(|s| if *s == Sym::A { 'a' } else { 'b' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorStep {
    pub expression: String,
    pub a: Word,
    pub b: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    FigureEight,
    Theta { c: Word },
    Barbell { d: Word, e: Word },
}

impl Shape {
    pub fn graph_shape(&self) -> GraphShape {
        match self {
            Shape::FigureEight => GraphShape::FigureEight,
            Shape::Theta { .. } => GraphShape::Theta,
            Shape::Barbell { .. } => GraphShape::Barbell,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub x: usize,
    pub y: usize,
    pub steps: Vec<FactorStep>,
    /// Index of the last step.
    pub n: usize,
    pub shape: Shape,
}

/// Restriction of an `s`-partition to the universal-graph vertices
/// `v_0..v_{L-1}` (dropping `s_L`, which equals `s_0`).
fn on_universal(p: &Partition) -> Partition {
    Partition::from_rgs(p.rgs()[..p.len() - 1].to_vec())
}

/// `f(C)`: the quotient generated by `{s_0, s_L}` and one pair of `C`,
/// checked to be the same for every pair of `C`.
pub fn f_of(c: &Component, w: &Word) -> Result<QuotientGraph> {
    check_word(w)?;
    let trail = OpenTrail::new(w);
    let l = w.len();
    let mut result: Option<Partition> = None;
    for &(i, j) in &c.vertices {
        let p = trail.generate(&[(0, l), (i, j)]);
        match &result {
            None => result = Some(p),
            Some(r) if *r != p => {
                return Err(Error::internal(format!(
                    "pairs of one Υ component of {w} generate different quotients {r} and {p}"
                )))
            }
            Some(_) => {}
        }
    }
    let g = QuotientGraph::from_partition(&trail, result.expect("components are nonempty"));
    if g.chi() != 2 {
        return Err(Error::internal(format!("f(C) for {w} has χ = {} instead of 2", g.chi())));
    }
    Ok(g.with_type(QuotientType::A))
}

fn expand(expr: &[Sym], a: &Word, b: &Word) -> Word {
    expr.iter().fold(Word::empty(a.k().max(b.k())), |acc, s| acc.concat(if *s == Sym::A { a } else { b }))
}

fn twice_in_row(expr: &[Sym], s: Sym) -> bool {
    let r = expr.len();
    (0..r).any(|i| expr[i] == s && expr[(i + 1) % r] == s)
}

fn thrice_in_row(expr: &[Sym], s: Sym) -> bool {
    let r = expr.len();
    r >= 3 && (0..r).any(|i| expr[i] == s && expr[(i + 1) % r] == s && expr[(i + 2) % r] == s)
}

/// The four boundary-letter inequalities between `a` and `b`.
fn boundary_ok(a: &Word, b: &Word) -> bool {
    match (a.first(), a.last(), b.first(), b.last()) {
        (Some(ha), Some(ta), Some(hb), Some(tb)) => ta.inv() != hb && tb.inv() != ha && ta.inv() != ha && ta != tb,
        _ => false,
    }
}

/// Checks the step properties of `w^(n)`; `fc` is `f(C)` on the universal
/// vertices.
fn check_step(n: usize, expr: &[Sym], a: &Word, b: &Word, w: &Word, x: usize, fc: &Partition) -> Result<()> {
    let fail = |what: &str| Err(Error::internal(format!("step {n} of the factorization of {w} at x = {x}: {what}")));
    if expand(expr, a, b) != w.cyclic_shift(x) {
        return fail("expression does not spell w_x");
    }
    if a == b {
        return fail("a_n = b_n");
    }
    if twice_in_row(expr, Sym::B) {
        return fail("b_n appears twice in a row");
    }
    if n == 0 && expr != [Sym::A, Sym::B] {
        return fail("w^(0) is not a_0 b_0");
    }
    if n >= 1 && !twice_in_row(expr, Sym::A) {
        return fail("a_n does not appear twice in a row");
    }
    if !boundary_ok(a, b) {
        return fail("boundary letters coincide");
    }
    let l = w.len();
    let mut uf = UnionFind::new(l);
    let mut offset = 0;
    let mut center = None;
    let mut first_at: [Option<usize>; 2] = [None, None];
    for s in expr {
        let len = if *s == Sym::A { a.len() } else { b.len() };
        let v = |o: usize| (x + o) % l;
        match center {
            None => center = Some(v(offset)),
            Some(c) => {
                uf.union(c, v(offset));
            }
        }
        let slot = &mut first_at[(*s == Sym::B) as usize];
        match *slot {
            None => *slot = Some(offset),
            Some(f) => {
                for t in 1..len {
                    uf.union(v(f + t), v(offset + t));
                }
            }
        }
        offset += len;
    }
    if !fc.is_coarser_or_equal(&uf.to_partition()) {
        return fail("Γ^(n) is not refined by f(C)");
    }
    Ok(())
}

/// The recursive factorization of `w_x` attached to `c`, with every step
/// checked against `f(C)`.
pub fn factorize(c: &Component, w: &Word) -> Result<Factorization> {
    let fc = on_universal(f_of(c, w)?.partition());
    let l = w.len();
    let (x, y) = c.xy;
    let wx = w.cyclic_shift(x);
    let split = arc(l, x, y);
    let mut a = wx.cyclic_subword(0, split);
    let mut b = wx.cyclic_subword(split, l - split);
    let mut expr = vec![Sym::A, Sym::B];
    let mut steps = Vec::new();
    loop {
        let n = steps.len();
        check_step(n, &expr, &a, &b, w, x, &fc)?;
        steps.push(FactorStep { expression: expression_string(&expr), a: a.clone(), b: b.clone() });
        if a.len() < b.len() && a.is_prefix_of(&b) {
            b = b.cyclic_subword(a.len(), b.len() - a.len());
            expr = expr.iter().flat_map(|s| if *s == Sym::A { vec![Sym::A] } else { vec![Sym::A, Sym::B] }).collect();
        } else if b.len() < a.len() && b.is_prefix_of(&a) {
            let rest = a.cyclic_subword(b.len(), a.len() - b.len());
            a = b;
            b = rest;
            expr = expr.iter().flat_map(|s| if *s == Sym::A { vec![Sym::A, Sym::B] } else { vec![Sym::A] }).collect();
        } else {
            break;
        }
    }
    let n = steps.len() - 1;
    let continues = c.kind == ComponentKind::Coherent && c.overlapping;
    if (n > 0) != continues {
        return Err(Error::internal(format!(
            "factorization of {w} at {:?} stopped at N = {n} for a {:?} component (overlapping: {})",
            c.xy, c.kind, c.overlapping
        )));
    }
    let last = steps.last().expect("at least one step");
    let shape = shape_from(&last.a, &last.b, w)?;
    Ok(Factorization { x, y, steps, n, shape })
}

fn shape_from(a: &Word, b: &Word, w: &Word) -> Result<Shape> {
    let (ha, ta, hb, tb) = match (a.first(), a.last(), b.first(), b.last()) {
        (Some(ha), Some(ta), Some(hb), Some(tb)) => (ha, ta.inv(), hb, tb.inv()),
        _ => return Err(Error::internal(format!("empty factor in the factorization of {w}"))),
    };
    let theta = ha == hb;
    let barbell = hb == tb;
    let others = ha == ta || ha == tb || ta == hb || ta == tb;
    match (theta, barbell, others) {
        (false, false, false) => Ok(Shape::FigureEight),
        (true, false, false) => {
            let common = a.letters().iter().zip(b.letters()).take_while(|(p, q)| p == q).count();
            Ok(Shape::Theta { c: a.cyclic_subword(0, common) })
        }
        (false, true, false) => {
            let (e, d) = b.cyclic_reduce();
            Ok(Shape::Barbell { d, e })
        }
        _ => Err(Error::internal(format!(
            "boundary letters of a = {a}, b = {b} in {w} admit no shape"
        ))),
    }
}

/// Shape of `f(C)` read off the last factorization step.
pub fn shape_of(fac: &Factorization, w: &Word) -> Result<Shape> {
    let last = fac.steps.last().ok_or_else(|| Error::internal("empty factorization"))?;
    shape_from(&last.a, &last.b, w)
}

fn check_member(g: &QuotientGraph, w: &Word) -> Result<()> {
    check_word(w)?;
    let not_member = |why: String| Err(Error::domain(format!("{} is not in Q_(w,2,A) for {w}: {why}", g.partition())));
    if g.partition().len() != w.len() + 1 {
        return not_member("wrong number of trail vertices".into());
    }
    let trail = OpenTrail::new(w);
    let g = QuotientGraph::from_partition(&trail, g.partition().clone());
    if g.chi() != 2 {
        return not_member(format!("χ = {}", g.chi()));
    }
    match classify_type(w, &g)? {
        QuotientType::A => Ok(()),
        QuotientType::B => not_member("type B".into()),
    }
}

/// Symbol occurrence during recovery: symbol and its start letter in `w`.
type Occ = (Sym, usize);

/// Undoes the factorization steps from the cut at one branch vertex, if the
/// cut has the form `w^(N)` with `N ≥ 1`. Returns `(x, y)`.
fn recover_from_cut(w: &Word, starts: &[usize]) -> Option<(usize, usize)> {
    let l = w.len();
    let r = starts.len();
    if r < 3 {
        return None;
    }
    let piece = |i: usize| {
        let len = arc(l, starts[i], starts[(i + 1) % r]);
        let len = if len == 0 { l } else { len };
        w.cyclic_subword(starts[i], len)
    };
    let pieces: Vec<Word> = (0..r).map(piece).collect();
    let distinct: BTreeSet<&Word> = pieces.iter().collect();
    if distinct.len() != 2 {
        return None;
    }
    let (p0, p1) = {
        let mut it = distinct.into_iter();
        (it.next()?.clone(), it.next()?.clone())
    };
    let doubled = |p: &Word| (0..r).any(|i| pieces[i] == *p && pieces[(i + 1) % r] == *p);
    let (mut a, mut b) = match (doubled(&p0), doubled(&p1)) {
        (true, false) => (p0, p1),
        (false, true) => (p1, p0),
        _ => return None,
    };
    let mut occ: Vec<Occ> = pieces
        .iter()
        .zip(starts)
        .map(|(p, &s)| (if *p == a { Sym::A } else { Sym::B }, s))
        .collect();
    while occ.len() > 2 {
        let expr: Vec<Sym> = occ.iter().map(|o| o.0).collect();
        if !boundary_ok(&a, &b) || a == b || twice_in_row(&expr, Sym::B) || !twice_in_row(&expr, Sym::A) {
            return None;
        }
        let m = occ.len();
        let type_one = m == 3 || thrice_in_row(&expr, Sym::A);
        let mut next = Vec::with_capacity(m);
        for i in 0..m {
            let (s, start) = occ[i];
            let following_b = occ[(i + 1) % m].0 == Sym::B;
            match (s, following_b) {
                (Sym::A, true) => {}
                (Sym::A, false) => next.push(if type_one { (Sym::A, start) } else { (Sym::B, start) }),
                (Sym::B, _) => {
                    let (prev, prev_start) = occ[(i + m - 1) % m];
                    if prev != Sym::A {
                        return None;
                    }
                    next.push(if type_one { (Sym::B, prev_start) } else { (Sym::A, prev_start) });
                }
            }
        }
        let ab = a.concat(&b);
        if type_one {
            b = ab;
        } else {
            b = a;
            a = ab;
        }
        occ = next;
    }
    match occ.as_slice() {
        [(Sym::A, x), (Sym::B, y)] | [(Sym::B, y), (Sym::A, x)] => {
            let ok = w.cyclic_subword(*x, arc(l, *x, *y)) == a && w.cyclic_subword(*y, arc(l, *y, *x)) == b;
            ok.then_some((*x, *y))
        }
        _ => None,
    }
}

/// `h(Γ)`: the component whose image under `f` is `g`, recovered from `g`
/// alone by tracing `w` around it.
pub fn h_of(g: &QuotientGraph, w: &Word, comps: &[Component]) -> Result<Component> {
    check_member(g, w)?;
    let l = w.len();
    let p = g.partition();
    let mut degree = vec![0usize; p.block_count()];
    for e in g.edges() {
        degree[e.from] += 1;
        degree[e.to] += 1;
    }
    let mut found: BTreeSet<usize> = BTreeSet::new();
    for branch in (0..p.block_count()).filter(|&b| degree[b] >= 3) {
        let starts: Vec<usize> = (0..l).filter(|&t| p.block_of(t) == branch).collect();
        if let Some((x, y)) = recover_from_cut(w, &starts) {
            let c = comps
                .iter()
                .find(|c| c.contains(x, y))
                .ok_or_else(|| Error::internal(format!("no Υ component contains ({x}, {y})")))?;
            found.insert(c.id);
        }
    }
    let id = match found.len() {
        1 => *found.iter().next().expect("one element"),
        0 => {
            let universal = on_universal(p);
            let mut holders = BTreeSet::new();
            for (i, j) in universal.equivalent_pairs() {
                let c = comps
                    .iter()
                    .find(|c| c.contains(i, j))
                    .ok_or_else(|| Error::internal(format!("no Υ component contains ({i}, {j})")))?;
                holders.insert(c.id);
            }
            if holders.len() != 1 {
                return Err(Error::internal(format!(
                    "{} realizes {} components of Υ but shows no repeated factor",
                    p,
                    holders.len()
                )));
            }
            *holders.iter().next().expect("one element")
        }
        _ => {
            return Err(Error::internal(format!(
                "{p} traces to {} different factorizations",
                found.len()
            )))
        }
    };
    Ok(comps.iter().find(|c| c.id == id).expect("id from comps").clone())
}

/// `C(L,2) - Σ_j C(e_j,2)`, with `e_j` the number of letters `g_j^{±1}`.
pub fn expected_component_count(w: &Word) -> usize {
    let c2 = |n: usize| n * n.saturating_sub(1) / 2;
    let mut counts = vec![0usize; w.k() as usize + 1];
    for l in w.letters() {
        counts[l.generator() as usize] += 1;
    }
    c2(w.len()) - counts.iter().map(|&e| c2(e)).sum::<usize>()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub vertices: Vec<(usize, usize)>,
    pub kind: ComponentKind,
    pub x: usize,
    pub y: usize,
    pub n: Option<usize>,
    pub shape: Option<Shape>,
    pub overlapping: bool,
    pub implies_others: bool,
    pub quotient: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub word: Word,
    /// No pairs of vertices exist (single-letter words).
    pub vacuous: bool,
    pub upsilon_vertices: usize,
    pub upsilon_edges: usize,
    pub acyclic: bool,
    pub component_count: usize,
    pub expected_count: usize,
    pub qw2a_count: usize,
    pub components: Vec<ComponentReport>,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Checks that `f` is a bijection from the components of Υ onto the type-A
/// quotients of characteristic 2, with `h` as its inverse, together with
/// the structural facts behind it. Failures are collected in the report.
pub fn verify_bijection(w: &Word) -> Result<BijectionReport> {
    check_word(w)?;
    let phi = series::phi(w, 1, false)?;
    if !phi.at_least(2) {
        return Err(Error::precondition(format!("φ({w}) = {phi} is below 2")));
    }
    let u = PairGraph::build(w)?;
    let expected_count = expected_component_count(w);
    let mut report = BijectionReport {
        word: w.clone(),
        vacuous: w.len() < 2,
        upsilon_vertices: u.vertices().len(),
        upsilon_edges: u.edges().len(),
        acyclic: true,
        component_count: 0,
        expected_count,
        qw2a_count: 0,
        components: Vec::new(),
        failures: Vec::new(),
        ok: true,
    };
    let qw2a: Vec<QuotientGraph> = enumerate_qw(w, EnumerationMode::UpToChi(2), DEFAULT_FULL_CAP)?
        .into_iter()
        .filter(|g| g.chi() == 2 && g.type_tag() == Some(QuotientType::A))
        .collect();
    report.qw2a_count = qw2a.len();
    if report.vacuous {
        if !qw2a.is_empty() {
            report.failures.push(format!("{} type-A χ=2 quotients with no pairs of vertices", qw2a.len()));
        }
        report.ok = report.failures.is_empty();
        return Ok(report);
    }
    let fail = |report: &mut BijectionReport, msg: String| report.failures.push(msg);
    for g in &qw2a {
        if classify_type(w, g)? != QuotientType::A {
            fail(&mut report, format!("{} tagged A by coarsening depth but not by subset search", g.partition()));
        }
    }
    let comps = match u.components() {
        Ok(c) => c,
        Err(e) => {
            report.acyclic = false;
            fail(&mut report, e.to_string());
            report.ok = false;
            return Ok(report);
        }
    };
    report.component_count = comps.len();
    if comps.len() != expected_count {
        fail(&mut report, format!("{} components, expected {expected_count}", comps.len()));
    }
    if qw2a.len() != expected_count {
        fail(&mut report, format!("{} type-A χ=2 quotients, expected {expected_count}", qw2a.len()));
    }
    let mut images: HashMap<Partition, usize> = HashMap::new();
    for c in &comps {
        let mut row = ComponentReport {
            id: c.id,
            vertices: c.vertices.clone(),
            kind: c.kind,
            x: c.xy.0,
            y: c.xy.1,
            n: None,
            shape: None,
            overlapping: c.overlapping,
            implies_others: false,
            quotient: None,
        };
        if c.kind == ComponentKind::NonCoherent && c.overlapping {
            fail(&mut report, format!("non-coherent component {:?} overlaps", c.vertices));
        }
        match f_of(c, w) {
            Err(e) => fail(&mut report, e.to_string()),
            Ok(g) => {
                row.quotient = Some(g.key());
                let fc = on_universal(g.partition());
                row.implies_others = comps
                    .iter()
                    .any(|other| other.id != c.id && other.vertices.iter().any(|&(i, j)| fc.same(i, j)));
                if row.implies_others != c.overlapping {
                    fail(&mut report, format!(
                        "component {:?}: implies others = {}, overlapping = {}",
                        c.vertices, row.implies_others, c.overlapping
                    ));
                }
                match factorize(c, w) {
                    Err(e) => fail(&mut report, e.to_string()),
                    Ok(fac) => {
                        row.n = Some(fac.n);
                        if fac.shape.graph_shape() != g.shape() {
                            fail(&mut report, format!(
                                "component {:?}: factorization says {:?}, f(C) is {:?}",
                                c.vertices,
                                fac.shape.graph_shape(),
                                g.shape()
                            ));
                        }
                        row.shape = Some(fac.shape);
                    }
                }
                match h_of(&g, w, &comps) {
                    Err(e) => fail(&mut report, e.to_string()),
                    Ok(back) if back.id != c.id => fail(&mut report, format!(
                        "h(f(C)) sends {:?} to {:?}",
                        c.vertices, back.vertices
                    )),
                    Ok(_) => {}
                }
                if let Some(prev) = images.insert(g.partition().clone(), c.id) {
                    fail(&mut report, format!("components {prev} and {} have the same image {}", c.id, g.partition()));
                }
            }
        }
        report.components.push(row);
    }
    let image_set: BTreeSet<&Partition> = images.keys().collect();
    let target: BTreeSet<&Partition> = qw2a.iter().map(|g| g.partition()).collect();
    if image_set != target {
        fail(&mut report, format!(
            "image of f has {} quotients, {} missing from Q_(w,2,A), {} of Q_(w,2,A) not hit",
            image_set.len(),
            image_set.difference(&target).count(),
            target.difference(&image_set).count()
        ));
    }
    for g in &qw2a {
        match h_of(g, w, &comps).and_then(|c| f_of(&c, w)) {
            Ok(back) if back.partition() == g.partition() => {}
            Ok(back) => fail(&mut report, format!("f(h(Γ)) sends {} to {}", g.partition(), back.partition())),
            Err(e) => fail(&mut report, e.to_string()),
        }
    }
    report.ok = report.failures.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::universal_graph;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fig4() -> Word {
        w("aababAb")
    }

    #[test]
    fn upsilon_sizes() {
        let u = PairGraph::build(&fig4()).unwrap();
        assert_eq!((u.vertices().len(), u.edges().len()), (21, 9));
        assert_eq!(u.components().unwrap().len(), 12);
        let c = PairGraph::build(&w("abAB")).unwrap();
        assert_eq!((c.vertices().len(), c.edges().len()), (6, 2));
        assert_eq!(c.components().unwrap().len(), 4);
        for v in u.vertices() {
            assert!(u.degree(*v) <= 2);
        }
    }

    #[test]
    fn upsilon_edges_match_figure() {
        let u = PairGraph::build(&fig4()).unwrap();
        let mut got: Vec<_> = u.edges().iter().map(|e| (e.from, e.to, e.label)).collect();
        got.sort();
        let mut expected = vec![
            ((0, 1), (1, 2), 1),
            ((4, 6), (0, 5), 2),
            ((1, 6), (2, 5), 1),
            ((2, 6), (0, 3), 2),
            ((0, 3), (1, 4), 1),
            ((3, 6), (4, 5), 1),
            ((0, 6), (1, 5), 1),
            ((1, 3), (2, 4), 1),
            ((2, 4), (3, 5), 2),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(PairGraph::build(&w("")), Err(Error::Domain(_))));
        assert!(matches!(PairGraph::build(&w("abab")), Err(Error::Domain(_))));
        assert!(matches!(PairGraph::build(&w("Bab")), Err(Error::Domain(_))));
    }

    #[test]
    fn figure_components() {
        let word = fig4();
        let u = PairGraph::build(&word).unwrap();
        let comps = u.components().unwrap();
        let c = u.component_of(&comps, 2, 6).unwrap();
        assert_eq!(c.kind, ComponentKind::Coherent);
        let rep = c.repetition.as_ref().unwrap();
        assert_eq!((rep.u.to_string().as_str(), rep.len), ("ba", 2));
        assert_eq!(choose_xy(c), (6, 2));
        let n = u.component_of(&comps, 0, 6).unwrap();
        assert_eq!(n.kind, ComponentKind::NonCoherent);
        assert_eq!(n.repetition.as_ref().unwrap().len, 1);
        assert_eq!(choose_xy(n), (1, 5));
        let iso = u.component_of(&comps, 0, 2).unwrap();
        assert_eq!(iso.kind, ComponentKind::Isolated);
        assert_eq!(choose_xy(iso), (0, 2));
        let right = u.component_of(&comps, 1, 3).unwrap();
        assert!(right.overlapping);
    }

    #[test]
    fn commutator_images() {
        let word = w("abAB");
        let u = PairGraph::build(&word).unwrap();
        let comps = u.components().unwrap();
        let c = u.component_of(&comps, 0, 1).unwrap();
        assert!(c.contains(2, 3));
        let g = f_of(c, &word).unwrap();
        assert_eq!(g.blocks(), &[vec![0, 1, 4], vec![2, 3]]);
        assert_eq!(factorize(c, &word).unwrap().shape.graph_shape(), GraphShape::Barbell);
        assert_eq!(g.shape(), GraphShape::Barbell);
        assert_eq!(h_of(&g, &word, &comps).unwrap().id, c.id);
        let iso = u.component_of(&comps, 0, 2).unwrap();
        assert_eq!(f_of(iso, &word).unwrap().blocks(), &[vec![0, 2, 4], vec![1], vec![3]]);
    }

    #[test]
    fn factorization_steps() {
        // u = "ab" at letters 0 and 2 overlaps end to start.
        let word = w("ababb");
        let u = PairGraph::build(&word).unwrap();
        let comps = u.components().unwrap();
        let c = u.component_of(&comps, 0, 2).unwrap();
        assert_eq!(c.kind, ComponentKind::Coherent);
        assert!(c.overlapping);
        let fac = factorize(c, &word).unwrap();
        assert!(fac.n >= 1);
        assert_eq!(fac.steps[1].expression, "aab");
        for s in &fac.steps {
            assert!(s.a != s.b);
        }
        let sizes: Vec<usize> = fac.steps.iter().map(|s| s.a.len() + s.b.len()).collect();
        assert!(sizes.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn bijection_examples() {
        for (s, count) in [("abAB", 4), ("aababAb", 12), ("ab", 1), ("ababb", 6), ("aabbaB", 9)] {
            let r = verify_bijection(&w(s)).unwrap();
            assert!(r.ok, "{s}: {:?}", r.failures);
            assert_eq!(r.qw2a_count, count, "{s}");
            assert_eq!(r.component_count, count, "{s}");
        }
        let single = verify_bijection(&w("a")).unwrap();
        assert!(single.vacuous && single.ok);
        assert!(matches!(verify_bijection(&w("abab")), Err(Error::Domain(_))));
    }

    #[test]
    fn h_rejects_non_members() {
        let word = w("abAB");
        let comps = PairGraph::build(&word).unwrap().components().unwrap();
        let trail = OpenTrail::new(&word);
        let fig8 = QuotientGraph::from_partition(&trail, Partition::from_rgs(vec![0; 5]));
        assert!(matches!(h_of(&fig8, &word, &comps), Err(Error::Domain(_))));
        let universal = universal_graph(&word).unwrap();
        assert!(matches!(h_of(&universal, &word, &comps), Err(Error::Domain(_))));
    }

    #[test]
    fn dot_exports() {
        let dot = universal_dot(&w("abAB")).unwrap();
        assert!(dot.contains("\"v3\" -> \"v2\" [label=\"1\"]"));
        assert!(dot.contains("\"v0\" -> \"v3\" [label=\"2\"]"));
        let u = PairGraph::build(&w("abAB")).unwrap();
        let comps = u.components().unwrap();
        let dot = u.to_dot(&comps);
        assert_eq!(dot.matches("fillcolor").count(), 6);
        assert!(dot.contains("\"v0|v1\" -> \"v2|v3\" [label=\"2\"]"));
        assert!(dot.contains("\"v0|v3\" -> \"v1|v2\" [label=\"1\"]"));
    }
}
