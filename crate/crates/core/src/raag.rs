//! Labeled defining graphs and right-angled Artin groups.
//!
//! [`Raag::canonical_form`] solves the word problem of `A(Γ)` in two passes: an
//! incremental cancellation pass that keeps the prefix geodesic (a new letter cancels
//! against the last occurrence of its generator when everything after that occurrence
//! commutes with it), followed by a greedy pass that emits the least available letter of
//! the remaining trace. Geodesics of the same element differ only by commutations, so the
//! lexicographically least geodesic is a canonical representative.

use std::collections::BTreeMap;

use crate::words::{Alphabet, Canonicalizer, Letter, Word};
use crate::{Error, Result};

/// A finite simple graph whose edges carry labels `>= 2`.
///
/// As an Artin defining graph, an edge labeled `m` between `a` and `b` imposes the relation
/// `aba… = bab…` with `m` letters on each side; missing edges impose nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Alphabet,
    labels: BTreeMap<(usize, usize), u32>,
}

impl LabeledGraph {
    pub fn new<I>(vertices: Alphabet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let n = vertices.len();
        let mut labels = BTreeMap::new();
        for (u, v, label) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a missing vertex"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "loop at vertex `{}`",
                    vertices.name(u).unwrap_or_default()
                )));
            }
            if label < 2 {
                return Err(Error::InvalidGraph(format!(
                    "edge label {label} is below 2"
                )));
            }
            let key = (u.min(v), u.max(v));
            if labels.insert(key, label).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "parallel edges between `{}` and `{}`",
                    vertices.name(key.0).unwrap_or_default(),
                    vertices.name(key.1).unwrap_or_default()
                )));
            }
        }
        Ok(Self { vertices, labels })
    }

    /// Builds a graph from vertex names and named edges.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, u32)]) -> Result<Self> {
        let alphabet = Alphabet::new(vertices.iter().copied())?;
        let lookup = |name: &str| {
            alphabet
                .index_of(name)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{name}`")))
        };
        let edges = edges
            .iter()
            .map(|&(u, v, l)| Ok((lookup(u)?, lookup(v)?, l)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.clone(), edges)
    }

    /// The path `a - b - c - d` with every label 2.
    pub fn p4() -> Self {
        Self::from_names(
            &["a", "b", "c", "d"],
            &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2)],
        )
        .expect("P4 is a valid graph")
    }

    pub fn vertices(&self) -> &Alphabet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.label(u, v).is_some()
    }

    /// Edges as `(u, v, label)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.labels.iter().map(|(&(u, v), &l)| (u, v, l))
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_right_angled(&self) -> bool {
        self.labels.values().all(|&l| l == 2)
    }

    /// The induced subgraph on `subset`, with vertices in the given order.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        let names = subset
            .iter()
            .map(|&v| {
                self.vertices
                    .name(v)
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidGraph(format!("vertex {v} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for (i, &u) in subset.iter().enumerate() {
            for (j, &v) in subset.iter().enumerate().skip(i + 1) {
                if let Some(l) = self.label(u, v) {
                    edges.push((i, j, l));
                }
            }
        }
        Self::new(Alphabet::new(names)?, edges)
    }
}

/// The right-angled Artin group `A(Γ)` of a graph whose labels are all 2.
#[derive(Debug, Clone)]
pub struct Raag {
    graph: LabeledGraph,
    commute: Vec<Vec<bool>>,
}

impl Raag {
    pub fn new(graph: LabeledGraph) -> Result<Self> {
        if let Some((u, v, l)) = graph.edges().find(|&(_, _, l)| l != 2) {
            let name = |i| graph.vertices().name(i).unwrap_or_default().to_string();
            return Err(Error::NotRightAngled(format!("{}-{}", name(u), name(v)), l));
        }
        let n = graph.vertex_count();
        let mut commute = vec![vec![false; n]; n];
        for (u, v, _) in graph.edges() {
            commute[u][v] = true;
            commute[v][u] = true;
        }
        Ok(Self { graph, commute })
    }

    pub fn p4() -> Self {
        Self::new(LabeledGraph::p4()).expect("P4 is right-angled")
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn check(&self, w: &Word) -> Result<()> {
        w.check(self.graph.vertex_count())
    }

    /// Canonical representative of `w` in `A(Γ)`; equal elements give identical words.
    pub fn canonical_form(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        Ok(self.canonical_unchecked(w))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.canonical_form(w)?.is_empty())
    }

    /// Whether `u` and `v` commute in `A(Γ)`.
    pub fn commutes(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let mut c = u.concat(v);
        c.extend_from(&u.inverse());
        c.extend_from(&v.inverse());
        Ok(self.canonical_unchecked(&c).is_empty())
    }

    fn canonical_unchecked(&self, w: &Word) -> Word {
        let reduced = self.reduce(w);
        self.sort_trace(reduced)
    }

    /// Geodesic representative, by incremental cancellation.
    fn reduce(&self, w: &Word) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let mut cancel_at = None;
            for (j, m) in out.iter().enumerate().rev() {
                if m.generator == l.generator {
                    if m.inverse != l.inverse {
                        cancel_at = Some(j);
                    }
                    break;
                }
                if !self.commute[m.generator][l.generator] {
                    break;
                }
            }
            match cancel_at {
                Some(j) => {
                    out.remove(j);
                }
                None => out.push(l),
            }
        }
        out
    }

    /// Lexicographically least linearization of the trace of a geodesic.
    fn sort_trace(&self, mut rest: Vec<Letter>) -> Word {
        let n = self.graph.vertex_count();
        let mut out = Vec::with_capacity(rest.len());
        let mut blocked = vec![false; n];
        while !rest.is_empty() {
            blocked.iter_mut().for_each(|b| *b = false);
            let mut best: Option<(usize, Letter)> = None;
            for (i, &l) in rest.iter().enumerate() {
                if !blocked[l.generator] && best.is_none_or(|(_, b)| l < b) {
                    best = Some((i, l));
                }
                for (g, b) in blocked.iter_mut().enumerate() {
                    if g == l.generator || !self.commute[l.generator][g] {
                        *b = true;
                    }
                }
            }
            let (i, l) = best.expect("the first remaining letter is always available");
            rest.remove(i);
            out.push(l);
        }
        Word::new(out)
    }
}

/// Letters must be vertices of the graph; out-of-range generators panic.
impl Canonicalizer for Raag {
    fn canonicalize(&self, word: &Word) -> Word {
        self.canonical_form(word)
            .expect("word over the graph's vertices")
    }
}

/// Vertex indices of `A(P4) = ⟨a, b, c, d | ab = ba, bc = cb, cd = dc⟩`.
pub mod p4 {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
}

fn alternating(first: usize, second: usize, len: usize) -> Word {
    (0..len)
        .map(|i| Letter::pos(if i % 2 == 0 { first } else { second }))
        .collect()
}

fn conjugate(by: &Word, w: &Word) -> Word {
    let mut out = by.concat(w);
    out.extend_from(&by.inverse());
    out
}

/// The `n`-th vertex of a bi-infinite path of conjugates of `b` and `c` in `A(P4)`.
///
/// Consecutive vertices commute and no other pairs do, so any finite window spans a copy
/// of the right-angled Artin group of a path. The path runs
/// `… , (ad)b(ad)^-1, aca^-1, b, c, dbd^-1, (da)c(da)^-1, …`, with `x_1 = b` and `x_2 = c`.
/// To the right, `x_n = w c w^-1` or `w b w^-1` (n even / odd) with `w = d a d a …` of
/// length `n - 2`; to the left, `x_{1-m} = u b u^-1` or `u c u^-1` (m even / odd) with
/// `u = a d a d …` of length `m`.
pub fn p4_conjugate_vertex(n: i64) -> Word {
    use p4::*;
    if n >= 1 {
        let core = Word::generator(if n % 2 == 0 { C } else { B });
        let len = (n - 2).max(0) as usize;
        conjugate(&alternating(D, A, len), &core)
    } else {
        let m = (1 - n) as usize;
        let core = Word::generator(if m.is_multiple_of(2) { B } else { C });
        conjugate(&alternating(A, D, m), &core)
    }
}

/// Images of the free basis `x, y, z` and of the `A(P4)` generators `g1..g4` realising
/// `A(P4) * F3` inside `A(P4)`: `x = aca^-1`, `y = c`, `z = x_{-2}` and `g_i = x_{3+i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P4StarEmbedding {
    pub x: Word,
    pub y: Word,
    pub z: Word,
    pub g: [Word; 4],
}

impl P4StarEmbedding {
    /// Images in the fixed order `x, y, z, g1, g2, g3, g4`.
    pub fn images(&self) -> Vec<(&'static str, &Word)> {
        vec![
            ("x", &self.x),
            ("y", &self.y),
            ("z", &self.z),
            ("g1", &self.g[0]),
            ("g2", &self.g[1]),
            ("g3", &self.g[2]),
            ("g4", &self.g[3]),
        ]
    }
}

pub fn p4_star_embedding() -> P4StarEmbedding {
    P4StarEmbedding {
        x: p4_conjugate_vertex(0),
        y: p4_conjugate_vertex(2),
        z: p4_conjugate_vertex(-2),
        g: [4, 5, 6, 7].map(p4_conjugate_vertex),
    }
}
