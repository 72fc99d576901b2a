//! Decidability verdicts for membership problems in Artin groups.
//!
//! An Artin group has decidable submonoid (equivalently rational subset, fixed-target
//! submonoid, semigroup intersection) membership exactly when its defining graph has no
//! induced copy of one of the forbidden labeled patterns in [`Pattern`].

use std::fmt;

use crate::raag::LabeledGraph;
use crate::words::Alphabet;
use crate::{Error, Result};

/// The forbidden labeled induced subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// A 4-cycle labeled 2 with no diagonals.
    SquarePlain,
    /// A 4-cycle labeled 2 with one diagonal labeled `p > 2`.
    SquareOneDiagonal,
    /// A 4-cycle labeled 2 with both diagonals labeled `p, q > 2`.
    SquareTwoDiagonals,
    /// A triangle with at most one label equal to 2.
    Triangle,
    /// An induced path on four vertices labeled 2.
    Path4All2,
    /// An induced path on three vertices with at most one label equal to 2.
    Path3,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::SquarePlain => "Square-plain",
            Pattern::SquareOneDiagonal => "Square-one-diagonal",
            Pattern::SquareTwoDiagonals => "Square-two-diagonals",
            Pattern::Triangle => "Triangle",
            Pattern::Path4All2 => "Path4-all-2",
            Pattern::Path3 => "Path3",
        }
    }

    pub fn is_square(self) -> bool {
        matches!(
            self,
            Pattern::SquarePlain | Pattern::SquareOneDiagonal | Pattern::SquareTwoDiagonals
        )
    }
}

/// An occurrence of a [`Pattern`] in a graph.
///
/// `vertices` lists the cycle order for squares, the path order for paths (first endpoint
/// smaller than the last) and ascending order for triangles. `labels` holds the labels that
/// are free in the pattern: the diagonals of a square, the sorted labels of a triangle, the
/// two edges of a 3-vertex path; it is empty for the all-2 patterns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenWitness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
    pub labels: Vec<u32>,
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pattern.name())?;
        if !self.labels.is_empty() {
            let labels: Vec<String> = self.labels.iter().map(u32::to_string).collect();
            write!(f, "({})", labels.join(","))?;
        }
        Ok(())
    }
}

/// Lists every induced occurrence of a forbidden pattern, ordered by vertex tuple.
pub fn find_forbidden(graph: &LabeledGraph) -> Vec<ForbiddenWitness> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.extend(three_vertex(graph, [a, b, c]));
                for d in c + 1..n {
                    out.extend(four_vertex(graph, [a, b, c, d]));
                }
            }
        }
    }
    out.sort_by(|x, y| (&x.vertices, x.pattern).cmp(&(&y.vertices, y.pattern)));
    out
}

fn at_most_one_two(labels: &[u32]) -> bool {
    labels.iter().filter(|&&l| l == 2).count() <= 1
}

fn three_vertex(graph: &LabeledGraph, s: [usize; 3]) -> Option<ForbiddenWitness> {
    let pairs = [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])];
    let labels: Vec<Option<u32>> = pairs.iter().map(|&(u, v)| graph.label(u, v)).collect();
    match labels.iter().flatten().count() {
        3 => {
            let mut ls: Vec<u32> = labels.into_iter().flatten().collect();
            ls.sort_unstable();
            at_most_one_two(&ls).then(|| ForbiddenWitness {
                pattern: Pattern::Triangle,
                vertices: s.to_vec(),
                labels: ls,
            })
        }
        2 => {
            let missing = labels.iter().position(Option::is_none)?;
            let (u, w) = pairs[missing];
            let mid = s.into_iter().find(|&v| v != u && v != w)?;
            let ls = vec![graph.label(u, mid)?, graph.label(mid, w)?];
            at_most_one_two(&ls).then(|| ForbiddenWitness {
                pattern: Pattern::Path3,
                vertices: vec![u, mid, w],
                labels: ls,
            })
        }
        _ => None,
    }
}

fn four_vertex(graph: &LabeledGraph, s: [usize; 4]) -> Option<ForbiddenWitness> {
    let [a, b, c, d] = s;
    // The three ways of choosing a pair of diagonals.
    for (cycle, diagonals) in [
        ([a, b, c, d], [(a, c), (b, d)]),
        ([a, b, d, c], [(a, d), (b, c)]),
        ([a, c, b, d], [(a, b), (c, d)]),
    ] {
        let sides = (0..4).map(|i| graph.label(cycle[i], cycle[(i + 1) % 4]));
        if !sides.into_iter().all(|l| l == Some(2)) {
            continue;
        }
        let diag: Vec<Option<u32>> = diagonals.iter().map(|&(u, v)| graph.label(u, v)).collect();
        return match (diag[0], diag[1]) {
            (None, None) => Some(ForbiddenWitness {
                pattern: Pattern::SquarePlain,
                vertices: cycle.to_vec(),
                labels: vec![],
            }),
            (Some(p), None) | (None, Some(p)) if p > 2 => {
                // Start the cycle at an endpoint of the diagonal.
                let start = if diag[0].is_some() { 0 } else { 1 };
                let cycle: Vec<usize> = (0..4).map(|i| cycle[(start + i) % 4]).collect();
                Some(ForbiddenWitness {
                    pattern: Pattern::SquareOneDiagonal,
                    vertices: cycle,
                    labels: vec![p],
                })
            }
            (Some(p), Some(q)) if p > 2 && q > 2 => Some(ForbiddenWitness {
                pattern: Pattern::SquareTwoDiagonals,
                vertices: cycle.to_vec(),
                labels: vec![p, q],
            }),
            _ => None,
        };
    }
    // Three edges, two of them leaves and no isolated vertex, form a path.
    let edges = graph_edges(graph, &s);
    if edges.len() != 3 || edges.iter().any(|&(_, _, l)| l != 2) {
        return None;
    }
    let degree = |v: usize| edges.iter().filter(|&&(x, y, _)| x == v || y == v).count();
    let ends: Vec<usize> = s.into_iter().filter(|&v| degree(v) == 1).collect();
    if ends.len() != 2 || s.iter().any(|&v| degree(v) == 0) {
        return None;
    }
    let mut path = vec![ends[0]];
    while path.len() < 4 {
        let last = *path.last()?;
        let next = s
            .into_iter()
            .find(|&v| !path.contains(&v) && graph.has_edge(last, v))?;
        path.push(next);
    }
    Some(ForbiddenWitness {
        pattern: Pattern::Path4All2,
        vertices: path,
        labels: vec![],
    })
}

fn graph_edges(graph: &LabeledGraph, s: &[usize]) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if let Some(l) = graph.label(u, v) {
                out.push((u, v, l));
            }
        }
    }
    out
}

/// The decision problems a verdict covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    SubmonoidMembership,
    RationalSubsetMembership,
    FixedTargetSubmonoid,
    SemigroupIntersection,
    Identity,
    Group,
    SubgroupMembership,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::SubmonoidMembership,
        Problem::RationalSubsetMembership,
        Problem::FixedTargetSubmonoid,
        Problem::SemigroupIntersection,
        Problem::Identity,
        Problem::Group,
        Problem::SubgroupMembership,
    ];

    /// The problems whose decidability is characterized by the forbidden patterns.
    pub const CHARACTERIZED: [Problem; 4] = [
        Problem::SubmonoidMembership,
        Problem::RationalSubsetMembership,
        Problem::FixedTargetSubmonoid,
        Problem::SemigroupIntersection,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Problem::SubmonoidMembership => "submonoid",
            Problem::RationalSubsetMembership => "rational subset",
            Problem::FixedTargetSubmonoid => "fixed-target",
            Problem::SemigroupIntersection => "semigroup intersection",
            Problem::Identity => "identity",
            Problem::Group => "group",
            Problem::SubgroupMembership => "subgroup",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Decidable,
    Undecidable,
    Open,
}

/// Structure of a rank-2 Artin group with edge label `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralStructure {
    /// `⟨x, y | x^p = y^q⟩`, for odd `m = q`.
    TorusKnot(u32, u32),
    /// `BS(k, k)`, for even `m = 2k`.
    BaumslagSolitar(u32, u32),
}

impl fmt::Display for DihedralStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralStructure::TorusKnot(p, q) => write!(f, "TorusKnot({p},{q})"),
            DihedralStructure::BaumslagSolitar(m, n) => write!(f, "BaumslagSolitar({m},{n})"),
        }
    }
}

pub fn dihedral_structure(m: u32) -> Result<DihedralStructure> {
    match m {
        0 | 1 => Err(Error::InvalidArgument(format!("edge label {m} is below 2"))),
        m if m % 2 == 1 => Ok(DihedralStructure::TorusKnot(2, m)),
        m => Ok(DihedralStructure::BaumslagSolitar(m / 2, m / 2)),
    }
}

/// The defining graph of `B_n`: vertices `s1..s{n-1}`, label 3 between consecutive
/// generators and 2 between all others.
pub fn braid_graph(n: usize) -> Result<LabeledGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "braid groups need at least 2 strands, got {n}"
        )));
    }
    let k = n - 1;
    let vertices = Alphabet::new((1..=k).map(|i| format!("s{i}")))?;
    let edges =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j, if j == i + 1 { 3 } else { 2 })));
    LabeledGraph::new(vertices, edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    statuses: Vec<(Problem, Status)>,
    witness: Option<ForbiddenWitness>,
    witnesses: Vec<ForbiddenWitness>,
    justifications: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    pub fn status(&self, problem: Problem) -> Status {
        self.statuses
            .iter()
            .find(|(p, _)| *p == problem)
            .map(|&(_, s)| s)
            .expect("all problems present")
    }

    pub fn statuses(&self) -> &[(Problem, Status)] {
        &self.statuses
    }

    /// A square witness if any, otherwise the first witness.
    pub fn witness(&self) -> Option<&ForbiddenWitness> {
        self.witness.as_ref()
    }

    pub fn witnesses(&self) -> &[ForbiddenWitness] {
        &self.witnesses
    }

    pub fn justifications(&self) -> &[String] {
        &self.justifications
    }

    /// Structure remarks: rank-2 dihedral types and the pure braid remark.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn all_decidable(&self) -> bool {
        self.statuses.iter().all(|&(_, s)| s == Status::Decidable)
    }

    fn with_status(&self, status: Status) -> Vec<&'static str> {
        self.statuses
            .iter()
            .filter(|&&(_, s)| s == status)
            .map(|(p, _)| p.short_name())
            .collect()
    }

    /// One-line summary such as `undecidable: submonoid, …; open: identity, …; witness: Triangle(2,3,3)`.
    pub fn report(&self) -> String {
        if self.all_decidable() {
            return "all decidable".into();
        }
        let mut parts = Vec::new();
        for (status, label) in [
            (Status::Undecidable, "undecidable"),
            (Status::Decidable, "decidable"),
            (Status::Open, "open"),
        ] {
            let names = self.with_status(status);
            if !names.is_empty() {
                parts.push(format!("{label}: {}", names.join(", ")));
            }
        }
        if let Some(w) = &self.witness {
            parts.push(format!("witness: {w}"));
        }
        parts.join("; ")
    }
}

pub fn classify(graph: &LabeledGraph) -> Verdict {
    let witnesses = find_forbidden(graph);
    let square = witnesses.iter().find(|w| w.pattern.is_square());
    let witness = square.or(witnesses.first()).cloned();
    let (statuses, justifications): (Vec<(Problem, Status)>, Vec<String>) = if witnesses.is_empty()
    {
        (
            Problem::ALL.iter().map(|&p| (p, Status::Decidable)).collect(),
            vec!["no forbidden induced subgraph: the group is subgroup separable, so rational subset membership is decidable".into()],
        )
    } else if square.is_some() {
        (
            Problem::ALL.iter().map(|&p| (p, Status::Undecidable)).collect(),
            vec![
                "an induced generalized square embeds F2 x F2, which has a fixed finitely generated submonoid with undecidable membership".into(),
                "F2 x F2 also has undecidable subgroup membership, identity problem and group problem".into(),
            ],
        )
    } else {
        (
            Problem::ALL
                .iter()
                .map(|&p| (p, if Problem::CHARACTERIZED.contains(&p) { Status::Undecidable } else { Status::Open }))
                .collect(),
            vec![
                "an induced triangle or path pattern embeds A(P4), which has a fixed finitely generated submonoid with undecidable membership".into(),
                "without an induced square the identity, group and subgroup membership problems are not settled".into(),
            ],
        )
    };
    let mut notes = Vec::new();
    if graph.vertex_count() == 2 {
        if let Some(m) = graph.label(0, 1) {
            notes.push(format!(
                "rank 2 with label {m}: {}",
                dihedral_structure(m).expect("labels are at least 2")
            ));
        }
    }
    let n = graph.vertex_count() + 1;
    if braid_graph(n).is_ok_and(|b| &b == graph) {
        notes.push(format!(
            "this is B{n}; the pure braid group PB{n} has the same verdicts"
        ));
    }
    Verdict {
        statuses,
        witness,
        witnesses,
        justifications,
        notes,
    }
}
