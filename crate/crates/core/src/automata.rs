//! Finite automata with ε-transitions over a generator alphabet with inverses, and
//! Benois saturation for rational subsets of free groups.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::words::{free_reduce, Alphabet, Letter, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    /// `None` is an ε-transition.
    pub label: Option<Letter>,
    pub to: usize,
}

/// A nondeterministic automaton with a single initial state.
///
/// States, transitions and finals keep their declaration order; downstream encodings
/// (notably [`crate::reduction::StateEncoding`]) depend on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<String>,
    alphabet: Alphabet,
    transitions: Vec<Transition>,
    initial: usize,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        transitions: Vec<Transition>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = states.len();
        let mut names = BTreeSet::new();
        for s in &states {
            if s.is_empty() || !names.insert(s.as_str()) {
                return Err(Error::InvalidAutomaton(format!(
                    "state name `{s}` is empty or repeated"
                )));
            }
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(
                "initial state is not declared".into(),
            ));
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if finals.iter().any(|&f| f >= n) {
            return Err(Error::InvalidAutomaton(
                "final state is not declared".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for t in &transitions {
            if t.from >= n || t.to >= n {
                return Err(Error::InvalidAutomaton(
                    "transition endpoint is not declared".into(),
                ));
            }
            if let Some(l) = t.label {
                if l.generator >= alphabet.len() {
                    return Err(Error::InvalidAutomaton(format!(
                        "transition letter {} is not in the alphabet",
                        l.generator
                    )));
                }
            }
            if !seen.insert(*t) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition {} -> {}",
                    states[t.from], states[t.to]
                )));
            }
        }
        Ok(Self {
            states,
            alphabet,
            transitions,
            initial,
            finals,
        })
    }

    /// Convenience constructor from names; labels are `a`, `a^-1` or `eps`.
    pub fn from_names(
        states: &[&str],
        alphabet: &[&str],
        transitions: &[(&str, &str, &str)],
        initial: &str,
        finals: &[&str],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.iter().copied())?;
        let index: HashMap<&str, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let state = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{name}`")))
        };
        let transitions = transitions
            .iter()
            .map(|&(from, label, to)| {
                let label = match label {
                    "eps" => None,
                    token => Some(alphabet.parse_letter(token)?),
                };
                Ok(Transition {
                    from: state(from)?,
                    label,
                    to: state(to)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let finals = finals
            .iter()
            .map(|f| state(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            states.iter().map(|s| s.to_string()).collect(),
            alphabet,
            transitions,
            state(initial)?,
            finals,
        )
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    /// Rewrites every letter through `map` into a new alphabet.
    pub fn relabel(&self, alphabet: Alphabet, map: impl Fn(usize) -> usize) -> Result<Nfa> {
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                label: t.label.map(|l| Letter {
                    generator: map(l.generator),
                    inverse: l.inverse,
                }),
                ..*t
            })
            .collect();
        Nfa::new(
            self.states.clone(),
            alphabet,
            transitions,
            self.initial,
            self.finals.iter().copied(),
        )
    }

    fn fresh_name(&self, base: &str) -> String {
        let taken = |s: &str| self.states.iter().any(|t| t == s);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|s| !taken(s))
            .expect("infinitely many names")
    }

    /// An automaton for `prefix · L(self)`: a fresh chain reading `prefix` leads into the
    /// old initial state.
    pub fn prepend(&self, prefix: &Word) -> Result<Nfa> {
        prefix.check(self.alphabet.len())?;
        let letters = prefix.letters();
        let mut nfa = self.clone();
        if letters.is_empty() {
            return Ok(nfa);
        }
        let first = nfa.states.len();
        for i in 0..letters.len() {
            let name = nfa.fresh_name(&format!("pre{i}"));
            nfa.states.push(name);
        }
        for (i, &l) in letters.iter().enumerate() {
            let to = if i + 1 < letters.len() {
                first + i + 1
            } else {
                self.initial
            };
            nfa.transitions.push(Transition {
                from: first + i,
                label: Some(l),
                to,
            });
        }
        nfa.initial = first;
        Ok(nfa)
    }

    /// Whether `path` (transition indices) runs from the initial state to a final state.
    pub fn is_accepting_path(&self, path: &[usize]) -> bool {
        let mut at = self.initial;
        for &i in path {
            match self.transitions.get(i) {
                Some(t) if t.from == at => at = t.to,
                _ => return false,
            }
        }
        self.finals.contains(&at)
    }

    /// The word read along a path, ε-transitions contributing nothing.
    pub fn path_label(&self, path: &[usize]) -> Word {
        path.iter()
            .filter_map(|&i| self.transitions[i].label)
            .collect()
    }

    /// An accepting path reading exactly `word` (letter for letter, no cancellation),
    /// shortest in number of transitions.
    pub fn accepting_path(&self, word: &Word) -> Option<Vec<usize>> {
        search_path(
            self.states.len(),
            self.initial,
            &self.finals,
            word,
            self.transitions.iter().copied(),
        )
    }
}

/// Breadth-first search over `(state, letters consumed)` returning the used edge indices.
fn search_path(
    state_count: usize,
    initial: usize,
    finals: &BTreeSet<usize>,
    word: &Word,
    edges: impl Iterator<Item = Transition>,
) -> Option<Vec<usize>> {
    let letters = word.letters();
    let mut out_edges: Vec<Vec<(usize, Transition)>> = vec![Vec::new(); state_count];
    for (i, t) in edges.enumerate() {
        out_edges[t.from].push((i, t));
    }
    let width = letters.len() + 1;
    let node = |s: usize, p: usize| s * width + p;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; state_count * width];
    let mut visited = vec![false; state_count * width];
    let mut queue = VecDeque::from([(initial, 0)]);
    visited[node(initial, 0)] = true;
    while let Some((s, p)) = queue.pop_front() {
        if p == letters.len() && finals.contains(&s) {
            let mut path = Vec::new();
            let mut at = node(s, p);
            while let Some((prev, edge)) = parent[at] {
                path.push(edge);
                at = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(i, t) in &out_edges[s] {
            let next = match t.label {
                None => (t.to, p),
                Some(l) if p < letters.len() && letters[p] == l => (t.to, p + 1),
                Some(_) => continue,
            };
            let id = node(next.0, next.1);
            if !visited[id] {
                visited[id] = true;
                parent[id] = Some((node(s, p), i));
                queue.push_back(next);
            }
        }
    }
    None
}

/// An automaton with exactly one final state, distinct from the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedNfa {
    nfa: Nfa,
    final_state: usize,
}

impl NormalizedNfa {
    /// Accepts an automaton that already has the normalized shape.
    pub fn try_from_nfa(nfa: Nfa) -> Result<Self> {
        let final_state = match nfa.finals.iter().copied().collect::<Vec<_>>()[..] {
            [f] => f,
            _ => {
                return Err(Error::NotNormalized(format!(
                    "{} final states",
                    nfa.finals.len()
                )))
            }
        };
        if final_state == nfa.initial {
            return Err(Error::NotNormalized(
                "the final state is the initial state".into(),
            ));
        }
        Ok(Self { nfa, final_state })
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn initial(&self) -> usize {
        self.nfa.initial
    }

    pub fn final_state(&self) -> usize {
        self.final_state
    }
}

/// Adds a fresh final state reached by ε-edges from every former final state.
///
/// The fresh state is always added, so the result has a single final state distinct from
/// the initial one even when the input already had a single final.
pub fn normalize(nfa: &Nfa) -> NormalizedNfa {
    let mut out = nfa.clone();
    let name = nfa.fresh_name("qf");
    out.states.push(name);
    let final_state = out.states.len() - 1;
    for &f in &nfa.finals {
        out.transitions.push(Transition {
            from: f,
            label: None,
            to: final_state,
        });
    }
    out.finals = BTreeSet::from([final_state]);
    NormalizedNfa {
        nfa: out,
        final_state,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Origin {
    Original(usize),
    /// `from -x-> r ⇒ε s -x^-1-> to`: the first edge, the ε-path between, the second edge.
    Derived {
        first: usize,
        middle: Vec<usize>,
        second: usize,
    },
}

#[derive(Debug, Clone)]
struct SatEdge {
    edge: Transition,
    origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SaturationStats {
    /// Number of rounds that added at least one edge.
    pub rounds: usize,
    /// Total edge count after each productive round, preceded by the initial count.
    pub edge_counts: Vec<usize>,
}

/// An automaton closed under Benois saturation, remembering how each added ε-edge arose.
#[derive(Debug, Clone)]
pub struct Saturation {
    state_count: usize,
    initial: usize,
    finals: BTreeSet<usize>,
    edges: Vec<SatEdge>,
    stats: SaturationStats,
}

/// For each state, the ε-reachable states and the ε-edge used to first reach them.
fn epsilon_reach(state_count: usize, edges: &[SatEdge]) -> Vec<Vec<Option<Option<usize>>>> {
    let mut eps_out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); state_count];
    for (i, e) in edges.iter().enumerate() {
        if e.edge.label.is_none() {
            eps_out[e.edge.from].push((i, e.edge.to));
        }
    }
    (0..state_count)
        .map(|s| {
            // reach[t] = Some(None) for s itself, Some(Some(edge)) for the edge entering t.
            let mut reach = vec![None; state_count];
            reach[s] = Some(None);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(i, v) in &eps_out[u] {
                    if reach[v].is_none() {
                        reach[v] = Some(Some(i));
                        queue.push_back(v);
                    }
                }
            }
            reach
        })
        .collect()
}

fn epsilon_path(edges: &[SatEdge], reach: &[Option<Option<usize>>], to: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut at = to;
    while let Some(Some(i)) = reach[at] {
        path.push(i);
        at = edges[i].edge.from;
    }
    path.reverse();
    path
}

/// Saturates: adds `p -ε-> q` whenever `p -x-> r`, `r ⇒ε s` and `s -x^-1-> q`, until
/// nothing new becomes ε-reachable.
pub fn saturate(nfa: &Nfa) -> Saturation {
    let n = nfa.state_count();
    let mut edges: Vec<SatEdge> = nfa
        .transitions
        .iter()
        .enumerate()
        .map(|(i, &edge)| SatEdge {
            edge,
            origin: Origin::Original(i),
        })
        .collect();
    let mut stats = SaturationStats {
        rounds: 0,
        edge_counts: vec![edges.len()],
    };
    loop {
        let reach = epsilon_reach(n, &edges);
        let letter_edges: Vec<usize> = (0..edges.len())
            .filter(|&i| edges[i].edge.label.is_some())
            .collect();
        let mut added = Vec::new();
        let mut pending = BTreeSet::new();
        for &i in &letter_edges {
            let first = edges[i].edge;
            let x = first.label.expect("letter edge");
            for &j in &letter_edges {
                let second = edges[j].edge;
                if second.label != Some(x.inv())
                    || reach[first.from][second.to].is_some()
                    || pending.contains(&(first.from, second.to))
                {
                    continue;
                }
                if reach[first.to][second.from].is_none() {
                    continue;
                }
                let middle = epsilon_path(&edges, &reach[first.to], second.from);
                added.push(SatEdge {
                    edge: Transition {
                        from: first.from,
                        label: None,
                        to: second.to,
                    },
                    origin: Origin::Derived {
                        first: i,
                        middle,
                        second: j,
                    },
                });
                pending.insert((first.from, second.to));
            }
        }
        if added.is_empty() {
            break;
        }
        edges.extend(added);
        stats.rounds += 1;
        stats.edge_counts.push(edges.len());
    }
    Saturation {
        state_count: n,
        initial: nfa.initial,
        finals: nfa.finals.clone(),
        edges,
        stats,
    }
}

impl Saturation {
    pub fn stats(&self) -> &SaturationStats {
        &self.stats
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// A path in the saturated automaton reading the freely reduced `word`, expanded into
    /// a path of the original automaton whose label freely reduces to `word`.
    pub fn witness(&self, word: &Word) -> Option<Vec<usize>> {
        let reduced = free_reduce(word);
        let path = search_path(
            self.state_count,
            self.initial,
            &self.finals,
            &reduced,
            self.edges.iter().map(|e| e.edge),
        )?;
        let mut out = Vec::new();
        for e in path {
            self.expand(e, &mut out);
        }
        Some(out)
    }

    fn expand(&self, edge: usize, out: &mut Vec<usize>) {
        let mut stack = vec![edge];
        while let Some(e) = stack.pop() {
            match &self.edges[e].origin {
                Origin::Original(t) => out.push(*t),
                Origin::Derived {
                    first,
                    middle,
                    second,
                } => {
                    stack.push(*second);
                    stack.extend(middle.iter().rev());
                    stack.push(*first);
                }
            }
        }
    }
}

/// Decides whether the free-group element `u` lies in the rational subset `π(L(nfa))`.
pub fn benois_member(nfa: &Nfa, u: &Word) -> Result<bool> {
    Ok(benois_witness(nfa, u)?.is_some())
}

/// Like [`benois_member`], but returns an accepting path of `nfa` whose label freely
/// reduces to `u`.
pub fn benois_witness(nfa: &Nfa, u: &Word) -> Result<Option<Vec<usize>>> {
    u.check(nfa.alphabet.len())?;
    Ok(saturate(nfa).witness(u))
}

/// Whether `1 ∈ π(L(nfa))` in the free group on the automaton's alphabet.
pub fn contains_identity(nfa: &Nfa) -> bool {
    saturate(nfa).witness(&Word::identity()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(nfa: &Nfa, tokens: &[&str]) -> Word {
        tokens
            .iter()
            .map(|t| nfa.alphabet().parse_letter(t).unwrap())
            .collect()
    }

    #[test]
    fn construction_rejects_bad_automata() {
        let ok = |t: &[(&str, &str, &str)]| Nfa::from_names(&["p", "q"], &["x"], t, "p", &["q"]);
        assert!(ok(&[("p", "x", "q")]).is_ok());
        assert!(ok(&[("p", "y", "q")]).is_err());
        assert!(ok(&[("p", "x", "r")]).is_err());
        assert!(ok(&[("p", "x", "q"), ("p", "x", "q")]).is_err());
        assert!(Nfa::from_names(&["p", "p"], &["x"], &[], "p", &[]).is_err());
        assert!(Nfa::from_names(&["p"], &["x"], &[], "r", &[]).is_err());
    }

    #[test]
    fn normalize_single_accepting_state() {
        let nfa = Nfa::from_names(&["q0"], &["x"], &[], "q0", &["q0"]).unwrap();
        let norm = normalize(&nfa);
        assert_eq!(norm.nfa().state_count(), 2);
        assert_eq!(
            norm.nfa().transitions(),
            &[Transition {
                from: 0,
                label: None,
                to: 1
            }]
        );
        assert_ne!(norm.initial(), norm.final_state());
        assert!(norm.nfa().accepting_path(&Word::identity()).is_some());
    }

    #[test]
    fn normalize_two_finals() {
        let nfa = Nfa::from_names(
            &["a", "b", "c"],
            &["x"],
            &[("a", "x", "b"), ("a", "x^-1", "c")],
            "a",
            &["b", "c"],
        )
        .unwrap();
        let norm = normalize(&nfa);
        assert_eq!(norm.nfa().finals().len(), 1);
        assert_eq!(norm.nfa().transitions().len(), 4);
        assert_eq!(
            norm.nfa()
                .transitions()
                .iter()
                .filter(|t| t.label.is_none())
                .count(),
            2
        );
        assert_eq!(norm.nfa().states()[3], "qf");
    }

    #[test]
    fn normalize_avoids_name_clash() {
        let nfa = Nfa::from_names(&["qf"], &["x"], &[], "qf", &["qf"]).unwrap();
        assert_eq!(normalize(&nfa).nfa().states()[1], "qf1");
    }

    #[test]
    fn try_from_nfa_checks_shape() {
        let two = Nfa::from_names(&["a", "b"], &["x"], &[], "a", &["a", "b"]).unwrap();
        assert!(NormalizedNfa::try_from_nfa(two).is_err());
        let same = Nfa::from_names(&["a"], &["x"], &[], "a", &["a"]).unwrap();
        assert!(NormalizedNfa::try_from_nfa(same).is_err());
        let good = Nfa::from_names(&["a", "b"], &["x"], &[], "a", &["b"]).unwrap();
        assert!(NormalizedNfa::try_from_nfa(good).is_ok());
    }

    #[test]
    fn benois_cancelling_pair() {
        let nfa = Nfa::from_names(
            &["p", "m", "q"],
            &["x"],
            &[("p", "x", "m"), ("m", "x^-1", "q")],
            "p",
            &["q"],
        )
        .unwrap();
        assert!(benois_member(&nfa, &Word::identity()).unwrap());
        assert!(contains_identity(&nfa));
        assert!(!benois_member(&nfa, &word(&nfa, &["x"])).unwrap());
        let path = benois_witness(&nfa, &Word::identity()).unwrap().unwrap();
        assert_eq!(path, vec![0, 1]);
        assert!(nfa.is_accepting_path(&path));
    }

    #[test]
    fn benois_star_then_letter() {
        // x* y
        let nfa = Nfa::from_names(
            &["p", "q"],
            &["x", "y"],
            &[("p", "x", "p"), ("p", "y", "q")],
            "p",
            &["q"],
        )
        .unwrap();
        assert!(benois_member(&nfa, &word(&nfa, &["x", "x", "y"])).unwrap());
        assert!(!benois_member(&nfa, &word(&nfa, &["y", "x"])).unwrap());
        assert!(!contains_identity(&nfa));
    }

    #[test]
    fn benois_positive_powers_exclude_identity() {
        let nfa = Nfa::from_names(
            &["p", "q"],
            &["x"],
            &[("p", "x", "q"), ("q", "x", "q")],
            "p",
            &["q"],
        )
        .unwrap();
        assert!(!contains_identity(&nfa));
        let eps = Nfa::from_names(&["p"], &["x"], &[], "p", &["p"]).unwrap();
        assert!(contains_identity(&eps));
    }

    #[test]
    fn benois_without_accepting_path() {
        let nfa = Nfa::from_names(&["p", "q"], &["x"], &[("q", "x", "p")], "p", &["q"]).unwrap();
        assert!(!benois_member(&nfa, &Word::identity()).unwrap());
        assert!(!benois_member(&nfa, &word(&nfa, &["x"])).unwrap());
    }

    #[test]
    fn benois_rejects_foreign_letters() {
        let nfa = Nfa::from_names(&["p"], &["x"], &[], "p", &["p"]).unwrap();
        assert!(benois_member(&nfa, &Word::generator(1)).is_err());
    }

    #[test]
    fn benois_nested_cancellation_witness() {
        // x y (loop y^-1) x^-1: needs two levels of saturation
        let nfa = Nfa::from_names(
            &["a", "b", "c", "d"],
            &["x", "y"],
            &[
                ("a", "x", "b"),
                ("b", "y", "c"),
                ("c", "y^-1", "c"),
                ("c", "eps", "d"),
                ("d", "x^-1", "a"),
            ],
            "a",
            &["a"],
        )
        .unwrap();
        let sat = saturate(&nfa);
        assert!(sat.stats().rounds >= 1);
        let path = sat.witness(&Word::identity()).unwrap();
        assert!(nfa.is_accepting_path(&path));
        assert!(free_reduce(&nfa.path_label(&path)).is_empty());
    }

    #[test]
    fn prepend_builds_left_translate() {
        let nfa =
            Nfa::from_names(&["p", "q"], &["x", "y"], &[("p", "y", "q")], "p", &["q"]).unwrap();
        let x = word(&nfa, &["x"]);
        let shifted = nfa.prepend(&x).unwrap();
        assert!(shifted.accepting_path(&word(&nfa, &["x", "y"])).is_some());
        assert!(shifted.accepting_path(&word(&nfa, &["y"])).is_none());
        assert_eq!(nfa.prepend(&Word::identity()).unwrap(), nfa);
    }

    #[test]
    fn saturation_edge_counts_increase_and_are_bounded() {
        let nfa = Nfa::from_names(
            &["a", "b", "c"],
            &["x", "y"],
            &[
                ("a", "x", "b"),
                ("b", "x^-1", "c"),
                ("c", "y", "a"),
                ("a", "y^-1", "b"),
                ("b", "x", "a"),
            ],
            "a",
            &["c"],
        )
        .unwrap();
        let sat = saturate(&nfa);
        let counts = &sat.stats().edge_counts;
        assert!(counts.windows(2).all(|w| w[0] < w[1]));
        assert!(sat.edge_count() <= 3 * 3 * (2 * 2 + 1));
    }
}
