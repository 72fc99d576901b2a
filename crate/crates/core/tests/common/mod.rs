//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use artinkit::automata::{Nfa, Transition};
use artinkit::words::{Alphabet, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

/// Deletes adjacent inverse pairs until none remain.
pub fn naive_reduce(w: &[i32]) -> Vec<i32> {
    let mut cur = w.to_vec();
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] == -cur[i + 1]) else {
            return cur;
        };
        cur.drain(i..i + 2);
    }
}

fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

fn substitute(w: &[i32], images: &[Vec<i32>]) -> Vec<i32> {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
    }
    naive_reduce(&out)
}

/// Triviality via the Artin action of `B_n` on the free group `F_n`, which is faithful.
pub fn artin_action_trivial(strands: usize, braid: &[i32]) -> bool {
    let gens: Vec<Vec<i32>> = (1..=strands as i32).map(|j| vec![j]).collect();
    let mut images = gens.clone();
    for &l in braid {
        let i = l.unsigned_abs() as usize;
        let (a, b) = (i as i32, i as i32 + 1);
        // the automorphism for this letter, on generators
        let step: Vec<Vec<i32>> = (1..=strands as i32)
            .map(|j| match (l > 0, j) {
                (true, j) if j == a => vec![a, b, -a],
                (true, j) if j == b => vec![a],
                (false, j) if j == a => vec![b],
                (false, j) if j == b => vec![-b, a, b],
                (_, j) => vec![j],
            })
            .collect();
        images = step.iter().map(|s| substitute(s, &images)).collect();
    }
    images == gens
}

/// Follows strands through the crossings: entry `p` is the 1-based strand found at position `p`.
pub fn strand_permutation(strands: usize, braid: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (1..=strands).collect();
    for &l in braid {
        let i = l.unsigned_abs() as usize;
        at.swap(i - 1, i);
    }
    at
}

/// Induced `C4` or `P4` in a graph given by adjacency bitmasks.
pub fn has_c4_or_p4(n: usize, adj: &[u32]) -> bool {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = [a, b, c, d];
                    let mask: u32 = s.iter().map(|&v| 1 << v).sum();
                    let degrees: Vec<u32> =
                        s.iter().map(|&v| (adj[v] & mask).count_ones()).collect();
                    let edges: u32 = degrees.iter().sum::<u32>() / 2;
                    let mut sorted = degrees.clone();
                    sorted.sort_unstable();
                    if (edges == 4 && sorted == [2, 2, 2, 2])
                        || (edges == 3 && sorted == [1, 1, 2, 2])
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Free reductions of labels of accepting paths reading at most `max_letters` letters.
pub fn accepted_reduced_words(nfa: &Nfa, max_letters: usize) -> HashSet<Vec<i32>> {
    let signed = |l: Letter| {
        if l.inverse {
            -(l.generator as i32 + 1)
        } else {
            l.generator as i32 + 1
        }
    };
    // 0-1 BFS: ε-moves are free, so a node's first pop has the fewest letters used.
    let mut done: HashSet<(usize, Vec<i32>)> = HashSet::new();
    let mut queue = VecDeque::from([(nfa.initial(), Vec::new(), 0usize)]);
    let mut out = HashSet::new();
    while let Some((state, word, used)) = queue.pop_front() {
        if !done.insert((state, word.clone())) {
            continue;
        }
        if nfa.finals().contains(&state) {
            out.insert(word.clone());
        }
        for t in nfa.transitions().iter().filter(|t| t.from == state) {
            match t.label {
                None => queue.push_front((t.to, word.clone(), used)),
                Some(l) if used < max_letters => {
                    let mut w = word.clone();
                    w.push(signed(l));
                    queue.push_back((t.to, naive_reduce(&w), used + 1));
                }
                Some(_) => {}
            }
        }
    }
    out
}

/// Compares Benois membership with enumeration of accepting paths reading at most
/// `max_letters` letters, widened to the Benois witness's letter count when that is longer.
/// Returns the first disagreeing query and the number of widened checks.
pub fn benois_vs_enumeration(
    nfa: &Nfa,
    queries: &[Vec<i32>],
    max_letters: usize,
) -> (Option<Vec<i32>>, usize) {
    let base = accepted_reduced_words(nfa, max_letters);
    let mut widened = 0;
    for q in queries {
        let witness = artinkit::automata::benois_witness(nfa, &word(q)).unwrap();
        let letters = witness.as_ref().map_or(0, |p| nfa.path_label(p).len());
        let found = if letters > max_letters {
            widened += 1;
            accepted_reduced_words(nfa, letters).contains(q)
        } else {
            base.contains(q)
        };
        if found != witness.is_some() {
            return (Some(q.clone()), widened);
        }
    }
    (None, widened)
}

/// All freely reduced words over `k` generators of length at most `max_len`.
pub fn reduced_words(k: i32, max_len: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..=k).flat_map(|g| [g, -g]).collect();
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut v: Vec<i32> = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A random automaton over `F2 = F(s, t)` on `states` states, initial `q0`, single final
/// `q{states-1}`, with up to `max_transitions` distinct transitions (ε allowed).
pub fn random_normalized_nfa(rng: &mut impl Rng, states: usize, max_transitions: usize) -> Nfa {
    let alphabet = Alphabet::new(["s", "t"]).unwrap();
    let labels = [
        None,
        Some(Letter::pos(0)),
        Some(Letter::neg(0)),
        Some(Letter::pos(1)),
        Some(Letter::neg(1)),
    ];
    let count = rng.gen_range(1..=max_transitions);
    let mut transitions = BTreeSet::new();
    for _ in 0..count {
        let t = Transition {
            from: rng.gen_range(0..states),
            label: labels[rng.gen_range(0..labels.len())],
            to: rng.gen_range(0..states),
        };
        transitions.insert(t);
    }
    let mut transitions: Vec<Transition> = transitions.into_iter().collect();
    transitions.shuffle(rng);
    Nfa::new(
        (0..states).map(|i| format!("q{i}")).collect(),
        alphabet,
        transitions,
        0,
        [states - 1],
    )
    .unwrap()
}

/// Converts signed letters into a word.
pub fn word(signed: &[i32]) -> Word {
    Word::from_signed(signed).unwrap()
}
