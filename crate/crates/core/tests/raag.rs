mod common;

use std::collections::HashSet;

use artinkit::raag::{p4_conjugate_vertex, LabeledGraph, Raag};
use artinkit::words::Word;
use common::word;
use rayon::prelude::*;

const MAX_LEN: usize = 8;

fn adjacent(u: i32, v: i32) -> bool {
    (u.abs() - v.abs()).abs() == 1
}

/// Every trivial word of length at most `MAX_LEN` over P4 (letters ±1..±4 for a..d),
/// generated from the empty word by inserting cancelling pairs and swapping commuting
/// neighbours. Trivial words reduce to the empty word without growing, so the closure
/// is complete.
fn trivial_words() -> HashSet<Vec<i32>> {
    let letters: Vec<i32> = (1..=4).flat_map(|g| [g, -g]).collect();
    let mut seen: HashSet<Vec<i32>> = HashSet::from([vec![]]);
    let mut stack = vec![vec![]];
    while let Some(w) = stack.pop() {
        let mut next = Vec::new();
        if w.len() + 2 <= MAX_LEN {
            for i in 0..=w.len() {
                for &l in &letters {
                    let mut v = w.clone();
                    v.splice(i..i, [l, -l]);
                    next.push(v);
                }
            }
        }
        for i in 0..w.len().saturating_sub(1) {
            if adjacent(w[i], w[i + 1]) {
                let mut v = w.clone();
                v.swap(i, i + 1);
                next.push(v);
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    seen
}

fn decode(mut code: usize, len: usize) -> Vec<i32> {
    let letters = [1, -1, 2, -2, 3, -3, 4, -4];
    (0..len)
        .map(|_| {
            let l = letters[code % 8];
            code /= 8;
            l
        })
        .collect()
}

#[test]
fn p4_word_problem_matches_exhaustive_closure() {
    let trivial = trivial_words();
    let p4 = Raag::p4();
    for len in 0..=MAX_LEN {
        let total = 8usize.pow(len as u32);
        let mismatches: usize = (0..total)
            .into_par_iter()
            .filter(|&code| {
                let w = decode(code, len);
                p4.is_trivial(&word(&w)).unwrap() != trivial.contains(&w)
            })
            .count();
        assert_eq!(mismatches, 0, "length {len}");
    }
}

#[test]
fn catalog_is_a_path() {
    let p4 = Raag::p4();
    for m in -4i64..=9 {
        for n in m + 1..=9 {
            let commute = p4
                .commutes(&p4_conjugate_vertex(m), &p4_conjugate_vertex(n))
                .unwrap();
            assert_eq!(commute, n - m == 1, "x{m}, x{n}");
        }
    }
}

#[test]
fn canonical_form_on_a_triangle_free_graph() {
    // C5: a pentagon, so commuting pairs are exactly the cycle edges.
    let g = LabeledGraph::from_names(
        &["a", "b", "c", "d", "e"],
        &[
            ("a", "b", 2),
            ("b", "c", 2),
            ("c", "d", 2),
            ("d", "e", 2),
            ("e", "a", 2),
        ],
    )
    .unwrap();
    let raag = Raag::new(g).unwrap();
    let ab = word(&[1, 2, -1, -2]);
    let ac = word(&[1, 3, -1, -3]);
    assert!(raag.is_trivial(&ab).unwrap());
    assert!(!raag.is_trivial(&ac).unwrap());
    assert_eq!(
        raag.canonical_form(&word(&[2, 5, 1])).unwrap(),
        word(&[1, 2, 5])
    );
    assert_eq!(
        raag.canonical_form(&Word::identity()).unwrap(),
        Word::identity()
    );
}
