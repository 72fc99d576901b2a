//! Braid groups: Garside left normal form, the projection to `S_n`, and the embedding of
//! `A(P4)` into `B4`.
//!
//! A positive permutation braid is stored as its permutation. With `σ_i ↦ s_i` and
//! functional composition (`(u∘v)(j) = u(v(j))`), the braid `σ_i·A` starts with `σ_i`
//! exactly when `s_i` is a left descent of the permutation of `A`, and `A·σ_i` is
//! positive-simple exactly when `s_i` is not a right descent. Left-weightedness of a
//! pair `A·B` is then "every left descent of `B` is a right descent of `A`".

use std::fmt;

use crate::raag::p4;
use crate::words::{Letter, Word};
use crate::{Error, Result};

/// A permutation of `{1..n}`; stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// The half-twist permutation `i ↦ n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Self((0..n).rev().collect())
    }

    /// The transposition `(i, i+1)` for a 1-based `i`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[img - 1] = true;
            out.push(img - 1);
        }
        Ok(Self(out))
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// `self ∘ s_t` is shorter (0-based `t`).
    fn right_descent(&self, t: usize) -> bool {
        self.0[t] > self.0[t + 1]
    }

    /// `s_t ∘ self` is shorter (0-based `t`).
    fn left_descent(&self, t: usize) -> bool {
        let (mut a, mut b) = (0, 0);
        for (i, &v) in self.0.iter().enumerate() {
            if v == t {
                a = i;
            } else if v == t + 1 {
                b = i;
            }
        }
        a > b
    }

    fn mul_right(&mut self, t: usize) {
        self.0.swap(t, t + 1);
    }

    fn mul_left(&mut self, t: usize) {
        for v in self.0.iter_mut() {
            if *v == t {
                *v = t + 1;
            } else if *v == t + 1 {
                *v = t;
            }
        }
    }

    /// Conjugation by the half-twist.
    fn flip(&self) -> Permutation {
        let n = self.0.len();
        Permutation(self.0.iter().rev().map(|&v| n - 1 - v).collect())
    }

    /// A reduced word `σ_{i1}…σ_{ik}` whose permutation is `self` (positive, 0-based letters).
    fn positive_word(&self) -> Vec<Letter> {
        let mut p = self.clone();
        let mut rev = Vec::with_capacity(p.length());
        while let Some(t) = (0..p.0.len().saturating_sub(1)).find(|&t| p.right_descent(t)) {
            p.mul_right(t);
            rev.push(Letter::pos(t));
        }
        rev.reverse();
        rev
    }

    /// Cycle notation with 1-based points, e.g. `(1 2 3)`; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// A word in the Artin generators `σ_1..σ_{n-1}` of `B_n`. Letter generator indices are
/// 0-based (`σ_i` is generator `i - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Word,
}

impl BraidWord {
    pub fn new(strands: usize, word: Word) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidBraid(format!(
                "{strands} strands; need at least 2"
            )));
        }
        if let Some(l) = word.letters().iter().find(|l| l.generator + 1 >= strands) {
            return Err(Error::InvalidBraid(format!(
                "generator σ{} out of range for B{strands}",
                l.generator + 1
            )));
        }
        Ok(Self { strands, word })
    }

    /// From signed generator numbers: `2` is `σ_2`, `-3` is `σ_3^-1`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<Self> {
        let word = Word::from_signed(letters).map_err(|e| Error::InvalidBraid(e.to_string()))?;
        Self::new(strands, word)
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Word::identity())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.word.to_signed()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(
            self.strands, other.strands,
            "braids on different strand counts"
        );
        BraidWord {
            strands: self.strands,
            word: self.word.concat(&other.word),
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.inverse(),
        }
    }
}

/// `Δ^inf · A_1 ⋯ A_r` with each `A_i` a proper, nontrivial permutation braid and each
/// pair `A_i A_{i+1}` left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideNormalForm {
    strands: usize,
    inf: i64,
    factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            inf: 0,
            factors: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The power of the half-twist.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// Canonical length.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// A braid word representing this element.
    pub fn to_braid(&self) -> BraidWord {
        let delta = Word::new(Permutation::longest(self.strands).positive_word());
        let mut word = delta.pow(self.inf);
        for f in &self.factors {
            for l in f.positive_word() {
                word.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            word,
        }
    }

    fn push_positive(&mut self, factor: Permutation) {
        if factor.is_identity() {
            return;
        }
        self.factors.push(factor);
        loop {
            let mut changed = false;
            for j in (0..self.factors.len() - 1).rev() {
                let (head, tail) = self.factors.split_at_mut(j + 1);
                changed |= left_weight(&mut head[j], &mut tail[0]);
            }
            if !changed {
                break;
            }
        }
        let delta = Permutation::longest(self.strands);
        let leading = self.factors.iter().take_while(|f| **f == delta).count();
        self.factors.drain(..leading);
        self.inf += leading as i64;
        while self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
        debug_assert!(self.factors.iter().all(|f| !f.is_identity() && *f != delta));
    }

    fn push_letter(&mut self, letter: Letter) {
        let n = self.strands;
        let s = Permutation::transposition(n, letter.generator + 1);
        if letter.inverse {
            // σ^-1 = Δ^-1 (Δ σ^-1), then move Δ^-1 to the front through τ.
            self.inf -= 1;
            for f in self.factors.iter_mut() {
                *f = f.flip();
            }
            self.push_positive(Permutation::longest(n).compose(&s));
        } else {
            self.push_positive(s);
        }
    }
}

/// Slides generators from `b` into `a` until every left descent of `b` is a right descent
/// of `a`. Returns whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.degree();
    let mut moved = false;
    while let Some(t) = (0..n - 1).find(|&t| b.left_descent(t) && !a.right_descent(t)) {
        a.mul_right(t);
        b.mul_left(t);
        moved = true;
    }
    moved
}

/// Garside left normal form; equal braids have identical normal forms.
pub fn garside_normal_form(braid: &BraidWord) -> GarsideNormalForm {
    let mut nf = GarsideNormalForm::identity(braid.strands);
    for &l in braid.word.letters() {
        nf.push_letter(l);
    }
    nf
}

pub fn braid_is_trivial(braid: &BraidWord) -> bool {
    garside_normal_form(braid).is_identity()
}

/// Whether two braid words represent the same element.
pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> bool {
    u.strands == v.strands && garside_normal_form(u) == garside_normal_form(v)
}

/// Image in `S_n` under `σ_i ↦ (i, i+1)`.
pub fn permutation_of(braid: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(braid.strands);
    for l in braid.word.letters() {
        p.mul_right(l.generator);
    }
    p
}

/// Whether the braid lies in the pure braid group (trivial permutation).
///
/// Any fixed-target instance whose target is pure, such as [`gamma0`], stays meaningful in
/// `PB_n`: the undecidability results for `B_4` transfer to `PB_4`.
pub fn is_pure(braid: &BraidWord) -> bool {
    permutation_of(braid).is_identity()
}

fn signed_block(letters: &[i32]) -> Word {
    Word::from_signed(letters).expect("nonzero letters")
}

/// Images in `B4` of the `A(P4)` generators `a, b, c, d`:
/// `σ2², (σ2σ3σ2)², σ3², σ1²`.
pub fn droms_images() -> [BraidWord; 4] {
    [
        signed_block(&[2, 2]),
        signed_block(&[2, 3, 2, 2, 3, 2]),
        signed_block(&[3, 3]),
        signed_block(&[1, 1]),
    ]
    .map(|w| BraidWord {
        strands: 4,
        word: w,
    })
}

/// Injective homomorphism `A(P4) → B4` on words over `a, b, c, d`.
pub fn droms_embed(w: &Word) -> Result<BraidWord> {
    w.check(4)?;
    let images = droms_images();
    let word = w.substitute(|g| images[g].word.clone());
    Ok(BraidWord { strands: 4, word })
}

/// `γ0 = σ2² σ3² σ2⁻² σ3⁻²`, the image of `a c a⁻¹ c⁻¹`.
pub fn gamma0() -> BraidWord {
    BraidWord {
        strands: 4,
        word: signed_block(&[2, 2, 3, 3, -2, -2, -3, -3]),
    }
}

/// The commutator `a c a⁻¹ c⁻¹` in `A(P4)`, whose image is [`gamma0`].
pub fn p4_commutator_ac() -> Word {
    Word::new(vec![
        Letter::pos(p4::A),
        Letter::pos(p4::C),
        Letter::neg(p4::A),
        Letter::neg(p4::C),
    ])
}
