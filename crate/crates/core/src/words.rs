//! Alphabets, group words, free groups and free products.
//!
//! Words are flat sequences of [`Letter`]s (a generator index plus an inversion flag).
//! Names only matter at the edges of the system, so a [`Word`] never carries its
//! [`Alphabet`]; operations that need to validate letters take the alphabet size.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// An ordered list of distinct generator names.
///
/// The order is fixed at construction and is the tie-breaking order for every
/// canonical form in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, name) in symbols.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty generator name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate generator `{name}`"
                )));
            }
        }
        Ok(Self { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, generator: usize) -> Option<&str> {
        self.symbols.get(generator).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Parses a single letter token: `a` or `a^-1`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (token, false),
        };
        self.index_of(name)
            .map(|generator| Letter { generator, inverse })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator `{name}`")))
    }

    /// Renders a word as space-separated tokens (`a`, `a^-1`), or `1` for the identity.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|l| {
                let name = self.name(l.generator).unwrap_or("?");
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A generator or its formal inverse.
///
/// The derived order puts a generator immediately before its inverse, and
/// generators in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub const fn neg(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub const fn inv(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A word over a generator alphabet with formal inverses. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(generator: usize) -> Self {
        Self(vec![Letter::pos(generator)])
    }

    /// Builds a word from signed 1-based generator numbers: `2` is the second generator,
    /// `-2` its inverse. Zero is rejected.
    pub fn from_signed(letters: &[i32]) -> Result<Self> {
        letters
            .iter()
            .map(|&s| match s {
                0 => Err(Error::InvalidArgument("signed letter 0".into())),
                s if s > 0 => Ok(Letter::pos(s as usize - 1)),
                s => Ok(Letter::neg(s.unsigned_abs() as usize - 1)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Inverse of [`Word::from_signed`].
    pub fn to_signed(&self) -> Vec<i32> {
        self.0
            .iter()
            .map(|l| {
                let g = l.generator as i32 + 1;
                if l.inverse {
                    -g
                } else {
                    g
                }
            })
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Formal inverse: reversed letters, each inverted. No reduction is performed.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation, without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self^exp` as a concatenation; negative exponents use the formal inverse.
    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out.extend_from(&base);
        }
        out
    }

    /// Substitutes every generator by a word, inverting the image for inverse letters.
    pub fn substitute(&self, image: impl Fn(usize) -> Word) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            let w = image(l.generator);
            if l.inverse {
                out.extend_from(&w.inverse());
            } else {
                out.extend_from(&w);
            }
        }
        out
    }

    /// Checks that every generator index is below `size`.
    pub fn check(&self, size: usize) -> Result<()> {
        match self.0.iter().find(|l| l.generator >= size) {
            Some(l) => Err(Error::LetterOutOfRange {
                index: l.generator,
                size,
            }),
            None => Ok(()),
        }
    }

    /// Maps every generator index through `f`, keeping signs.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    generator: f(l.generator),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.to_signed().iter().map(i32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Freely reduces a word with a single left-to-right stack pass.
pub fn free_reduce(word: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.letters() {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Produces canonical representatives for the elements of a group given by generators.
///
/// Implementations must return identical words for equal group elements and the empty
/// word exactly for the identity. Input letters are assumed to be in range for the
/// group's alphabet.
pub trait Canonicalizer: Send + Sync {
    fn canonicalize(&self, word: &Word) -> Word;

    fn is_trivial(&self, word: &Word) -> bool {
        self.canonicalize(word).is_empty()
    }
}

/// A free group; canonical form is free reduction.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroup;

impl Canonicalizer for FreeGroup {
    fn canonicalize(&self, word: &Word) -> Word {
        free_reduce(word)
    }
}

/// The trivial group: every generator represents the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialGroup;

impl Canonicalizer for TrivialGroup {
    fn canonicalize(&self, _word: &Word) -> Word {
        Word::identity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: Factor,
    pub word: Word,
}

impl Syllable {
    pub fn new(factor: Factor, word: Word) -> Self {
        Self { factor, word }
    }

    pub fn left(word: Word) -> Self {
        Self::new(Factor::Left, word)
    }

    pub fn right(word: Word) -> Self {
        Self::new(Factor::Right, word)
    }
}

/// An element of a free product in normal form: alternating factors, no identity syllables,
/// each syllable canonical in its factor. Only [`FreeProduct`] constructs these.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeProductElement(Vec<Syllable>);

impl FreeProductElement {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

/// A free product `L * R` described by canonicalizers for its two factors.
#[derive(Clone, Copy)]
pub struct FreeProduct<'a> {
    pub left: &'a dyn Canonicalizer,
    pub right: &'a dyn Canonicalizer,
}

impl<'a> FreeProduct<'a> {
    pub fn new(left: &'a dyn Canonicalizer, right: &'a dyn Canonicalizer) -> Self {
        Self { left, right }
    }

    fn factor(&self, factor: Factor) -> &'a dyn Canonicalizer {
        match factor {
            Factor::Left => self.left,
            Factor::Right => self.right,
        }
    }

    /// Free-product normal form of a syllable sequence.
    pub fn reduce<I>(&self, syllables: I) -> FreeProductElement
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut out: Vec<Syllable> = Vec::new();
        for Syllable { factor, word } in syllables {
            let oracle = self.factor(factor);
            match out.last_mut() {
                Some(top) if top.factor == factor => {
                    let merged = oracle.canonicalize(&top.word.concat(&word));
                    if merged.is_empty() {
                        out.pop();
                    } else {
                        top.word = merged;
                    }
                }
                _ => {
                    let word = oracle.canonicalize(&word);
                    if !word.is_empty() {
                        out.push(Syllable { factor, word });
                    }
                }
            }
        }
        FreeProductElement(out)
    }

    pub fn multiply(&self, u: &FreeProductElement, v: &FreeProductElement) -> FreeProductElement {
        self.reduce(u.0.iter().chain(v.0.iter()).cloned())
    }

    pub fn inverse(&self, u: &FreeProductElement) -> FreeProductElement {
        self.reduce(
            u.0.iter()
                .rev()
                .map(|s| Syllable::new(s.factor, s.word.inverse())),
        )
    }
}
