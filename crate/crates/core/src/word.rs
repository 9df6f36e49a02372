//! Exact arithmetic in a free group: free and cyclic reduction, conjugacy,
//! translation length on the Cayley tree, and membership in cyclic
//! subgroups.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax;

/// Ordered set of generator names. The order drives shortlex comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !syntax::is_identifier(name) {
                return Err(Error::InvalidAlphabet(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Collects generator names in order of first appearance across `texts`.
    pub fn infer(texts: &[&str]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for text in texts {
            for factor in syntax::tokenize(text)? {
                if !names.iter().any(|n| n == factor.name) {
                    names.push(factor.name.to_string());
                }
            }
        }
        if names.is_empty() {
            // Only identity words were given; any one-letter alphabet will do.
            names.push("x".to_string());
        }
        Alphabet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for factor in syntax::tokenize(text)? {
            let generator = self
                .index_of(factor.name)
                .ok_or_else(|| Error::UnknownSymbol(factor.name.to_string()))?;
            let letter = Letter::new(generator, factor.exponent < 0);
            letters.extend(std::iter::repeat_n(letter, factor.exponent.unsigned_abs() as usize));
        }
        Ok(Word::from_letters(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        syntax::format_letters(word.letters().iter().map(|l| (self.name(l.generator), l.inverse)))
    }
}

/// A generator or its inverse.
///
/// The derived order compares the generator index first, then puts the
/// positive letter before the inverse one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn positive(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn negative(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word. Every constructor reduces, so two `Word`s denote
/// the same element of the free group exactly when they are equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.letters.iter().map(|l| format!("g{}", l.generator)).collect();
        let s = syntax::format_letters(
            self.letters.iter().zip(&names).map(|(l, n)| (n.as_str(), l.inverse)),
        );
        write!(f, "Word({s})")
    }
}

/// `word = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: Word,
    pub core: Word,
}

impl CyclicDecomposition {
    pub fn recombine(&self) -> Word {
        self.conjugator.concat(&self.core).concat(&self.conjugator.inverse())
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            if out.last().is_some_and(|&last| last.cancels(letter)) {
                out.pop();
            } else {
                out.push(letter);
            }
        }
        Word { letters: out }
    }

    pub fn letter(letter: Letter) -> Self {
        Word { letters: vec![letter] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Freely reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut cancel = 0;
        while cancel < self.len().min(other.len())
            && self.letters[self.len() - 1 - cancel].cancels(other.letters[cancel])
        {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &Word) -> Word {
        h.inverse().concat(self).concat(h)
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 || self.is_empty() {
            return Word::identity();
        }
        let CyclicDecomposition { conjugator, core } = self.cyclic_reduce();
        let core = if k < 0 { core.inverse() } else { core };
        let n = k.unsigned_abs() as usize;
        // A power of a cyclically reduced word is reduced as written.
        let mut letters = Vec::with_capacity(2 * conjugator.len() + n * core.len());
        letters.extend_from_slice(&conjugator.letters);
        for _ in 0..n {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conjugator.letters.iter().rev().map(|l| l.inverse()));
        Word { letters }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&first), Some(&last)) => self.len() == 1 || !first.cancels(last),
            _ => true,
        }
    }

    pub fn cyclic_reduce(&self) -> CyclicDecomposition {
        let n = self.len();
        let mut strip = 0;
        while 2 * strip + 1 < n && self.letters[strip].cancels(self.letters[n - 1 - strip]) {
            strip += 1;
        }
        CyclicDecomposition {
            conjugator: Word { letters: self.letters[..strip].to_vec() },
            core: Word { letters: self.letters[strip..n - strip].to_vec() },
        }
    }

    /// Whether the two words are conjugate in the free group: their
    /// cyclically reduced cores are rotations of each other.
    pub fn is_conjugate(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce().core;
        let b = other.cyclic_reduce().core;
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let doubled: Vec<Letter> = a.letters.iter().chain(a.letters.iter()).copied().collect();
        contains_subsequence(&doubled, &b.letters)
    }

    /// Translation length of the element acting on the Cayley tree.
    pub fn translation_length(&self) -> usize {
        self.cyclic_reduce().core.len()
    }

    /// Returns `k` with `self = s^k`, or `None` when `self ∉ ⟨s⟩`.
    pub fn cyclic_power_membership(&self, s: &Word) -> Result<Option<i64>> {
        if s.is_empty() {
            return Err(Error::TrivialGenerator);
        }
        if self.is_empty() {
            return Ok(Some(0));
        }
        let base = s.cyclic_reduce();
        let target = self.cyclic_reduce();
        if base.conjugator != target.conjugator || !target.core.len().is_multiple_of(base.core.len()) {
            return Ok(None);
        }
        let n = (target.core.len() / base.core.len()) as i64;
        for k in [n, -n] {
            let root = if k > 0 { base.core.clone() } else { base.core.inverse() };
            let matches = target
                .core
                .letters
                .chunks(root.len())
                .all(|chunk| chunk == root.letters.as_slice());
            if matches {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Shortlex: shorter words first, then letter by letter.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

/// Knuth-Morris-Pratt search for `needle` inside `haystack`.
fn contains_subsequence(haystack: &[Letter], needle: &[Letter]) -> bool {
    if needle.is_empty() {
        return true;
    }
    let mut fail = vec![0usize; needle.len()];
    let mut k = 0;
    for i in 1..needle.len() {
        while k > 0 && needle[i] != needle[k] {
            k = fail[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for &letter in haystack {
        while k > 0 && letter != needle[k] {
            k = fail[k - 1];
        }
        if letter == needle[k] {
            k += 1;
            if k == needle.len() {
                return true;
            }
        }
    }
    false
}

/// All freely reduced words of length at most `max_len` over `generators`
/// generators, in shortlex order.
pub fn reduced_words(generators: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..generators)
        .flat_map(|g| [Letter::positive(g), Letter::negative(g)])
        .collect();
    let mut all = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &letter in &alphabet {
                if w.letters.last().is_some_and(|&last| last.cancels(letter)) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(letter);
                next.push(Word { letters });
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
