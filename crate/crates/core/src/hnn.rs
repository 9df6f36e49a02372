//! Multiple HNN extensions of a free group with cyclic associated subgroups
//! and their word problem by Britton pinch reduction.
//!
//! A presentation adjoins stable letters `u_i` to the free group on the base
//! alphabet, subject to `u_i · s_i · u_i⁻¹ = t_i`. Elements are written as
//! alternating sequences `w_0 e_1 w_1 … e_m w_m` of base words and signed
//! stable letters.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::syntax;
use crate::word::{Alphabet, CyclicDecomposition, Letter, Word};

/// One defining relation `u · s · u⁻¹ = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub s: Word,
    pub t: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipleHnnPresentation {
    base: Alphabet,
    stable: Vec<String>,
    relations: Vec<Relation>,
    /// Cyclic decompositions of each `(s_i, t_i)`.
    decompositions: Vec<(CyclicDecomposition, CyclicDecomposition)>,
}

impl MultipleHnnPresentation {
    pub fn new(base: Alphabet, stable: Vec<String>, relations: Vec<Relation>) -> Result<Self> {
        if stable.len() != relations.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} stable letters but {} relations",
                stable.len(),
                relations.len()
            )));
        }
        let mut seen: HashSet<&str> = base.names().iter().map(String::as_str).collect();
        for name in &stable {
            if !syntax::is_identifier(name) {
                return Err(Error::InvalidPresentation(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name) {
                return Err(Error::InvalidPresentation(format!("duplicate symbol `{name}`")));
            }
        }
        for (name, rel) in stable.iter().zip(&relations) {
            if rel.s.is_empty() || rel.t.is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "relation for `{name}` identifies a trivial element"
                )));
            }
            if let Some(l) = rel.s.letters().iter().chain(rel.t.letters()).find(|l| l.generator >= base.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relation for `{name}` uses generator index {} outside the base",
                    l.generator
                )));
            }
        }
        let decompositions = relations.iter().map(|r| (r.s.cyclic_reduce(), r.t.cyclic_reduce())).collect();
        Ok(MultipleHnnPresentation { base, stable, relations, decompositions })
    }

    /// The free group on `base`, viewed as an extension with no stable letters.
    pub fn free(base: Alphabet) -> Self {
        MultipleHnnPresentation { base, stable: Vec::new(), relations: Vec::new(), decompositions: Vec::new() }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn stable_names(&self) -> &[String] {
        &self.stable
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, stable: usize) -> &Relation {
        &self.relations[stable]
    }

    /// Number of symbols in the combined alphabet: base generators first,
    /// then stable letters.
    pub fn symbol_count(&self) -> usize {
        self.base.len() + self.stable.len()
    }

    pub fn symbol_name(&self, symbol: usize) -> &str {
        if symbol < self.base.len() {
            self.base.name(symbol)
        } else {
            &self.stable[symbol - self.base.len()]
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<HnnWord> {
        let mut letters = Vec::new();
        for factor in syntax::tokenize(text)? {
            let symbol = self
                .base
                .index_of(factor.name)
                .or_else(|| self.stable.iter().position(|n| n == factor.name).map(|i| i + self.base.len()))
                .ok_or_else(|| Error::UnknownSymbol(factor.name.to_string()))?;
            let letter = Letter::new(symbol, factor.exponent < 0);
            letters.extend(std::iter::repeat_n(letter, factor.exponent.unsigned_abs() as usize));
        }
        Ok(HnnWord::from_symbols(&letters, self.base.len()))
    }

    pub fn format_word(&self, w: &HnnWord) -> String {
        let symbols = w.symbols(self.base.len());
        syntax::format_letters(symbols.iter().map(|l| (self.symbol_name(l.generator), l.inverse)))
    }
}

/// A stable letter `u_index` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableLetter {
    pub index: usize,
    pub inverse: bool,
}

impl StableLetter {
    pub fn new(index: usize, inverse: bool) -> Self {
        StableLetter { index, inverse }
    }

    pub fn inverse(self) -> Self {
        StableLetter::new(self.index, !self.inverse)
    }
}

/// `w_0 e_1 w_1 … e_m w_m`. Base words are always freely reduced; no other
/// normalization is implied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HnnWord {
    head: Word,
    tail: Vec<(StableLetter, Word)>,
}

impl HnnWord {
    pub fn identity() -> Self {
        HnnWord::default()
    }

    pub fn from_base(word: Word) -> Self {
        HnnWord { head: word, tail: Vec::new() }
    }

    pub fn from_stable(letter: StableLetter) -> Self {
        HnnWord { head: Word::identity(), tail: vec![(letter, Word::identity())] }
    }

    pub fn from_parts(head: Word, tail: Vec<(StableLetter, Word)>) -> Self {
        HnnWord { head, tail }
    }

    /// Builds a word from letters over the combined alphabet, where symbols
    /// `>= base_len` are stable letters.
    pub fn from_symbols(symbols: &[Letter], base_len: usize) -> Self {
        let mut head = Vec::new();
        let mut tail: Vec<(StableLetter, Vec<Letter>)> = Vec::new();
        for &l in symbols {
            if l.generator < base_len {
                match tail.last_mut() {
                    Some((_, w)) => w.push(l),
                    None => head.push(l),
                }
            } else {
                tail.push((StableLetter::new(l.generator - base_len, l.inverse), Vec::new()));
            }
        }
        HnnWord {
            head: Word::from_letters(head),
            tail: tail.into_iter().map(|(e, w)| (e, Word::from_letters(w))).collect(),
        }
    }

    /// Flattens to letters over the combined alphabet.
    pub fn symbols(&self, base_len: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.head.letters().to_vec();
        for (e, w) in &self.tail {
            out.push(Letter::new(base_len + e.index, e.inverse));
            out.extend_from_slice(w.letters());
        }
        out
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn tail(&self) -> &[(StableLetter, Word)] {
        &self.tail
    }

    /// The signed stable letters in order of occurrence.
    pub fn stable_letters(&self) -> Vec<StableLetter> {
        self.tail.iter().map(|&(e, _)| e).collect()
    }

    pub fn stable_count(&self) -> usize {
        self.tail.len()
    }

    /// Total number of letters, base and stable.
    pub fn letter_len(&self) -> usize {
        self.head.len() + self.tail.iter().map(|(_, w)| 1 + w.len()).sum::<usize>()
    }

    /// The base word, when no stable letters occur.
    pub fn as_base(&self) -> Option<&Word> {
        self.tail.is_empty().then_some(&self.head)
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty() && self.head.is_empty()
    }

    fn last_word_mut(&mut self) -> &mut Word {
        match self.tail.last_mut() {
            Some((_, w)) => w,
            None => &mut self.head,
        }
    }

    /// Syntactic product: stable letters are juxtaposed, base words at the
    /// junction are multiplied and freely reduced.
    pub fn concat(&self, other: &HnnWord) -> HnnWord {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn append(&mut self, other: &HnnWord) {
        let last = self.last_word_mut();
        *last = last.concat(&other.head);
        self.tail.extend(other.tail.iter().cloned());
    }

    pub fn inverse(&self) -> HnnWord {
        let mut words: Vec<&Word> = vec![&self.head];
        words.extend(self.tail.iter().map(|(_, w)| w));
        let head = words.last().unwrap().inverse();
        let tail = self
            .tail
            .iter()
            .enumerate()
            .rev()
            .map(|(j, (e, _))| (e.inverse(), words[j].inverse()))
            .collect();
        HnnWord { head, tail }
    }
}

/// Audit record of one pinch removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PinchReport {
    /// How many stable letters precede the pinch in the word being reduced.
    pub position: usize,
    /// Stable letter index `i`.
    pub letter: usize,
    /// `+1` for `u w u⁻¹` with `w ∈ ⟨s⟩`, `-1` for `u⁻¹ w u` with `w ∈ ⟨t⟩`.
    pub direction: i8,
    pub exponent: i64,
}

/// Removes pinches, leftmost first, until none remain.
///
/// Equivalent to repeatedly rescanning for the leftmost pinch: a pinch
/// can only be created where one was just removed, and the stack holds a
/// pinch-free prefix at all times.
pub fn pinch_reduce(p: &MultipleHnnPresentation, w: &HnnWord) -> (HnnWord, Vec<PinchReport>) {
    pinch_reduce_owned(p, w.clone())
}

/// [`pinch_reduce`] consuming its input.
pub fn pinch_reduce_owned(p: &MultipleHnnPresentation, w: HnnWord) -> (HnnWord, Vec<PinchReport>) {
    let mut out = HnnWord::from_base(w.head);
    let mut reports = Vec::new();
    for (e, next) in w.tail {
        if let Some(&(prev, ref inner)) = out.tail.last() {
            if prev.index == e.index && prev.inverse != e.inverse {
                let rel = p.relation(e.index);
                let (from, to, direction) = if prev.inverse {
                    (&rel.t, &rel.s, -1)
                } else {
                    (&rel.s, &rel.t, 1)
                };
                let k = inner
                    .cyclic_power_membership(from)
                    .expect("presentation relations are nontrivial");
                if let Some(k) = k {
                    reports.push(PinchReport {
                        position: out.tail.len() - 1,
                        letter: e.index,
                        direction,
                        exponent: k,
                    });
                    out.tail.pop();
                    let replacement = to.pow(k).concat(&next);
                    let last = out.last_word_mut();
                    *last = last.concat(&replacement);
                    continue;
                }
            }
        }
        out.tail.push((e, next));
    }
    (out, reports)
}

pub fn has_pinch(p: &MultipleHnnPresentation, w: &HnnWord) -> bool {
    w.tail.windows(2).any(|pair| {
        let (a, inner) = &pair[0];
        let (b, _) = &pair[1];
        if a.index != b.index || a.inverse == b.inverse {
            return false;
        }
        let rel = p.relation(a.index);
        let from = if a.inverse { &rel.t } else { &rel.s };
        matches!(inner.cyclic_power_membership(from), Ok(Some(_)))
    })
}

/// Britton's lemma: a pinch-free word with a stable letter is nontrivial.
pub fn is_trivial(p: &MultipleHnnPresentation, w: &HnnWord) -> bool {
    pinch_reduce(p, w).0.is_empty()
}

pub fn are_equal(p: &MultipleHnnPresentation, a: &HnnWord, b: &HnnWord) -> bool {
    pinch_reduce_owned(p, a.concat(&b.inverse())).0.is_empty()
}

/// Reduced form of `h⁻¹ · g · h`.
pub fn hnn_conjugate(p: &MultipleHnnPresentation, g: &HnnWord, h: &HnnWord) -> HnnWord {
    pinch_reduce(p, &h.inverse().concat(g).concat(h)).0
}

/// Shortlex-least element of the coset `w⟨c⟩`, with the exponent `k` such
/// that the representative is `w · c^k`.
pub fn coset_representative(w: &Word, c: &Word) -> (Word, i64) {
    coset_representative_with(w, c, &c.cyclic_reduce())
}

fn coset_representative_with(w: &Word, c: &Word, decomposition: &CyclicDecomposition) -> (Word, i64) {
    debug_assert!(!c.is_empty());
    if w.is_empty() {
        return (Word::identity(), 0);
    }
    let (a, r, wl) = (decomposition.conjugator.letters(), decomposition.core.letters(), w.letters());
    // |w c^k| >= |c^k| - |w| > |w| once |k| * |r| > 2|w|.
    let bound = (2 * w.len() / r.len()) as i64 + 1;

    // Letter `i` of c^k written out as a · r^k · a⁻¹, which is reduced.
    let letter = |k: i64, i: usize| -> Letter {
        let n = k.unsigned_abs() as usize * r.len();
        if i < a.len() {
            a[i]
        } else if i < a.len() + n {
            let j = (i - a.len()) % r.len();
            if k > 0 {
                r[j]
            } else {
                r[r.len() - 1 - j].inverse()
            }
        } else {
            a[2 * a.len() + n - 1 - i].inverse()
        }
    };
    let product_len = |k: i64| -> usize {
        if k == 0 {
            return wl.len();
        }
        let cl = 2 * a.len() + k.unsigned_abs() as usize * r.len();
        let mut cancel = 0;
        while cancel < wl.len().min(cl) && wl[wl.len() - 1 - cancel].cancels(letter(k, cancel)) {
            cancel += 1;
        }
        wl.len() + cl - 2 * cancel
    };

    let shortest = (-bound..=bound).map(product_len).min().unwrap();
    let mut best: Option<(Word, i64)> = None;
    for k in (-bound..=bound).filter(|&k| product_len(k) == shortest) {
        let candidate = if k == 0 { w.clone() } else { w.concat(&c.pow(k)) };
        if best.as_ref().is_none_or(|(b, _)| candidate < *b) {
            best = Some((candidate, k));
        }
    }
    best.unwrap()
}

/// Canonical form used as a lookup key: reduce pinches, then push each base
/// word before a stable letter to the shortlex-least representative of its
/// coset (`w⟨t_i⟩` before `u_i`, `w⟨s_i⟩` before `u_i⁻¹`), carrying the
/// remainder across the letter. Equal elements get identical keys by the
/// normal form theorem for HNN extensions.
pub fn normal_form(p: &MultipleHnnPresentation, w: &HnnWord) -> HnnWord {
    coset_normalize(p, pinch_reduce(p, w).0)
}

/// The coset step of [`normal_form`]; `reduced` must be pinch-free.
pub fn coset_normalize(p: &MultipleHnnPresentation, reduced: HnnWord) -> HnnWord {
    let mut out = reduced;
    let m = out.tail.len();
    for j in 0..m {
        let e = out.tail[j].0;
        let rel = p.relation(e.index);
        // t^n u = u s^n and s^n u⁻¹ = u⁻¹ t^n
        let (ds, dt) = &p.decompositions[e.index];
        let (absorb, emit, decomposition) = if e.inverse { (&rel.s, &rel.t, ds) } else { (&rel.t, &rel.s, dt) };
        let current = if j == 0 { &out.head } else { &out.tail[j - 1].1 };
        let (rep, k) = coset_representative_with(current, absorb, decomposition);
        if k == 0 {
            continue;
        }
        // current = rep · absorb^{-k}, and absorb^{-k} · e = e · emit^{-k}
        if j == 0 {
            out.head = rep;
        } else {
            out.tail[j - 1].1 = rep;
        }
        let after = &mut out.tail[j].1;
        *after = emit.pow(-k).concat(after);
    }
    out
}
