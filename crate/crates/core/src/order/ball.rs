use std::hash::{Hash, Hasher};

use rustc_hash::{FxHashMap, FxHashSet, FxHasher};

use crate::error::{Error, Result};
use crate::hnn::{are_equal, coset_normalize, pinch_reduce, HnnWord, MultipleHnnPresentation};
use crate::word::{reduced_words, Letter, Word};

/// Default cap on equality tests performed while building a ball.
pub const DEFAULT_BALL_BUDGET: u64 = 50_000_000;

/// Distinct group elements represented by words of at most `radius`
/// letters, with the multiplication, inversion and conjugation facts that
/// stay inside the ball.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    index: Index,
    inverse: Vec<usize>,
    products: Vec<Option<u32>>,
    conjugates: Vec<Option<u32>>,
}

/// Ball members bucketed by normal form. Membership is always confirmed
/// with `are_equal`; the buckets only narrow down which members to test.
#[derive(Debug, Clone)]
struct Index {
    p: MultipleHnnPresentation,
    radius: usize,
    elements: Vec<HnnWord>,
    buckets: FxHashMap<HnnWord, Vec<usize>>,
    /// Hashes of the stable-letter sequences of the members' reduced
    /// forms. All reduced forms of one element share that sequence.
    signatures: FxHashSet<u64>,
    /// Every reduced spelling of length at most `radius`, mapped to the
    /// member it equals.
    spellings: FxHashMap<Vec<Letter>, usize>,
    budget: u64,
    spent: u64,
}

fn signature(reduced: &HnnWord) -> u64 {
    let mut h = FxHasher::default();
    for (e, _) in reduced.tail() {
        e.hash(&mut h);
    }
    h.write_usize(reduced.stable_count());
    h.finish()
}

impl Index {
    fn key(&self, w: &HnnWord) -> Option<HnnWord> {
        let reduced = pinch_reduce(&self.p, w).0;
        if !self.signatures.contains(&signature(&reduced)) {
            return None;
        }
        Some(coset_normalize(&self.p, reduced))
    }

    fn find(&mut self, w: &HnnWord) -> Result<Option<usize>> {
        if w.letter_len() <= 2 * self.radius + 1 {
            let symbols = Word::from_letters(w.symbols(self.p.base().len()));
            if symbols.len() <= self.radius {
                return Ok(self.spellings.get(symbols.letters()).copied());
            }
        }
        let Some(key) = self.key(w) else {
            return Ok(None);
        };
        let Some(bucket) = self.buckets.get(&key) else {
            return Ok(None);
        };
        for &i in bucket {
            if self.spent >= self.budget {
                return Err(Error::BudgetExhausted(self.spent));
            }
            self.spent += 1;
            if are_equal(&self.p, &self.elements[i], w) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Adds the element spelled by `spelling` unless an equal member exists.
    fn insert(&mut self, spelling: Word) -> Result<()> {
        let w = HnnWord::from_symbols(spelling.letters(), self.p.base().len());
        let reduced = pinch_reduce(&self.p, &w).0;
        self.signatures.insert(signature(&reduced));
        let key = coset_normalize(&self.p, reduced);
        let mut found = None;
        for &i in self.buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
            if self.spent >= self.budget {
                return Err(Error::BudgetExhausted(self.spent));
            }
            self.spent += 1;
            if are_equal(&self.p, &self.elements[i], &w) {
                found = Some(i);
                break;
            }
        }
        let i = match found {
            Some(i) => i,
            None => {
                self.buckets.entry(key).or_default().push(self.elements.len());
                self.elements.push(w);
                self.elements.len() - 1
            }
        };
        self.spellings.insert(spelling.letters().to_vec(), i);
        Ok(())
    }
}

pub fn enumerate_ball(p: &MultipleHnnPresentation, radius: usize) -> Result<Ball> {
    enumerate_ball_with_budget(p, radius, DEFAULT_BALL_BUDGET)
}

/// Like [`enumerate_ball`], failing with [`Error::BudgetExhausted`] after
/// `budget` equality tests.
pub fn enumerate_ball_with_budget(p: &MultipleHnnPresentation, radius: usize, budget: u64) -> Result<Ball> {
    let mut index = Index {
        p: p.clone(),
        radius,
        elements: Vec::new(),
        buckets: FxHashMap::default(),
        signatures: FxHashSet::default(),
        spellings: FxHashMap::default(),
        budget,
        spent: 0,
    };

    // Shortlex order, so the first spelling of each element is kept.
    for w in reduced_words(p.symbol_count(), radius) {
        index.insert(w)?;
    }

    let elements = index.elements.clone();
    let n = elements.len();
    let mut inverse = Vec::with_capacity(n);
    for w in &elements {
        let i = index.find(&w.inverse())?.expect("balls are closed under inversion");
        inverse.push(i);
    }

    let mut products = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            products.push(index.find(&a.concat(b))?.map(|k| k as u32));
        }
    }
    let product = |i: usize, j: usize| products[i * n + j].map(|k| k as usize);

    // h⁻¹gh = (h⁻¹g)h = h⁻¹(gh): when either partial product lies in the
    // ball, the product table already decides membership of the conjugate.
    let mut conjugates = Vec::with_capacity(n * n);
    for (gi, g) in elements.iter().enumerate() {
        for (hi, h) in elements.iter().enumerate() {
            let hinv = inverse[hi];
            let c = if let Some(k) = product(hinv, gi) {
                product(k, hi)
            } else if let Some(k) = product(gi, hi) {
                product(hinv, k)
            } else {
                index.find(&elements[hinv].concat(g).concat(h))?
            };
            conjugates.push(c.map(|k| k as u32));
        }
    }

    Ok(Ball { radius, index, inverse, products, conjugates })
}

impl Ball {
    pub fn presentation(&self) -> &MultipleHnnPresentation {
        &self.index.p
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.index.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.elements.is_empty()
    }

    pub fn elements(&self) -> &[HnnWord] {
        &self.index.elements
    }

    pub fn element(&self, i: usize) -> &HnnWord {
        &self.index.elements[i]
    }

    pub fn format_element(&self, i: usize) -> String {
        self.index.p.format_word(&self.index.elements[i])
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of `e_i · e_j`, when that product lies in the ball.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.products[i * self.len() + j].map(|k| k as usize)
    }

    /// Index of `e_h⁻¹ · e_i · e_h`, when that conjugate lies in the ball.
    pub fn conjugate(&self, i: usize, h: usize) -> Option<usize> {
        self.conjugates[i * self.len() + h].map(|k| k as usize)
    }

    /// Ball index of the element `w` represents, if it is in the ball.
    pub fn index_of(&self, w: &HnnWord) -> Option<usize> {
        let key = self.index.key(w)?;
        self.index
            .buckets
            .get(&key)?
            .iter()
            .copied()
            .find(|&i| are_equal(&self.index.p, &self.index.elements[i], w))
    }

    /// Equality tests spent while building the ball.
    pub fn equality_tests(&self) -> u64 {
        self.index.spent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const GAMMA: &str = "base: x y z\nstable: u v\nrel: u : x y^-1 -> y z^-1\nrel: v : x y^-1 -> z x^-1\n";

    #[test]
    fn free_group_ball_sizes() {
        let f3 = parse_presentation("base: x y z\nstable:\n").unwrap();
        assert_eq!(enumerate_ball(&f3, 0).unwrap().len(), 1);
        let b = enumerate_ball(&f3, 1).unwrap();
        assert_eq!(b.len(), 7);
        let names: Vec<String> = (0..b.len()).map(|i| b.format_element(i)).collect();
        assert_eq!(names, ["1", "x", "x^-1", "y", "y^-1", "z", "z^-1"]);
        assert_eq!(enumerate_ball(&f3, 2).unwrap().len(), 37);
    }

    #[test]
    fn gamma_small_balls() {
        let g = parse_presentation(GAMMA).unwrap();
        assert_eq!(enumerate_ball(&g, 0).unwrap().len(), 1);
        assert_eq!(enumerate_ball(&g, 1).unwrap().len(), 11);
    }

    #[test]
    fn tables_respect_identity_and_inverses() {
        let g = parse_presentation(GAMMA).unwrap();
        let b = enumerate_ball(&g, 2).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.product(i, b.inverse(i)), Some(0));
            assert_eq!(b.product(0, i), Some(i));
            assert_eq!(b.conjugate(i, 0), Some(i));
            assert_eq!(b.inverse(b.inverse(i)), i);
        }
        let xy = b.index_of(&g.parse_word("x y^-1").unwrap()).unwrap();
        let yz = b.index_of(&g.parse_word("y z^-1").unwrap()).unwrap();
        let u_inv = b.index_of(&g.parse_word("u^-1").unwrap()).unwrap();
        assert_eq!(b.conjugate(xy, u_inv), Some(yz));
    }

    #[test]
    fn budget_is_enforced() {
        let g = parse_presentation(GAMMA).unwrap();
        assert!(matches!(enumerate_ball_with_budget(&g, 2, 10), Err(Error::BudgetExhausted(10))));
    }
}
