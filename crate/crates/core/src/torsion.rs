//! Generalized torsion certificates: a nontrivial `g` together with
//! conjugators `h_1, …, h_n` such that `g^{h_1} ⋯ g^{h_n} = 1`, where
//! `g^h = h⁻¹ g h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hnn::{hnn_conjugate, is_trivial, pinch_reduce, HnnWord, MultipleHnnPresentation};
use crate::word::reduced_words;

/// Default cap on product evaluations for [`search_certificate`].
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCertificate {
    g: HnnWord,
    conjugators: Vec<HnnWord>,
}

/// `{ "g": "<word>", "conjugators": ["<word>", ...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub g: String,
    pub conjugators: Vec<String>,
}

impl TorsionCertificate {
    pub fn new(g: HnnWord, conjugators: Vec<HnnWord>) -> Result<Self> {
        if conjugators.is_empty() {
            return Err(Error::InvalidCertificate("at least one conjugator is required".into()));
        }
        Ok(TorsionCertificate { g, conjugators })
    }

    pub fn g(&self) -> &HnnWord {
        &self.g
    }

    pub fn conjugators(&self) -> &[HnnWord] {
        &self.conjugators
    }

    /// The reduced product `g^{h_1} ⋯ g^{h_n}`.
    pub fn product(&self, p: &MultipleHnnPresentation) -> HnnWord {
        let mut acc = HnnWord::identity();
        for h in &self.conjugators {
            acc = pinch_reduce(p, &acc.concat(&hnn_conjugate(p, &self.g, h))).0;
        }
        acc
    }

    pub fn to_json(&self, p: &MultipleHnnPresentation) -> CertificateJson {
        CertificateJson {
            g: p.format_word(&self.g),
            conjugators: self.conjugators.iter().map(|h| p.format_word(h)).collect(),
        }
    }

    pub fn from_json(p: &MultipleHnnPresentation, json: &CertificateJson) -> Result<Self> {
        let g = p.parse_word(&json.g)?;
        let conjugators = json
            .conjugators
            .iter()
            .map(|h| p.parse_word(h))
            .collect::<Result<Vec<_>>>()?;
        TorsionCertificate::new(g, conjugators)
    }
}

pub fn verify_certificate(p: &MultipleHnnPresentation, c: &TorsionCertificate) -> bool {
    !is_trivial(p, &c.g) && c.product(p).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_factors: usize,
    /// Conjugators range over all reduced words of at most this many letters.
    pub max_conj_len: usize,
    /// Cap on product evaluations before giving up with
    /// [`Error::BudgetExhausted`].
    pub budget: u64,
}

impl SearchBounds {
    pub fn new(max_factors: usize, max_conj_len: usize) -> Self {
        SearchBounds { max_factors, max_conj_len, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

struct Search<'a> {
    p: &'a MultipleHnnPresentation,
    conjugates: Vec<HnnWord>,
    budget: u64,
}

impl Search<'_> {
    /// Extends `prefix` by `depth` more factors, pushing the chosen
    /// conjugator indices onto `chosen`.
    fn extend(&self, prefix: &HnnWord, depth: usize, chosen: &mut Vec<usize>, spent: &mut u64) -> Result<bool> {
        for (i, conj) in self.conjugates.iter().enumerate() {
            if *spent >= self.budget {
                return Err(Error::BudgetExhausted(*spent));
            }
            *spent += 1;
            let next = pinch_reduce(self.p, &prefix.concat(conj)).0;
            chosen.push(i);
            let found = if depth == 1 {
                next.is_empty()
            } else {
                self.extend(&next, depth - 1, chosen, spent)?
            };
            if found {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Depth-first search over `g^{h_1} ⋯ g^{h_k}` for `k = 1, …, max_factors`,
/// each `h_j` ranging over reduced words of at most `max_conj_len` letters
/// in shortlex order. Returns the first certificate in that order.
pub fn search_certificate(
    p: &MultipleHnnPresentation,
    g: &HnnWord,
    bounds: SearchBounds,
) -> Result<Option<TorsionCertificate>> {
    if bounds.max_factors == 0 || is_trivial(p, g) {
        return Ok(None);
    }
    let base_len = p.base().len();
    let conjugators: Vec<HnnWord> = reduced_words(p.symbol_count(), bounds.max_conj_len)
        .iter()
        .map(|w| HnnWord::from_symbols(w.letters(), base_len))
        .collect();
    let conjugates = conjugators.iter().map(|h| hnn_conjugate(p, g, h)).collect();
    let search = Search { p, conjugates, budget: bounds.budget };
    let mut spent = 0;
    for k in 1..=bounds.max_factors {
        let mut chosen = Vec::with_capacity(k);
        if search.extend(&HnnWord::identity(), k, &mut chosen, &mut spent)? {
            let hs = chosen.iter().map(|&i| conjugators[i].clone()).collect();
            return TorsionCertificate::new(g.clone(), hs).map(Some);
        }
    }
    Ok(None)
}
