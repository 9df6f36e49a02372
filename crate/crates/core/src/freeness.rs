//! Hypothesis checks on the associated elements of a multiple HNN extension:
//! nontriviality, equal translation lengths on the Cayley tree of the base,
//! and pairwise non-conjugacy of the distinct `s_i^{±1}`, `t_i^{±1}`.
//!
//! The report only covers these conditions. It does not build a tree or
//! an action.

use serde::Serialize;

use crate::hnn::MultipleHnnPresentation;
use crate::word::Word;

pub const SCOPE_NOTE: &str = "checks nontriviality, equal translation lengths and pairwise \
non-conjugacy of the associated elements and their inverses; no tree action is constructed";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub hyperbolic_ok: Vec<bool>,
    pub length_pairs: Vec<(usize, usize)>,
    /// Distinct words among the `s_i^{±1}`, `t_i^{±1}`, grouped by conjugacy in
    /// the base free group. Blocks and their members keep first-seen order.
    pub conjugacy_partition: Vec<Vec<Word>>,
    pub distinctness_ok: bool,
    pub lengths_ok: bool,
    pub verdict: bool,
    pub failures: Vec<String>,
}

/// JSON shape of a [`FreenessReport`].
#[derive(Debug, Clone, Serialize)]
pub struct FreenessJson {
    pub verdict: bool,
    pub lengths: Vec<[usize; 2]>,
    pub classes: Vec<Vec<String>>,
    pub failures: Vec<String>,
    pub hyperbolic: Vec<bool>,
    pub lengths_ok: bool,
    pub distinctness_ok: bool,
    pub scope: &'static str,
}

pub fn check_freeness_hypotheses(p: &MultipleHnnPresentation) -> FreenessReport {
    let names = p.stable_names();
    let base = p.base();
    let mut failures = Vec::new();

    let hyperbolic_ok: Vec<bool> = p
        .relations()
        .iter()
        .map(|r| !r.s.is_empty() && !r.t.is_empty())
        .collect();
    for (name, ok) in names.iter().zip(&hyperbolic_ok) {
        if !ok {
            failures.push(format!("relation for {name} has a trivial side"));
        }
    }

    let length_pairs: Vec<(usize, usize)> = p
        .relations()
        .iter()
        .map(|r| (r.s.translation_length(), r.t.translation_length()))
        .collect();
    for (name, &(ls, lt)) in names.iter().zip(&length_pairs) {
        if ls != lt {
            failures.push(format!("relation for {name}: translation lengths differ ({ls} vs {lt})"));
        }
    }
    let lengths_ok = length_pairs.iter().all(|(a, b)| a == b);

    let mut distinct: Vec<Word> = Vec::new();
    for r in p.relations() {
        for w in [r.s.clone(), r.s.inverse(), r.t.clone(), r.t.inverse()] {
            if !distinct.contains(&w) {
                distinct.push(w);
            }
        }
    }
    let mut conjugacy_partition: Vec<Vec<Word>> = Vec::new();
    for w in distinct {
        match conjugacy_partition.iter_mut().find(|block| block[0].is_conjugate(&w)) {
            Some(block) => block.push(w),
            None => conjugacy_partition.push(vec![w]),
        }
    }
    for block in conjugacy_partition.iter().filter(|b| b.len() > 1) {
        let words: Vec<String> = block.iter().map(|w| base.format_word(w)).collect();
        failures.push(format!("conjugate associated elements: {}", words.join(", ")));
    }
    let distinctness_ok = conjugacy_partition.iter().all(|b| b.len() == 1);

    let verdict = hyperbolic_ok.iter().all(|&b| b) && lengths_ok && distinctness_ok;
    FreenessReport {
        hyperbolic_ok,
        length_pairs,
        conjugacy_partition,
        distinctness_ok,
        lengths_ok,
        verdict,
        failures,
    }
}

impl FreenessReport {
    pub fn to_json(&self, p: &MultipleHnnPresentation) -> FreenessJson {
        FreenessJson {
            verdict: self.verdict,
            lengths: self.length_pairs.iter().map(|&(a, b)| [a, b]).collect(),
            classes: self
                .conjugacy_partition
                .iter()
                .map(|block| block.iter().map(|w| p.base().format_word(w)).collect())
                .collect(),
            failures: self.failures.clone(),
            hyperbolic: self.hyperbolic_ok.clone(),
            lengths_ok: self.lengths_ok,
            distinctness_ok: self.distinctness_ok,
            scope: SCOPE_NOTE,
        }
    }
}
