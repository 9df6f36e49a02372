use hnnkit::freeness::check_freeness_hypotheses;
use hnnkit::torsion::{search_certificate, verify_certificate, SearchBounds, TorsionCertificate};
use hnnkit::{parse_presentation, Alphabet, HnnWord, Letter, MultipleHnnPresentation, Relation, Word};
use proptest::prelude::*;

const GAMMA: &str = include_str!("../examples/gamma.txt");

fn base_word(min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..3usize, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), min..=max)
        .prop_map(Word::from_letters)
}

fn relations(max_len: usize) -> impl Strategy<Value = Vec<Relation>> {
    let rel = (base_word(1, max_len), base_word(1, max_len))
        .prop_filter("nontrivial sides", |(s, t)| !s.is_empty() && !t.is_empty())
        .prop_map(|(s, t)| Relation { s, t });
    prop::collection::vec(rel, 1..=3)
}

fn xyz() -> Alphabet {
    Alphabet::new(["x", "y", "z"]).unwrap()
}

fn build(relations: Vec<Relation>) -> MultipleHnnPresentation {
    let stable = (0..relations.len()).map(|i| format!("u{i}")).collect();
    MultipleHnnPresentation::new(xyz(), stable, relations).unwrap()
}

/// Conjugacy in a free group by trying every rotation of the cyclically
/// reduced words.
fn conjugate_oracle(a: &Word, b: &Word) -> bool {
    fn core(w: &Word) -> Vec<Letter> {
        let mut l = w.letters().to_vec();
        while l.len() >= 2 && l[0].cancels(l[l.len() - 1]) {
            l.remove(0);
            l.pop();
        }
        l
    }
    let (a, b) = (core(a), core(b));
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter())))
}

fn verdict_oracle(p: &MultipleHnnPresentation) -> bool {
    let mut words: Vec<Word> = Vec::new();
    for r in p.relations() {
        if r.s.is_empty() || r.t.is_empty() || r.s.translation_length() != r.t.translation_length() {
            return false;
        }
        for w in [r.s.clone(), r.s.inverse(), r.t.clone(), r.t.inverse()] {
            if !words.contains(&w) {
                words.push(w);
            }
        }
    }
    words
        .iter()
        .enumerate()
        .all(|(i, a)| words[i + 1..].iter().all(|b| !conjugate_oracle(a, b)))
}

/// A spelling of `w` with a cancelling pair `g g^-1` inserted at `at`.
fn unreduced_text(w: &Word, at: usize, g: usize, inv: bool) -> String {
    let a = xyz();
    let at = at % (w.len() + 1);
    let piece = Word::from_letters([Letter::new(g, inv)]);
    let mut parts = Vec::new();
    if at > 0 {
        parts.push(a.format_word(&Word::from_letters(w.letters()[..at].iter().copied())));
    }
    parts.push(a.format_word(&piece));
    parts.push(a.format_word(&piece.inverse()));
    if at < w.len() {
        parts.push(a.format_word(&Word::from_letters(w.letters()[at..].iter().copied())));
    }
    parts.join(" ")
}

fn gamma() -> MultipleHnnPresentation {
    parse_presentation(GAMMA).unwrap()
}

fn symbols(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..5usize, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max)
}

fn relator(p: &MultipleHnnPresentation, i: usize, k: i64) -> Vec<Letter> {
    let u = Letter::positive(3 + i);
    let mut out = vec![u];
    out.extend_from_slice(p.relation(i).s.pow(k).letters());
    out.push(u.inverse());
    out.extend_from_slice(p.relation(i).t.pow(-k).letters());
    out
}

fn with_relator(p: &MultipleHnnPresentation, w: &HnnWord, i: usize, k: i64, at: usize) -> HnnWord {
    let mut letters = w.symbols(3);
    let at = at % (letters.len() + 1);
    letters.splice(at..at, relator(p, i, k));
    HnnWord::from_symbols(&letters, 3)
}

fn certificate(p: &MultipleHnnPresentation, g: &str, hs: &[&str]) -> TorsionCertificate {
    let hs = hs.iter().map(|h| p.parse_word(h).unwrap()).collect();
    TorsionCertificate::new(p.parse_word(g).unwrap(), hs).unwrap()
}

/// Valid certificates derived from the known one in Γ by conjugating
/// everything by `w`, rotating the factor list and right-multiplying every
/// conjugator by `k`.
fn derived_certificate(p: &MultipleHnnPresentation, w: &[Letter], rot: usize, k: &[Letter]) -> TorsionCertificate {
    let base = certificate(p, "x y^-1", &["1", "u^-1", "v^-1"]);
    let w = HnnWord::from_symbols(w, 3);
    let k = HnnWord::from_symbols(k, 3);
    let g = w.inverse().concat(base.g()).concat(&w);
    let mut hs: Vec<HnnWord> = base
        .conjugators()
        .iter()
        .map(|h| w.inverse().concat(h).concat(&w).concat(&k))
        .collect();
    hs.rotate_left(rot % 3);
    TorsionCertificate::new(g, hs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdict_matches_oracle(rels in relations(3)) {
        let p = build(rels);
        let report = check_freeness_hypotheses(&p);
        prop_assert_eq!(report.verdict, verdict_oracle(&p));
        prop_assert_eq!(report.verdict, report.lengths_ok && report.distinctness_ok && report.hyperbolic_ok.iter().all(|&b| b));
        prop_assert_eq!(report.verdict, report.failures.is_empty());
        for block in &report.conjugacy_partition {
            for w in block {
                prop_assert!(conjugate_oracle(w, &block[0]));
            }
        }
        for (i, a) in report.conjugacy_partition.iter().enumerate() {
            for b in &report.conjugacy_partition[i + 1..] {
                prop_assert!(!conjugate_oracle(&a[0], &b[0]));
            }
        }
    }

    #[test]
    fn verdict_ignores_unreduced_spellings(
        rels in relations(3),
        which in any::<usize>(),
        side_t in any::<bool>(),
        at in any::<usize>(),
        g in 0usize..3,
        inv in any::<bool>(),
    ) {
        let a = xyz();
        let which = which % rels.len();
        let mut text = String::from("base: x y z\nstable:");
        for i in 0..rels.len() {
            text.push_str(&format!(" u{i}"));
        }
        text.push('\n');
        for (i, r) in rels.iter().enumerate() {
            let (mut s, mut t) = (a.format_word(&r.s), a.format_word(&r.t));
            if i == which {
                if side_t {
                    t = unreduced_text(&r.t, at, g, inv);
                } else {
                    s = unreduced_text(&r.s, at, g, inv);
                }
            }
            text.push_str(&format!("rel: u{i} : {s} -> {t}\n"));
        }
        let spelled = parse_presentation(&text).unwrap();
        let p = build(rels);
        prop_assert_eq!(&spelled, &p);
        prop_assert_eq!(check_freeness_hypotheses(&spelled), check_freeness_hypotheses(&p));
    }

    #[test]
    fn verdict_survives_swapping_sides(rels in relations(3), which in any::<usize>()) {
        let mut swapped = rels.clone();
        let r = &mut swapped[which % rels.len()];
        std::mem::swap(&mut r.s, &mut r.t);
        let before = check_freeness_hypotheses(&build(rels)).verdict;
        prop_assert_eq!(check_freeness_hypotheses(&build(swapped)).verdict, before);
    }

    #[test]
    fn certificate_verdict_survives_relator_insertion(
        g in symbols(4),
        hs in prop::collection::vec(symbols(2), 1..=3),
        known in any::<bool>(),
        into in any::<usize>(),
        i in 0usize..2,
        k in -2i64..=2,
        at in any::<usize>(),
    ) {
        let p = gamma();
        let cert = if known {
            certificate(&p, "x y^-1", &["1", "u^-1", "v^-1"])
        } else {
            let hs = hs.iter().map(|h| HnnWord::from_symbols(h, 3)).collect();
            TorsionCertificate::new(HnnWord::from_symbols(&g, 3), hs).unwrap()
        };
        let mut g = cert.g().clone();
        let mut hs = cert.conjugators().to_vec();
        let into = into % (hs.len() + 1);
        if into == 0 {
            g = with_relator(&p, &g, i, k, at);
        } else {
            hs[into - 1] = with_relator(&p, &hs[into - 1], i, k, at);
        }
        let modified = TorsionCertificate::new(g, hs).unwrap();
        prop_assert_eq!(verify_certificate(&p, &modified), verify_certificate(&p, &cert));
    }

    #[test]
    fn derived_certificates_verify(w in symbols(3), rot in 0usize..3, k in symbols(2)) {
        let p = gamma();
        let cert = derived_certificate(&p, &w, rot, &k);
        prop_assert!(verify_certificate(&p, &cert));
    }

    #[test]
    fn inverted_reversed_certificate_verifies(w in symbols(3), rot in 0usize..3, k in symbols(2)) {
        let p = gamma();
        let cert = derived_certificate(&p, &w, rot, &k);
        let mut hs = cert.conjugators().to_vec();
        hs.reverse();
        let inverted = TorsionCertificate::new(cert.g().inverse(), hs).unwrap();
        prop_assert!(verify_certificate(&p, &inverted));
    }

    #[test]
    fn free_groups_have_no_certificates(g in symbols(4), hs in prop::collection::vec(symbols(3), 1..=4)) {
        let p = MultipleHnnPresentation::free(xyz());
        let keep = |l: &Vec<Letter>| l.iter().filter(|l| l.generator < 3).copied().collect::<Vec<_>>();
        let hs = hs.iter().map(|h| HnnWord::from_symbols(&keep(h), 3)).collect();
        let cert = TorsionCertificate::new(HnnWord::from_symbols(&keep(&g), 3), hs).unwrap();
        prop_assert!(!verify_certificate(&p, &cert));
    }
}

#[test]
fn search_result_is_the_first_in_order() {
    let p = gamma();
    let g = p.parse_word("x y^-1").unwrap();
    let found = search_certificate(&p, &g, SearchBounds::new(3, 1)).unwrap().unwrap();
    let again = search_certificate(&p, &g, SearchBounds::new(3, 1)).unwrap().unwrap();
    assert_eq!(found, again);
    let words: Vec<String> = found.conjugators().iter().map(|h| p.format_word(h)).collect();
    // shortlex order on {1, x, x^-1, ..., v, v^-1}; the first hit starts with 1
    assert_eq!(words[0], "1");
    assert!(verify_certificate(&p, &found));
}
