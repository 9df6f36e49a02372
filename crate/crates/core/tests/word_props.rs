use std::cmp::Ordering;

use hnnkit::{Letter, Word};
use proptest::prelude::*;

const GENS: usize = 3;

fn letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..GENS, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    letters(max).prop_map(Word::from_letters)
}

fn nontrivial(max: usize) -> impl Strategy<Value = Word> {
    word(max).prop_filter("nontrivial", |w| !w.is_empty())
}

fn brute_force_power(w: &Word, s: &Word) -> Option<i64> {
    let n = w.len() as i64;
    (-n..=n).find(|&k| s.pow(k) == *w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_idempotent(raw in letters(16)) {
        let w = Word::from_letters(raw);
        prop_assert_eq!(Word::from_letters(w.letters().to_vec()), w.clone());
        for pair in w.letters().windows(2) {
            prop_assert!(!pair[0].cancels(pair[1]));
        }
    }

    #[test]
    fn word_times_inverse_is_identity(u in word(16)) {
        prop_assert!(u.concat(&u.inverse()).is_identity());
        prop_assert!(u.inverse().concat(&u).is_identity());
    }

    #[test]
    fn inverse_is_an_anti_involution(a in word(12), b in word(12)) {
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.concat(&b).inverse(), b.inverse().concat(&a.inverse()));
    }

    #[test]
    fn concat_is_associative(a in word(8), b in word(8), c in word(8)) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn conjugacy_is_an_equivalence(w in word(10), h in word(6), k in word(6), other in word(10)) {
        let wh = w.conjugate(&h);
        let whk = wh.conjugate(&k);
        prop_assert!(w.is_conjugate(&w));
        prop_assert!(w.is_conjugate(&wh));
        prop_assert!(wh.is_conjugate(&w));
        prop_assert!(w.is_conjugate(&whk));
        prop_assert_eq!(w.is_conjugate(&other), other.is_conjugate(&w));
        prop_assert_eq!(w.is_conjugate(&other), wh.is_conjugate(&other.conjugate(&k)));
    }

    #[test]
    fn conjugate_by_inverse_undoes(w in word(10), h in word(8)) {
        prop_assert_eq!(w.conjugate(&h).conjugate(&h.inverse()), w);
    }

    #[test]
    fn decomposition_recombines(w in word(16)) {
        let d = w.cyclic_reduce();
        prop_assert_eq!(d.recombine(), w.clone());
        prop_assert!(d.core.is_cyclically_reduced());
        prop_assert_eq!(d.core.is_empty(), w.is_empty());
        prop_assert_eq!(w.translation_length(), d.core.len());
    }

    #[test]
    fn translation_length_is_conjugation_invariant(w in word(12), h in word(8)) {
        prop_assert_eq!(w.conjugate(&h).translation_length(), w.translation_length());
    }

    #[test]
    fn translation_length_scales_with_powers(w in word(10), n in 1i64..=4) {
        prop_assert_eq!(w.pow(n).translation_length(), n as usize * w.translation_length());
        prop_assert_eq!(w.pow(-n).translation_length(), n as usize * w.translation_length());
    }

    #[test]
    fn powers_add(w in word(8), a in -4i64..=4, b in -4i64..=4) {
        prop_assert_eq!(w.pow(a).concat(&w.pow(b)), w.pow(a + b));
    }

    #[test]
    fn membership_recovers_exponent(s in nontrivial(8), k in -4i64..=4) {
        let w = s.pow(k);
        let found = w.cyclic_power_membership(&s).unwrap();
        // s may itself be a proper power, but the exponent of s is unique
        prop_assert_eq!(found, Some(k));
    }

    #[test]
    fn membership_matches_brute_force(s in nontrivial(6), k in -3i64..=3, noise in word(3), at_end in any::<bool>()) {
        let base = s.pow(k);
        let w = if at_end { base.concat(&noise) } else { noise.concat(&base) };
        prop_assert_eq!(w.cyclic_power_membership(&s).unwrap(), brute_force_power(&w, &s));
    }

    #[test]
    fn membership_matches_brute_force_on_random_pairs(s in nontrivial(4), w in word(8)) {
        prop_assert_eq!(w.cyclic_power_membership(&s).unwrap(), brute_force_power(&w, &s));
    }

    #[test]
    fn shortlex_is_a_total_order(a in word(6), b in word(6), c in word(6)) {
        prop_assert_eq!(a.shortlex_cmp(&b), b.shortlex_cmp(&a).reverse());
        prop_assert_eq!(a.shortlex_cmp(&b) == Ordering::Equal, a == b);
        if a.shortlex_cmp(&b) != Ordering::Greater && b.shortlex_cmp(&c) != Ordering::Greater {
            prop_assert_ne!(a.shortlex_cmp(&c), Ordering::Greater);
        }
        if a.len() < b.len() {
            prop_assert_eq!(a.shortlex_cmp(&b), Ordering::Less);
        }
    }
}

#[test]
fn membership_rejects_trivial_generator() {
    let x = Word::letter(Letter::positive(0));
    assert!(Word::identity().cyclic_power_membership(&Word::identity()).is_err());
    assert!(x.cyclic_power_membership(&Word::identity()).is_err());
}

#[test]
fn text_round_trip() {
    let a = hnnkit::Alphabet::new(["x", "y", "z"]).unwrap();
    for w in hnnkit::word::reduced_words(3, 3) {
        let text = a.format_word(&w);
        assert_eq!(a.parse_word(&text).unwrap(), w, "{text}");
    }
}
