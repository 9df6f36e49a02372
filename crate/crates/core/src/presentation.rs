//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! base: x y z
//! stable: u v
//! rel: u : x y^-1 -> y z^-1
//! rel: v : x y^-1 -> z x^-1
//! ```
//!
//! `rel: u : s -> t` means `u · s · u⁻¹ = t`. One `rel:` line per stable
//! letter, in the order the stable letters are declared.

use crate::error::{Error, Result};
use crate::hnn::{MultipleHnnPresentation, Relation};
use crate::word::Alphabet;

fn syntax_error(line: usize, message: impl Into<String>) -> Error {
    Error::PresentationSyntax { line, message: message.into() }
}

pub fn parse_presentation(text: &str) -> Result<MultipleHnnPresentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (n, line) = lines.next().ok_or_else(|| syntax_error(0, "missing `base:` line"))?;
    let base_names = line
        .strip_prefix("base:")
        .ok_or_else(|| syntax_error(n, "expected `base:`"))?;
    let base = Alphabet::new(base_names.split_whitespace())
        .map_err(|e| syntax_error(n, e.to_string()))?;

    let (n, line) = lines.next().ok_or_else(|| syntax_error(n, "missing `stable:` line"))?;
    let stable: Vec<String> = line
        .strip_prefix("stable:")
        .ok_or_else(|| syntax_error(n, "expected `stable:`"))?
        .split_whitespace()
        .map(str::to_string)
        .collect();

    let mut relations = Vec::new();
    for (n, line) in lines {
        let body = line
            .strip_prefix("rel:")
            .ok_or_else(|| syntax_error(n, "expected `rel:`"))?;
        let (letter, sides) = body
            .split_once(':')
            .ok_or_else(|| syntax_error(n, "expected `rel: <stable> : <s> -> <t>`"))?;
        let letter = letter.trim();
        let expected = stable
            .get(relations.len())
            .ok_or_else(|| syntax_error(n, format!("extra relation for `{letter}`")))?;
        if letter != expected {
            return Err(syntax_error(
                n,
                format!("relation for `{letter}` where `{expected}` was expected"),
            ));
        }
        let (s, t) = sides
            .split_once("->")
            .ok_or_else(|| syntax_error(n, "expected `->` between the two sides"))?;
        let s = base.parse_word(s).map_err(|e| syntax_error(n, e.to_string()))?;
        let t = base.parse_word(t).map_err(|e| syntax_error(n, e.to_string()))?;
        if s.is_empty() || t.is_empty() {
            return Err(syntax_error(n, format!("relation for `{letter}` has a trivial side")));
        }
        relations.push(Relation { s, t });
    }
    if relations.len() < stable.len() {
        return Err(Error::InvalidPresentation(format!(
            "missing relation for `{}`",
            stable[relations.len()]
        )));
    }
    MultipleHnnPresentation::new(base, stable, relations)
}

pub fn format_presentation(p: &MultipleHnnPresentation) -> String {
    let mut out = format!("base: {}\nstable: {}\n", p.base().names().join(" "), p.stable_names().join(" "));
    for (name, rel) in p.stable_names().iter().zip(p.relations()) {
        out.push_str(&format!(
            "rel: {name} : {} -> {}\n",
            p.base().format_word(&rel.s),
            p.base().format_word(&rel.t)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA: &str = "# the two-relation example\nbase: x y z\nstable: u v\n\nrel: u : x y^-1 -> y z^-1\nrel: v : x y^-1 -> z x^-1  # trailing\n";

    #[test]
    fn parses_gamma() {
        let p = parse_presentation(GAMMA).unwrap();
        assert_eq!(p.base().names(), ["x", "y", "z"]);
        assert_eq!(p.stable_names(), ["u", "v"]);
        assert_eq!(p.relation(1).t, p.base().parse_word("z x^-1").unwrap());
        assert_eq!(parse_presentation(&format_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("base: x y z\nstable:\n").unwrap();
        assert!(p.stable_names().is_empty());
    }

    #[test]
    fn rejects_invalid_files() {
        let bad = [
            "",
            "stable: u\nbase: x\n",
            "base: x x\nstable:\n",
            "base: x y\nstable: u\n",
            "base: x y\nstable: u\nrel: u : x -> y\nrel: u : x -> y\n",
            "base: x y\nstable: u v\nrel: v : x -> y\nrel: u : x -> y\n",
            "base: x y\nstable: u\nrel: u : x x^-1 -> y\n",
            "base: x y\nstable: u\nrel: u : x -> 1\n",
            "base: x y\nstable: x\nrel: x : x -> y\n",
            "base: x y\nstable: u u\nrel: u : x -> y\nrel: u : x -> y\n",
            "base: x y\nstable: u\nrel: u : x y\n",
            "base: x y\nstable: u\nrel: u : w -> y\n",
            "base: x y\nstable: u\nrel: u : x^0 -> y\n",
            "base: x y\nstable: u\nrelation u : x -> y\n",
        ];
        for text in bad {
            assert!(parse_presentation(text).is_err(), "accepted {text:?}");
        }
    }
}
