//! Text syntax shared by base words and HNN words.
//!
//! A word is a whitespace-separated list of factors, each `name` or
//! `name^k` with `k` a nonzero decimal integer. The empty word is `1`.

use crate::error::{Error, Result};

/// One parsed factor: a symbol raised to a nonzero power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor<'a> {
    pub name: &'a str,
    pub exponent: i64,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `text` into factors. The identity token `1` contributes nothing.
pub fn tokenize(text: &str) -> Result<Vec<Factor<'_>>> {
    let mut factors = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exponent) = match token.split_once('^') {
            None => (token, 1),
            Some((name, exp)) => {
                let k: i64 = exp
                    .parse()
                    .map_err(|_| Error::MalformedExponent(token.to_string()))?;
                if k == 0 {
                    return Err(Error::MalformedExponent(token.to_string()));
                }
                (name, k)
            }
        };
        if !is_identifier(name) {
            return Err(Error::MalformedToken(token.to_string()));
        }
        factors.push(Factor { name, exponent });
    }
    Ok(factors)
}

/// Renders a letter sequence, collapsing runs of one symbol into powers.
/// `letters` yields `(symbol name, inverse?)` pairs.
pub fn format_letters<'a, I>(letters: I) -> String
where
    I: IntoIterator<Item = (&'a str, bool)>,
{
    let mut runs: Vec<(&str, i64)> = Vec::new();
    for (name, inverse) in letters {
        let step = if inverse { -1 } else { 1 };
        match runs.last_mut() {
            Some((last, k)) if *last == name && (*k > 0) == (step > 0) => *k += step,
            _ => runs.push((name, step)),
        }
    }
    if runs.is_empty() {
        return "1".to_string();
    }
    runs.iter()
        .map(|&(name, k)| {
            if k == 1 {
                name.to_string()
            } else {
                format!("{name}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
