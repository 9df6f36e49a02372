//! Command-line front end.
//!
//! Exit codes: 0 when the predicate holds, a witness is found or the report
//! verdict is true; 1 when it fails; 2 on parse or usage errors; 3 when a
//! work budget runs out. `order` exits 0 for both verdicts.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::freeness::check_freeness_hypotheses;
use crate::hnn::{pinch_reduce, are_equal, MultipleHnnPresentation};
use crate::order::{
    check_cone, enumerate_ball_with_budget, replay_refutation, search_cone, ConeVerdict, Mode, VerdictJson,
    DEFAULT_BALL_BUDGET,
};
use crate::presentation::parse_presentation;
use crate::torsion::{search_certificate, verify_certificate, CertificateJson, SearchBounds, TorsionCertificate, DEFAULT_BUDGET};
use crate::word::Alphabet;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "hnnkit", version, about = "Free groups, multiple HNN extensions, generalized torsion and order search")]
pub struct CliConfig {
    /// Presentation file (`base:`, `stable:`, `rel:` lines).
    #[arg(short = 'p', long = "presentation", global = true)]
    pub presentation: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    pub output: Output,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Freely reduced form of a word in the base free group.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Translation length on the Cayley tree of the base free group.
    Tl {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Conjugacy in the base free group.
    Conj {
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Whether a word is trivial in the presented group.
    Triv {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Whether two words are equal in the presented group.
    Eq {
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Check the hypotheses on the associated cyclic subgroups.
    CheckFreeness,
    /// Verify a generalized torsion certificate (inline JSON or a file path).
    VerifyGt {
        #[arg(long)]
        cert: String,
    },
    /// Bounded search for a generalized torsion certificate.
    SearchGt {
        #[arg(short = 'g', long = "g", allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        max_factors: usize,
        #[arg(long)]
        max_conj_len: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Positive-cone search on a ball of the presented group.
    Order {
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
        budget: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn usage(message: impl Into<String>) -> Self {
        CliOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }
}

struct Reply {
    code: i32,
    json: Value,
    plain: String,
}

pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let text = e.render().to_string();
            return if code == EXIT_HOLDS {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome::usage(text)
            };
        }
    };
    match dispatch(&config) {
        Ok(reply) => {
            let stdout = match config.output {
                Output::Json => serde_json::to_string_pretty(&reply.json).expect("JSON values serialize"),
                Output::Plain => reply.plain,
            };
            CliOutcome { code: reply.code, stdout: stdout + "\n", stderr: String::new() }
        }
        Err(Error::BudgetExhausted(spent)) => {
            let json = json!({ "error": "budget exhausted", "spent": spent });
            let stdout = match config.output {
                Output::Json => serde_json::to_string_pretty(&json).expect("JSON values serialize"),
                Output::Plain => format!("budget exhausted after {spent} units of work"),
            };
            CliOutcome { code: EXIT_BUDGET, stdout: stdout + "\n", stderr: String::new() }
        }
        Err(e) => CliOutcome::usage(format!("error: {e}\n")),
    }
}

fn load(path: Option<&Path>) -> Result<MultipleHnnPresentation, Error> {
    let path = path.ok_or_else(|| Error::InvalidPresentation("this subcommand needs -p <file>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidPresentation(format!("cannot read {}: {e}", path.display())))?;
    parse_presentation(&text)
}

/// Base alphabet of the presentation if given, otherwise inferred from the
/// words themselves.
fn base_alphabet(path: Option<&Path>, words: &[&str]) -> Result<Alphabet, Error> {
    match path {
        Some(_) => Ok(load(path)?.base().clone()),
        None => Alphabet::infer(words),
    }
}

fn holds(b: bool) -> i32 {
    if b {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn dispatch(config: &CliConfig) -> Result<Reply, Error> {
    let path = config.presentation.as_deref();
    match &config.command {
        Command::Reduce { word } => {
            let a = base_alphabet(path, &[word])?;
            let w = a.format_word(&a.parse_word(word)?);
            Ok(Reply { code: EXIT_HOLDS, json: json!({ "word": w }), plain: w })
        }
        Command::Tl { word } => {
            let a = base_alphabet(path, &[word])?;
            let w = a.parse_word(word)?;
            let d = w.cyclic_reduce();
            let tl = d.core.len();
            Ok(Reply {
                code: EXIT_HOLDS,
                json: json!({
                    "word": a.format_word(&w),
                    "translation_length": tl,
                    "core": a.format_word(&d.core),
                    "conjugator": a.format_word(&d.conjugator),
                }),
                plain: tl.to_string(),
            })
        }
        Command::Conj { w1, w2 } => {
            let a = base_alphabet(path, &[w1, w2])?;
            let (x, y) = (a.parse_word(w1)?, a.parse_word(w2)?);
            let c = x.is_conjugate(&y);
            Ok(Reply {
                code: holds(c),
                json: json!({
                    "conjugate": c,
                    "cores": [a.format_word(&x.cyclic_reduce().core), a.format_word(&y.cyclic_reduce().core)],
                }),
                plain: c.to_string(),
            })
        }
        Command::Triv { word } => {
            let p = load(path)?;
            let w = p.parse_word(word)?;
            let (reduced, reports) = pinch_reduce(&p, &w);
            let trivial = reduced.is_empty();
            Ok(Reply {
                code: holds(trivial),
                json: json!({
                    "trivial": trivial,
                    "reduced": p.format_word(&reduced),
                    "pinches": reports.len(),
                }),
                plain: trivial.to_string(),
            })
        }
        Command::Eq { w1, w2 } => {
            let p = load(path)?;
            let (a, b) = (p.parse_word(w1)?, p.parse_word(w2)?);
            let equal = are_equal(&p, &a, &b);
            Ok(Reply { code: holds(equal), json: json!({ "equal": equal }), plain: equal.to_string() })
        }
        Command::CheckFreeness => {
            let p = load(path)?;
            let report = check_freeness_hypotheses(&p);
            let body = report.to_json(&p);
            let plain = if report.verdict {
                "verdict: true".to_string()
            } else {
                format!("verdict: false ({})", report.failures.join("; "))
            };
            Ok(Reply {
                code: holds(report.verdict),
                json: serde_json::to_value(body).expect("report serializes"),
                plain,
            })
        }
        Command::VerifyGt { cert } => {
            let p = load(path)?;
            let json: CertificateJson = match serde_json::from_str(cert) {
                Ok(j) => j,
                Err(_) => {
                    let text = std::fs::read_to_string(cert)
                        .map_err(|_| Error::InvalidCertificate("not valid JSON nor a readable file".into()))?;
                    serde_json::from_str(&text).map_err(|e| Error::InvalidCertificate(e.to_string()))?
                }
            };
            let c = TorsionCertificate::from_json(&p, &json)?;
            let valid = verify_certificate(&p, &c);
            Ok(Reply {
                code: holds(valid),
                json: json!({
                    "valid": valid,
                    "g_trivial": crate::hnn::is_trivial(&p, c.g()),
                    "product": p.format_word(&c.product(&p)),
                }),
                plain: valid.to_string(),
            })
        }
        Command::SearchGt { g, max_factors, max_conj_len, budget } => {
            let p = load(path)?;
            let g = p.parse_word(g)?;
            let bounds = SearchBounds::new(*max_factors, *max_conj_len).with_budget(*budget);
            let found = search_certificate(&p, &g, bounds)?;
            let certificate = found.as_ref().map(|c| c.to_json(&p));
            let plain = match &certificate {
                Some(c) => format!("g = {}; conjugators = [{}]", c.g, c.conjugators.join(", ")),
                None => "none".to_string(),
            };
            Ok(Reply {
                code: holds(found.is_some()),
                json: json!({
                    "found": found.is_some(),
                    "certificate": certificate,
                    "max_factors": max_factors,
                    "max_conj_len": max_conj_len,
                }),
                plain,
            })
        }
        Command::Order { mode, radius, budget } => {
            let p = load(path)?;
            let ball = enumerate_ball_with_budget(&p, *radius, *budget)?;
            let verdict = search_cone(&ball, *mode);
            let validated = match &verdict {
                ConeVerdict::NoObstruction { cone } => check_cone(&ball, cone, *mode),
                ConeVerdict::Refuted { trace } => replay_refutation(&ball, *mode, trace),
            };
            let body = VerdictJson::new(&ball, *mode, &verdict);
            let plain = format!(
                "{} ({} mode, radius {}, {} elements)",
                body.verdict, mode, radius, body.ball_size
            );
            let mut json = serde_json::to_value(body).expect("verdict serializes");
            json["validated"] = Value::Bool(validated);
            Ok(Reply { code: EXIT_HOLDS, json, plain })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutcome {
        run(std::iter::once("hnnkit").chain(args.iter().copied()))
    }

    #[test]
    fn reduce_without_presentation() {
        let out = run_args(&["--output", "plain", "reduce", "x x^-1 y"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "y\n");
        let out = run_args(&["reduce", "x x^-1"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["word"], "1");
    }

    #[test]
    fn conjugacy_exit_codes() {
        assert_eq!(run_args(&["conj", "x y^-1", "y^-1 x"]).code, 0);
        assert_eq!(run_args(&["conj", "x y^-1", "y z^-1"]).code, 1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["reduce", "x^0"]).code, 2);
        assert_eq!(run_args(&["triv", "x"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["-p", "/nonexistent/file", "check-freeness"]).code, 2);
        assert_eq!(run_args(&["order", "--mode", "sideways", "--radius", "1"]).code, 2);
    }

    #[test]
    fn help_is_not_an_error() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("search-gt"));
    }
}
