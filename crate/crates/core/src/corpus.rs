//! Batch files of queries with optional expected verdicts.
//!
//! One entry per line: `<presentation> ;; <command> <args> [;; expect <verdict>]`.
//! Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::adian::{adian_run, AdianOutcome};
use crate::classify::classify;
use crate::collatz::{build_system, run_trace, CollatzOutcome};
use crate::compress::reduce_to_canonical;
use crate::error::Error;
use crate::presentation::{parse_presentation, parse_word, Presentation};
use crate::solve::{divides, solve, SolveOptions};
use crate::verdict::{LoopKind, Outcome};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Solve { u: Word, v: Word },
    Divides { word: Word, letter: Letter },
    Classify,
    Reduce,
    AdianTrace { word: Word, letter: Letter },
    CollatzTrace { x: Word, y: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub line: usize,
    pub presentation: Presentation,
    pub command: Command,
    pub expect: Option<String>,
}

fn syntax(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Syntax(format!("line {line}: {msg}"))
}

fn parse_letter(line: usize, text: &str, p: &Presentation) -> Result<Letter, Error> {
    p.alphabet()
        .iter()
        .copied()
        .find(|l| l.name() == text)
        .ok_or_else(|| syntax(line, format!("unknown letter `{text}`")))
}

pub fn parse_entry(line: usize, text: &str) -> Result<Entry, Error> {
    let parts: Vec<&str> = text.split(";;").map(str::trim).collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(syntax(line, "expected `<presentation> ;; <command> <args> [;; expect <verdict>]`"));
    }
    let p = parse_presentation(parts[0]).map_err(|e| syntax(line, e))?;
    let args: Vec<&str> = parts[1].split_whitespace().collect();
    let word = |i: usize| -> Result<Word, Error> {
        let t = args.get(i).ok_or_else(|| syntax(line, "missing argument"))?;
        parse_word(t, p.alphabet()).map_err(|e| syntax(line, e))
    };
    let arity = |n: usize| -> Result<(), Error> {
        if args.len() == n + 1 {
            Ok(())
        } else {
            Err(syntax(line, format!("`{}` takes {n} arguments", args[0])))
        }
    };
    let command = match args.first().copied() {
        Some("solve") => {
            arity(2)?;
            Command::Solve { u: word(1)?, v: word(2)? }
        }
        Some("divides") => {
            arity(2)?;
            Command::Divides { word: word(1)?, letter: parse_letter(line, args[2], &p)? }
        }
        Some("adian-trace") => {
            arity(2)?;
            Command::AdianTrace { word: word(1)?, letter: parse_letter(line, args[2], &p)? }
        }
        Some("collatz-trace") => {
            arity(2)?;
            Command::CollatzTrace { x: word(1)?, y: word(2)? }
        }
        Some("classify") => {
            arity(0)?;
            Command::Classify
        }
        Some("reduce") => {
            arity(0)?;
            Command::Reduce
        }
        Some(other) => return Err(syntax(line, format!("unknown command `{other}`"))),
        None => return Err(syntax(line, "missing command")),
    };
    let expect = match parts.get(2) {
        None => None,
        Some(e) => match e.strip_prefix("expect") {
            Some(rest) if !rest.trim().is_empty() => Some(rest.trim().to_owned()),
            _ => return Err(syntax(line, "expected `expect <verdict>`")),
        },
    };
    Ok(Entry { line, presentation: p, command, expect })
}

pub fn parse_corpus(text: &str) -> Result<Vec<Entry>, Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| parse_entry(i + 1, l))
        .collect()
}

/// Verdict string of an equality (`divisibility = false`) or divisibility query.
pub fn outcome_name(o: Outcome, divisibility: bool) -> &'static str {
    match (o, divisibility) {
        (Outcome::Equal, false) => "equal",
        (Outcome::NotEqual, false) => "not_equal",
        (Outcome::Equal, true) => "divisible",
        (Outcome::NotEqual, true) => "not_divisible",
        (Outcome::Unknown, _) => "unknown",
    }
}

/// Verdict string of an 𝔄 run. Strict mode reports heuristic loops as unknown.
pub fn adian_verdict(outcome: &AdianOutcome, strict: bool) -> &'static str {
    match outcome {
        AdianOutcome::Divisible { .. } => "divisible",
        AdianOutcome::Headless { .. } => "headless",
        AdianOutcome::Loop { loop_kind, .. } if strict && *loop_kind != LoopKind::ExactRepetition => "unknown",
        AdianOutcome::Loop { .. } => "loop",
        AdianOutcome::BudgetExhausted { .. } => "unknown",
    }
}

/// Verdict string of a Collatz trace. Strict mode reports heuristic loops as
/// unknown.
pub fn collatz_verdict(outcome: &CollatzOutcome, strict: bool) -> &'static str {
    match outcome {
        CollatzOutcome::Successful => "successful",
        CollatzOutcome::Unsuccessful => "unsuccessful",
        CollatzOutcome::Loop { loop_kind, .. } if strict && *loop_kind != LoopKind::ExactRepetition => "unknown",
        CollatzOutcome::Loop { .. } => "loop",
        CollatzOutcome::BudgetExhausted => "unknown",
    }
}

/// Runs one entry and returns its verdict string.
pub fn run_entry(e: &Entry, opts: &SolveOptions) -> Result<String, Error> {
    let p = &e.presentation;
    Ok(match &e.command {
        Command::Solve { u, v } => outcome_name(solve(p, u, v, opts)?.outcome, false).to_owned(),
        Command::Divides { word, letter } => {
            outcome_name(divides(p, word, *letter, opts)?.outcome, true).to_owned()
        }
        Command::Classify => {
            let c = classify(p);
            serde_json::to_string(&c).map_err(|err| Error::Other(err.to_string()))?;
            "classified".to_owned()
        }
        Command::Reduce => reduce_to_canonical(p).result.to_string(),
        Command::AdianTrace { word, letter } => {
            adian_verdict(&adian_run(word, *letter, p, opts.adian)?.outcome, opts.strict).to_owned()
        }
        Command::CollatzTrace { x, y } => {
            let s = build_system(p)?;
            collatz_verdict(&run_trace(&s, x, y, opts.adian.max_replacements).outcome, opts.strict).to_owned()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub line: usize,
    pub entry: String,
    pub verdict: String,
    pub expect: Option<String>,
    pub matched: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub results: Vec<EntryResult>,
    pub counts: BTreeMap<String, usize>,
    pub mismatches: Vec<usize>,
    pub unknown: usize,
}

impl CorpusSummary {
    pub fn has_mismatch(&self) -> bool {
        !self.mismatches.is_empty()
    }

    /// True when there was at least one entry and none was decided.
    pub fn all_unknown(&self) -> bool {
        !self.results.is_empty() && self.unknown == self.results.len()
    }
}

pub fn run_corpus(text: &str, opts: &SolveOptions) -> Result<CorpusSummary, Error> {
    let entries = parse_corpus(text)?;
    let source: Vec<&str> = text.lines().collect();
    let mut summary = CorpusSummary::default();
    for e in &entries {
        let verdict = run_entry(e, opts).map_err(|err| syntax(e.line, err))?;
        let matched = e.expect.as_ref().map(|x| *x == verdict);
        if matched == Some(false) {
            summary.mismatches.push(e.line);
        }
        if verdict == "unknown" {
            summary.unknown += 1;
        }
        *summary.counts.entry(verdict.clone()).or_default() += 1;
        summary.results.push(EntryResult {
            line: e.line,
            entry: source[e.line - 1].trim().to_owned(),
            verdict,
            expect: e.expect.clone(),
            matched,
        });
    }
    Ok(summary)
}
