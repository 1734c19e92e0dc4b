//! Prefix decompositions and algorithm 𝔄 for left divisibility by a letter
//! in left cycle-free presentations, and a word-problem solver built on it.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::left_cycle_free;
use crate::error::Error;
use crate::presentation::{Direction, ElementaryStep, Presentation, Trace};
use crate::verdict::{Certificate, Confidence, LoopKind, Verdict};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixDecomposition {
    pub blocks: Vec<Word>,
    pub head: Option<Word>,
    pub tail: Word,
}

impl PrefixDecomposition {
    pub fn is_headless(&self) -> bool {
        self.head.is_none()
    }

    /// Position of the head in the decomposed word.
    pub fn head_position(&self) -> usize {
        self.blocks.iter().map(Word::len).sum()
    }

    pub fn reassemble(&self) -> Word {
        let mut w = Word::empty();
        for b in &self.blocks {
            w = w.concat(b);
        }
        if let Some(h) = &self.head {
            w = w.concat(h);
        }
        w.concat(&self.tail)
    }
}

impl fmt::Display for PrefixDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.blocks.iter().map(Word::to_string).collect();
        match &self.head {
            Some(h) => {
                parts.push(format!("[{h}]"));
                write!(f, "{}", parts.join(" | "))?;
                if !self.tail.is_empty() {
                    write!(f, " {}", self.tail)?;
                }
                Ok(())
            }
            None => {
                if !self.tail.is_empty() {
                    parts.push(self.tail.to_string());
                }
                write!(f, "{}", parts.join(" | "))
            }
        }
    }
}

fn require_left_cycle_free(p: &Presentation) -> Result<(), Error> {
    match left_cycle_free(p) {
        None => Err(Error::Special),
        Some(false) => Err(Error::LeftCycles),
        Some(true) => Ok(()),
    }
}

/// Greedy factorization of `w` into maximal proper prefixes of the relation
/// sides, stopping at the first full side.
///
/// The sides start with different letters, so at most one side applies at
/// each position. A position whose letter starts neither side ends the
/// decomposition headless, with the rest of the word as its tail.
pub fn prefix_decompose(w: &Word, p: &Presentation) -> Result<PrefixDecomposition, Error> {
    require_left_cycle_free(p)?;
    Ok(decompose(w, p))
}

fn decompose(w: &Word, p: &Presentation) -> PrefixDecomposition {
    let letters = w.letters();
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < letters.len() {
        let rest = &letters[pos..];
        let side = [p.lhs(), p.rhs()].into_iter().find(|s| s.first() == Some(rest[0]));
        let Some(side) = side else {
            return PrefixDecomposition { blocks, head: None, tail: Word::from_letters(rest.to_vec()) };
        };
        let n = side.letters().iter().zip(rest).take_while(|(a, b)| a == b).count();
        if n == side.len() {
            return PrefixDecomposition {
                blocks,
                head: Some(side.clone()),
                tail: Word::from_letters(rest[n..].to_vec()),
            };
        }
        blocks.push(Word::from_letters(rest[..n].to_vec()));
        pos += n;
    }
    PrefixDecomposition { blocks, head: None, tail: Word::empty() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdianBudget {
    pub max_replacements: usize,
    pub max_letters: usize,
}

impl Default for AdianBudget {
    fn default() -> Self {
        AdianBudget { max_replacements: 10_000, max_letters: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdianOutcome {
    /// `x · witness` derives from the input word by `trace`.
    Divisible { witness: Word, steps: usize, trace: Trace },
    Headless { word: Word },
    /// `iteration` is the 1-based decomposition at which the loop was seen.
    Loop { loop_kind: LoopKind, iteration: usize },
    BudgetExhausted { steps: usize },
}

impl AdianOutcome {
    pub fn is_divisible(&self) -> bool {
        matches!(self, AdianOutcome::Divisible { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdianIteration {
    pub decomposition: PrefixDecomposition,
    /// The word after replacing the head; `None` for a headless step.
    pub next: Option<Word>,
}

impl fmt::Display for AdianIteration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decomposition)?;
        if let Some(n) = &self.next {
            write!(f, " → {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdianRun {
    pub word: Word,
    pub letter: Letter,
    pub iterations: Vec<AdianIteration>,
    pub outcome: AdianOutcome,
}

impl AdianRun {
    pub fn trace_lines(&self) -> Vec<String> {
        self.iterations.iter().map(ToString::to_string).collect()
    }
}

/// True if `earlier` reappears inside `current`: after a common leading
/// run of blocks, the remaining blocks of `earlier` and its head end the
/// blocks of `current`, which has strictly more blocks.
fn embeds(earlier: &PrefixDecomposition, current: &PrefixDecomposition) -> bool {
    let (e, c) = (&earlier.blocks, &current.blocks);
    if earlier.head != current.head || c.len() <= e.len() {
        return false;
    }
    (0..e.len()).any(|j| e[..j] == c[..j] && c[c.len() - (e.len() - j)..] == e[j..])
}

/// Runs 𝔄 on `w` and the letter `x`, recording every decomposition.
pub fn adian_run(w: &Word, x: Letter, p: &Presentation, budget: AdianBudget) -> Result<AdianRun, Error> {
    require_left_cycle_free(p)?;
    p.check_word(w)?;
    if !p.contains_letter(x) {
        return Err(Error::UndeclaredLetter(x.name().to_owned()));
    }
    let mut iterations = Vec::new();
    let mut seen: HashSet<Word> = HashSet::new();
    let mut steps = Vec::new();
    let mut cur = w.clone();
    let mut touched = 0usize;
    let outcome = loop {
        if cur.first() == Some(x) {
            let trace = Trace { start: w.clone(), steps: steps.clone(), end: cur.clone() };
            break AdianOutcome::Divisible { witness: cur.suffix(cur.len() - 1), steps: steps.len(), trace };
        }
        if !seen.insert(cur.clone()) {
            break AdianOutcome::Loop { loop_kind: LoopKind::ExactRepetition, iteration: iterations.len() };
        }
        if steps.len() >= budget.max_replacements || touched > budget.max_letters {
            break AdianOutcome::BudgetExhausted { steps: steps.len() };
        }
        touched += cur.len();
        let d = decompose(&cur, p);
        let Some(head) = d.head.clone() else {
            iterations.push(AdianIteration { decomposition: d, next: None });
            break AdianOutcome::Headless { word: cur };
        };
        let pos = d.head_position();
        let direction = if &head == p.lhs() { Direction::Forward } else { Direction::Backward };
        let next = cur.splice(pos, head.len(), p.side(direction.flip()));
        steps.push(ElementaryStep::new(pos, direction));
        let heuristic = iterations.iter().any(|it: &AdianIteration| embeds(&it.decomposition, &d));
        iterations.push(AdianIteration { decomposition: d, next: Some(next.clone()) });
        if heuristic {
            break AdianOutcome::Loop { loop_kind: LoopKind::Embedding, iteration: iterations.len() };
        }
        cur = next;
    };
    Ok(AdianRun { word: w.clone(), letter: x, iterations, outcome })
}

/// Algorithm 𝔄: is `w` left divisible by `x`?
pub fn adian_divisibility(
    w: &Word,
    x: Letter,
    p: &Presentation,
    budget: AdianBudget,
) -> Result<AdianOutcome, Error> {
    Ok(adian_run(w, x, p, budget)?.outcome)
}

/// Decides `u = v` in a left cycle-free presentation by peeling first
/// letters: such monoids are left cancellative, so `xu' = v` exactly when
/// `v = x·v'` with `u' = v'`.
pub fn solve_left_cycle_free(
    u: &Word,
    v: &Word,
    p: &Presentation,
    budget: AdianBudget,
) -> Result<Verdict, Error> {
    require_left_cycle_free(p)?;
    p.check_word(u)?;
    p.check_word(v)?;
    let mut prefix = Word::empty();
    let (mut u, mut v) = (u.clone(), v.clone());
    // Derivation from the original `v` to `prefix · v`.
    let mut back = Trace::identity(v.clone());
    let mut confidence = Confidence::Sound;
    loop {
        if u == v {
            let trace = Trace::identity(prefix.concat(&u)).then(back.inverse());
            let mut verdict = Verdict::derivation(trace);
            verdict.confidence = confidence;
            return Ok(verdict);
        }
        if u.is_empty() || v.is_empty() {
            return Ok(Verdict::invariant("no nonempty word equals the empty word"));
        }
        let x = u.first().unwrap();
        if v.first() == Some(x) {
            prefix.push(x);
            u = u.suffix(u.len() - 1);
            v = v.suffix(v.len() - 1);
            continue;
        }
        match adian_divisibility(&v, x, p, budget)? {
            AdianOutcome::Divisible { witness, trace, .. } => {
                back = back.then(trace.embed(&prefix, &Word::empty()));
                prefix.push(x);
                u = u.suffix(u.len() - 1);
                v = witness;
            }
            AdianOutcome::Headless { word } => {
                return Ok(Verdict::not_equal(
                    confidence,
                    Certificate::Headless { word, letter: x },
                ));
            }
            AdianOutcome::Loop { loop_kind, iteration } => {
                if loop_kind == LoopKind::Embedding {
                    confidence = Confidence::Heuristic;
                }
                return Ok(Verdict::not_equal(
                    confidence,
                    Certificate::Loop {
                        loop_kind,
                        detail: format!("{v} is not left divisible by {x} (loop at iteration {iteration})"),
                    },
                ));
            }
            AdianOutcome::BudgetExhausted { steps } => {
                return Ok(Verdict::budget(format!("algorithm A stopped after {steps} replacements")));
            }
        }
    }
}
