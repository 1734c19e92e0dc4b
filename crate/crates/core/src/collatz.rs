//! Word-pair dynamics for monadic presentations `⟨a,b | aub = a⟩` and the
//! numeric map they induce.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::adian::{adian_divisibility, AdianBudget, AdianOutcome};
use crate::error::Error;
use crate::presentation::Presentation;
use crate::verdict::{LoopKind, Outcome};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollatzSystem {
    /// The presentation in the shape `a·u·b = a`.
    pub presentation: Presentation,
    pub a: Letter,
    pub b: Letter,
    pub u: Word,
    pub k: BigUint,
    pub l: usize,
    /// True if the input had the shape `b·u·a = a` and was reversed.
    pub reversed: bool,
}

fn monadic_shape(p: &Presentation) -> Option<(Letter, Letter, Word)> {
    let (lhs, rhs) = (p.lhs(), p.rhs());
    if p.alphabet().len() != 2 || rhs.len() != 1 || lhs.len() < 2 {
        return None;
    }
    let a = rhs.first()?;
    let b = lhs.last()?;
    (lhs.first() == Some(a) && b != a).then(|| (a, b, lhs.slice(1, lhs.len() - 1)))
}

pub fn build_system(p: &Presentation) -> Result<CollatzSystem, Error> {
    let (presentation, reversed) = match monadic_shape(p) {
        Some(_) => (p.clone(), false),
        None => (p.reversed(), true),
    };
    let (a, b, u) = monadic_shape(&presentation).ok_or(Error::Shape("a·u·b = a"))?;
    let mut k = BigUint::default();
    for &l in u.letters() {
        k <<= 1u32;
        if l == a {
            k += 1u32;
        }
    }
    Ok(CollatzSystem { presentation, a, b, l: u.len(), u, k, reversed })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairState {
    pub x_word: Word,
    pub y_word: Word,
}

/// Dyadic reading of a word (`a ↦ 1`, `b ↦ 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Numeric {
    Empty,
    Value(BigUint),
    /// The word starts with `b`, so leading zeros would be lost.
    Undefined,
}

impl fmt::Display for Numeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Numeric::Empty => write!(f, "ε"),
            Numeric::Value(v) => write!(f, "{v}"),
            Numeric::Undefined => write!(f, "-"),
        }
    }
}

impl CollatzSystem {
    pub fn numeric(&self, w: &Word) -> Numeric {
        match w.first() {
            None => Numeric::Empty,
            Some(l) if l != self.a => Numeric::Undefined,
            Some(_) => {
                let mut v = BigUint::default();
                for &l in w.letters() {
                    v <<= 1u32;
                    if l == self.a {
                        v += 1u32;
                    }
                }
                Numeric::Value(v)
            }
        }
    }

    /// The word whose dyadic reading is `n` (`n ≥ 1`).
    pub fn word_of(&self, n: &BigUint) -> Word {
        let bits = n.bits();
        (0..bits).rev().map(|i| if n.bit(i) { self.a } else { self.b }).collect()
    }

    pub fn format_state(&self, st: &PairState) -> String {
        format!(
            "({}, {})  [num: ({}, {})]",
            st.x_word,
            st.y_word,
            self.numeric(&st.x_word),
            self.numeric(&st.y_word)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Cancel,
    Flip,
    Transform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    Next(PairState, StepKind),
    Successful,
    Unsuccessful,
}

/// One application of the case analysis.
///
/// Either word empty counts as success only when both are: the relation
/// sides are nonempty, so no nonempty word equals the empty word.
pub fn step(s: &CollatzSystem, st: &PairState) -> StepResult {
    let (x, y) = (&st.x_word, &st.y_word);
    if x == y {
        return StepResult::Successful;
    }
    if x.is_empty() || y.is_empty() {
        return StepResult::Unsuccessful;
    }
    if (x.len() == 1 && y.ends_with(x)) || (y.len() == 1 && x.ends_with(y)) {
        return StepResult::Unsuccessful;
    }
    let (lx, ly) = (x.last().unwrap(), y.last().unwrap());
    if lx == ly {
        let next = PairState { x_word: x.prefix(x.len() - 1), y_word: y.prefix(y.len() - 1) };
        return StepResult::Next(next, StepKind::Cancel);
    }
    if lx == s.a {
        let next = PairState { x_word: y.clone(), y_word: x.clone() };
        return StepResult::Next(next, StepKind::Flip);
    }
    let next = PairState { x_word: x.prefix(x.len() - 1), y_word: y.concat(&s.u) };
    StepResult::Next(next, StepKind::Transform)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CollatzOutcome {
    Successful,
    Unsuccessful,
    Loop { loop_kind: LoopKind, earlier: usize, at: usize },
    BudgetExhausted,
}

impl CollatzOutcome {
    pub fn outcome(&self) -> Outcome {
        match self {
            CollatzOutcome::Successful => Outcome::Equal,
            CollatzOutcome::Unsuccessful | CollatzOutcome::Loop { .. } => Outcome::NotEqual,
            CollatzOutcome::BudgetExhausted => Outcome::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollatzRun {
    pub states: Vec<PairState>,
    pub kinds: Vec<StepKind>,
    pub outcome: CollatzOutcome,
}

impl CollatzRun {
    pub fn lines(&self, s: &CollatzSystem) -> Vec<String> {
        self.states.iter().map(|st| s.format_state(st)).collect()
    }

    /// Numeric projections of the states, where both are defined values.
    pub fn numeric_trace(&self, s: &CollatzSystem) -> Vec<Option<(BigUint, BigUint)>> {
        self.states
            .iter()
            .map(|st| match (s.numeric(&st.x_word), s.numeric(&st.y_word)) {
                (Numeric::Value(x), Numeric::Value(y)) => Some((x, y)),
                _ => None,
            })
            .collect()
    }
}

/// Iterates [`step`] from `(x, y)`.
///
/// An exact repeat of a pair proves non-termination. The heuristic rule
/// fires on a state whose y-word is the single letter `a` and whose x value
/// is larger than and congruent modulo `2^L` to that of an earlier such
/// state.
pub fn run_trace(s: &CollatzSystem, x: &Word, y: &Word, max_steps: usize) -> CollatzRun {
    let mut states = vec![PairState { x_word: x.clone(), y_word: y.clone() }];
    let mut kinds = Vec::new();
    let mut seen: HashSet<PairState> = HashSet::new();
    seen.insert(states[0].clone());
    let single_a = Word::from_letters(vec![s.a]);
    let modulus = BigUint::from(1u32) << s.l;
    let mut anchors: Vec<(usize, BigUint)> = Vec::new();
    let note_anchor = |i: usize, st: &PairState, anchors: &mut Vec<(usize, BigUint)>| -> Option<usize> {
        if st.y_word != single_a {
            return None;
        }
        let Numeric::Value(xv) = s.numeric(&st.x_word) else { return None };
        let hit = anchors
            .iter()
            .find(|(_, e)| xv > *e && (&xv % &modulus) == (e % &modulus))
            .map(|(j, _)| *j);
        anchors.push((i, xv));
        hit
    };
    let _ = note_anchor(0, &states[0], &mut anchors);
    let outcome = loop {
        if kinds.len() >= max_steps {
            break CollatzOutcome::BudgetExhausted;
        }
        let cur = states.last().unwrap();
        match step(s, cur) {
            StepResult::Successful => break CollatzOutcome::Successful,
            StepResult::Unsuccessful => break CollatzOutcome::Unsuccessful,
            StepResult::Next(next, kind) => {
                kinds.push(kind);
                let at = states.len();
                if !seen.insert(next.clone()) {
                    let earlier = states.iter().position(|st| *st == next).unwrap();
                    states.push(next);
                    break CollatzOutcome::Loop { loop_kind: LoopKind::ExactRepetition, earlier, at };
                }
                let hit = note_anchor(at, &next, &mut anchors);
                states.push(next);
                if let Some(earlier) = hit {
                    break CollatzOutcome::Loop { loop_kind: LoopKind::Modular, earlier, at };
                }
            }
        }
    };
    CollatzRun { states, kinds, outcome }
}

/// The numeric map on pairs of positive integers.
pub fn g_function(s: &CollatzSystem, x: &BigUint, y: &BigUint) -> (BigUint, BigUint) {
    let (px, py) = (x.bit(0), y.bit(0));
    if px == py {
        (x >> 1u32, y >> 1u32)
    } else if !px {
        (x >> 1u32, (y << s.l) + &s.k)
    } else {
        (y.clone(), x.clone())
    }
}

/// Right divisibility of `w` by `a^k` for `k = 1..=n`, computed with 𝔄 on
/// the reversed (left cycle-free) presentation. Entry `k - 1` answers `a^k`.
pub fn guba_probe(s: &CollatzSystem, w: &Word, n: usize, budget: AdianBudget) -> Result<Vec<Outcome>, Error> {
    let rev = s.presentation.reversed();
    let mut cur = w.reversed();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let verdict = match out.last() {
            Some(Outcome::NotEqual) => Outcome::NotEqual,
            Some(Outcome::Unknown) => Outcome::Unknown,
            _ => match adian_divisibility(&cur, s.a, &rev, budget)? {
                AdianOutcome::Divisible { witness, .. } => {
                    cur = witness;
                    Outcome::Equal
                }
                AdianOutcome::Headless { .. }
                | AdianOutcome::Loop { loop_kind: LoopKind::ExactRepetition, .. } => Outcome::NotEqual,
                _ => Outcome::Unknown,
            },
        };
        out.push(verdict);
    }
    Ok(out)
}
