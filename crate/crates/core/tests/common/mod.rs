//! Enumerations and independent oracles shared by the integration tests.

#![allow(dead_code)]

use onerel::classify::{is_self_overlap_free, left_cycle_free, right_cycle_free};
use onerel::compress::{strong_compress, weak_compress};
use onerel::search::{equal_length_decide, sof_rewrite_decide, AtlasAnswer, BoundedCongruence};
use onerel::units::{builtin_oracle, special_word_problem, unit_group_presentation};
use onerel::{solve, Outcome, Presentation, SolveOptions, Trace, Verdict, Word};
use onerel::adian::solve_left_cycle_free;

pub fn w(s: &str) -> Word {
    Word::chars(s)
}

/// All words over `letters` of length `min..=max`, shortlex.
pub fn words(letters: &str, min: usize, max: usize) -> Vec<Word> {
    let alphabet: Vec<char> = letters.chars().collect();
    let mut out = Vec::new();
    let mut level: Vec<String> = vec![String::new()];
    for len in 0..=max {
        if len >= min {
            out.extend(level.iter().map(|s| w(if s.is_empty() { "1" } else { s })));
        }
        level = level
            .iter()
            .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
            .collect();
    }
    out
}

/// Every presentation over `{a, b}` with `min ≤ |lhs| + |rhs| ≤ max`, each
/// once up to orientation.
pub fn presentations(min: usize, max: usize) -> Vec<Presentation> {
    let ws = words("ab", 0, max);
    let mut out: Vec<Presentation> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for u in &ws {
        for v in &ws {
            let n = u.len() + v.len();
            if n < min || n > max {
                continue;
            }
            if let Ok(p) = Presentation::chars("ab", &u.to_string(), &v.to_string()) {
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Reference answer from bounded search: the congruence restricted to words
/// up to a length cap.
pub struct Oracle {
    pub atlas: BoundedCongruence,
}

impl Oracle {
    pub fn new(p: &Presentation, cap: usize) -> Oracle {
        Oracle { atlas: BoundedCongruence::build(p, cap).expect("atlas fits") }
    }

    pub fn decide(&self, u: &Word, v: &Word) -> Option<Outcome> {
        match self.atlas.decide(u, v) {
            AtlasAnswer::Equal => Some(Outcome::Equal),
            AtlasAnswer::NotEqual => Some(Outcome::NotEqual),
            AtlasAnswer::Unknown => None,
        }
    }
}

/// Verdicts from every route that applies to `p`, each run on its own.
/// Verdicts of every applicable decision route, each run directly. The
/// compression routes recurse through `solve` with `opts`.
pub fn route_verdicts(p: &Presentation, u: &Word, v: &Word, opts: &SolveOptions) -> Vec<(&'static str, Verdict)> {
    let budget = opts.adian;
    let mut out = Vec::new();
    if p.is_equal_length() {
        out.push(("equal_length", equal_length_decide(u, v, p).unwrap()));
    } else if is_self_overlap_free(p.lhs()).unwrap() {
        out.push(("sof_rewrite", sof_rewrite_decide(u, v, p).unwrap()));
    }
    if p.is_special() {
        if let Some(oracle) = unit_group_presentation(p).ok().as_ref().and_then(builtin_oracle) {
            out.push(("special", special_word_problem(p, u, v, &oracle).unwrap()));
        }
    }
    let mut rec = |q: &Presentation, a: &Word, b: &Word| solve(q, a, b, opts).unwrap();
    if let Some(wc) = weak_compress(p) {
        out.push(("weak", wc.decide(u, v, &mut rec)));
    }
    if let Some(sc) = strong_compress(p) {
        out.push(("strong", sc.decide(u, v, &mut rec)));
    }
    if left_cycle_free(p) == Some(true) {
        out.push(("adian", solve_left_cycle_free(u, v, p, budget).unwrap()));
    } else if right_cycle_free(p) == Some(true) {
        let rev = p.reversed();
        out.push(("adian_reversed", solve_left_cycle_free(&u.reversed(), &v.reversed(), &rev, budget).unwrap()));
    }
    out
}

/// True if `t` is a valid derivation from `u` to `v`.
pub fn derives(t: &Trace, p: &Presentation, u: &Word, v: &Word) -> bool {
    t.start == *u && t.end == *v && t.verify(p)
}
