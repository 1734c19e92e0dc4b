//! Routing of word-problem and divisibility queries to the deciders.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::adian::{adian_divisibility, solve_left_cycle_free, AdianBudget, AdianOutcome};
use crate::classify::{is_self_overlap_free, left_cycle_free, right_cycle_free};
use crate::compress::{reduce_to_canonical, strong_compress, weak_compress, ReductionPipeline};
use crate::error::Error;
use crate::presentation::{Presentation, Trace};
use crate::search::{bfs_decide, equal_length_decide, sof_rewrite_decide, SearchBudget};
use crate::units::{builtin_oracle, special_word_problem, unit_group_presentation};
use crate::verdict::{Certificate, Confidence, LoopKind, Outcome, Verdict};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Identical,
    EqualLength,
    SofRewrite,
    Special,
    Weak,
    Strong,
    LeftCycleFree,
    Reversed,
    Bfs,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Identical => "identical",
            Route::EqualLength => "equal_length",
            Route::SofRewrite => "sof_rewrite",
            Route::Special => "special",
            Route::Weak => "weak",
            Route::Strong => "strong",
            Route::LeftCycleFree => "left_cycle_free",
            Route::Reversed => "reversed",
            Route::Bfs => "bfs",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub strict: bool,
    pub adian: AdianBudget,
    pub search: SearchBudget,
}

/// Decides `u = v`, recording the route taken at every level of recursion.
pub fn solve_routed(
    p: &Presentation,
    u: &Word,
    v: &Word,
    opts: &SolveOptions,
) -> Result<(Verdict, Vec<Route>), Error> {
    p.check_word(u)?;
    p.check_word(v)?;
    let mut routes = Vec::new();
    let verdict = dispatch(p, u, v, opts, &mut routes)?;
    Ok((verdict.strict(opts.strict), routes))
}

pub fn solve(p: &Presentation, u: &Word, v: &Word, opts: &SolveOptions) -> Result<Verdict, Error> {
    Ok(solve_routed(p, u, v, opts)?.0)
}

fn dispatch(
    p: &Presentation,
    u: &Word,
    v: &Word,
    opts: &SolveOptions,
    routes: &mut Vec<Route>,
) -> Result<Verdict, Error> {
    if u == v {
        routes.push(Route::Identical);
        return Ok(Verdict::identical());
    }
    if p.is_equal_length() {
        routes.push(Route::EqualLength);
        return equal_length_decide(u, v, p);
    }
    if is_self_overlap_free(p.lhs())? {
        routes.push(Route::SofRewrite);
        return sof_rewrite_decide(u, v, p);
    }
    if p.is_special() {
        if let Some(oracle) = unit_group_presentation(p).ok().as_ref().and_then(builtin_oracle) {
            routes.push(Route::Special);
            let verdict = special_word_problem(p, u, v, &oracle)?;
            if verdict.is_decided() {
                return Ok(verdict);
            }
        }
    }
    if let Some(wc) = weak_compress(p) {
        routes.push(Route::Weak);
        let mut err = None;
        let verdict = wc.decide(u, v, &mut |q: &Presentation, a: &Word, b: &Word| {
            dispatch(q, a, b, opts, routes).unwrap_or_else(|e| {
                err = Some(e);
                Verdict::unsupported("inner query failed")
            })
        });
        return err.map_or(Ok(verdict), Err);
    }
    if let Some(sc) = strong_compress(p) {
        routes.push(Route::Strong);
        let mut err = None;
        let verdict = sc.decide(u, v, &mut |q: &Presentation, a: &Word, b: &Word| {
            dispatch(q, a, b, opts, routes).unwrap_or_else(|e| {
                err = Some(e);
                Verdict::unsupported("inner query failed")
            })
        });
        return err.map_or(Ok(verdict), Err);
    }
    if left_cycle_free(p) == Some(true) {
        routes.push(Route::LeftCycleFree);
        return solve_left_cycle_free(u, v, p, opts.adian);
    }
    if right_cycle_free(p) == Some(true) {
        routes.push(Route::Reversed);
        routes.push(Route::LeftCycleFree);
        let rev = p.reversed();
        let inner = solve_left_cycle_free(&u.reversed(), &v.reversed(), &rev, opts.adian)?;
        return Ok(reverse_verdict(inner, &rev));
    }
    routes.push(Route::Bfs);
    Ok(bfs_decide(u, v, p, opts.search).into_verdict())
}

/// Maps a verdict on the reversed presentation back; derivations are
/// reversed letter by letter.
fn reverse_verdict(v: Verdict, rev: &Presentation) -> Verdict {
    match &v.certificate {
        Certificate::Derivation { trace } => match trace.reversed(rev) {
            Ok(t) => Verdict { certificate: Certificate::Derivation { trace: t }, ..v },
            Err(_) => v,
        },
        _ => v,
    }
}

/// Result of a left-divisibility query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Divisibility {
    pub outcome: Outcome,
    pub confidence: Confidence,
    /// `w = letter · witness` when divisible.
    pub witness: Option<Word>,
    pub certificate: Certificate,
}

impl Divisibility {
    pub fn trace(&self) -> Option<&Trace> {
        match &self.certificate {
            Certificate::Derivation { trace } => Some(trace),
            _ => None,
        }
    }
}

/// Is `w` left divisible by `x`? Algorithm 𝔄 for left cycle-free
/// presentations, bounded search otherwise.
pub fn divides(p: &Presentation, w: &Word, x: Letter, opts: &SolveOptions) -> Result<Divisibility, Error> {
    p.check_word(w)?;
    if !p.contains_letter(x) {
        return Err(Error::UndeclaredLetter(x.name().to_owned()));
    }
    if left_cycle_free(p) != Some(true) {
        return Ok(divides_by_search(p, w, x, opts.search));
    }
    let d = match adian_divisibility(w, x, p, opts.adian)? {
        AdianOutcome::Divisible { witness, trace, .. } => Divisibility {
            outcome: Outcome::Equal,
            confidence: Confidence::Sound,
            witness: Some(witness),
            certificate: Certificate::Derivation { trace },
        },
        AdianOutcome::Headless { word } => Divisibility {
            outcome: Outcome::NotEqual,
            confidence: Confidence::Sound,
            witness: None,
            certificate: Certificate::Headless { word, letter: x },
        },
        AdianOutcome::Loop { loop_kind, iteration } => {
            let heuristic = loop_kind != LoopKind::ExactRepetition;
            Divisibility {
                outcome: if heuristic && opts.strict { Outcome::Unknown } else { Outcome::NotEqual },
                confidence: if heuristic { Confidence::Heuristic } else { Confidence::Sound },
                witness: None,
                certificate: Certificate::Loop {
                    loop_kind,
                    detail: format!("loop detected at iteration {iteration}"),
                },
            }
        }
        AdianOutcome::BudgetExhausted { steps } => Divisibility {
            outcome: Outcome::Unknown,
            confidence: Confidence::Sound,
            witness: None,
            certificate: Certificate::Budget { detail: format!("stopped after {steps} head replacements") },
        },
    };
    Ok(d)
}

fn divides_by_search(p: &Presentation, w: &Word, x: Letter, b: SearchBudget) -> Divisibility {
    use std::collections::{HashMap, VecDeque};
    let mut parents: HashMap<Word, Option<(Word, crate::presentation::ElementaryStep)>> = HashMap::new();
    parents.insert(w.clone(), None);
    let mut queue = VecDeque::from([(w.clone(), 0usize)]);
    let mut truncated = false;
    while let Some((cur, depth)) = queue.pop_front() {
        if cur.first() == Some(x) {
            let mut steps = Vec::new();
            let mut at = cur.clone();
            while let Some(Some((prev, s))) = parents.get(&at) {
                steps.push(*s);
                at = prev.clone();
            }
            steps.reverse();
            let trace = Trace { start: w.clone(), steps, end: cur.clone() };
            return Divisibility {
                outcome: Outcome::Equal,
                confidence: Confidence::Sound,
                witness: Some(cur.suffix(cur.len() - 1)),
                certificate: Certificate::Derivation { trace },
            };
        }
        if depth >= b.max_depth || parents.len() > b.max_nodes {
            truncated = true;
            break;
        }
        for (s, next) in p.neighbours(&cur) {
            if next.len() > b.max_word_length {
                truncated = true;
                continue;
            }
            if !parents.contains_key(&next) {
                parents.insert(next.clone(), Some((cur.clone(), s)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    let (outcome, certificate) = if truncated {
        (
            Outcome::Unknown,
            Certificate::Budget { detail: format!("search stopped after {} words", parents.len()) },
        )
    } else {
        (Outcome::NotEqual, Certificate::ClosedClass { word: w.clone(), size: parents.len() })
    };
    Divisibility { outcome, confidence: Confidence::Sound, witness: None, certificate }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Query {
    Equality { u: Word, v: Word },
    Divides { word: Word, letter: Letter },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveRequest {
    pub presentation: Presentation,
    pub query: Query,
    pub options: SolveOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub presentation: Presentation,
    pub query: Query,
    pub verdict: Outcome,
    pub confidence: Confidence,
    pub route: Vec<Route>,
    pub certificate: Certificate,
    /// Length of the derivation, when one was produced.
    pub steps: Option<usize>,
    pub pipeline: Option<ReductionPipeline>,
    pub elapsed_us: u64,
}

pub fn dispatch_solve(req: &SolveRequest) -> Result<SolveReport, Error> {
    let start = Instant::now();
    let p = &req.presentation;
    let (verdict, route) = match &req.query {
        Query::Equality { u, v } => solve_routed(p, u, v, &req.options)?,
        Query::Divides { word, letter } => {
            let d = divides(p, word, *letter, &req.options)?;
            let certificate = d.certificate;
            let route = if left_cycle_free(p) == Some(true) { Route::LeftCycleFree } else { Route::Bfs };
            (Verdict { outcome: d.outcome, confidence: d.confidence, certificate }, vec![route])
        }
    };
    let pipeline = route
        .iter()
        .any(|r| matches!(r, Route::Weak | Route::Strong))
        .then(|| reduce_to_canonical(p));
    let steps = verdict.trace().map(Trace::len);
    Ok(SolveReport {
        presentation: p.clone(),
        query: req.query.clone(),
        verdict: verdict.outcome,
        confidence: verdict.confidence,
        route,
        certificate: verdict.certificate,
        steps,
        pipeline,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}
