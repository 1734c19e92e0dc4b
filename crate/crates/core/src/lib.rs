//! Word problems for one-relation monoids `⟨A | u = v⟩`.
//!
//! The crate classifies presentations, solves the special case through the
//! group of units, reduces presentations by compression, and decides
//! divisibility and equality in left cycle-free presentations with
//! algorithm 𝔄. Bounded search is available everywhere as a fallback and as
//! an oracle for testing.

pub mod adian;
pub mod classify;
pub mod collatz;
pub mod compress;
pub mod corpus;
pub mod error;
pub mod presentation;
pub mod search;
pub mod solve;
pub mod units;
pub mod verdict;
pub mod word;

pub use classify::{classify, Classification, Tri};
pub use error::Error;
pub use presentation::{
    parse_presentation, parse_word, reverse_presentation, Direction, ElementaryStep, Presentation,
    Trace,
};
pub use solve::{divides, dispatch_solve, solve, solve_routed, Query, Route, SolveOptions, SolveReport, SolveRequest};
pub use verdict::{Certificate, Confidence, LoopKind, Outcome, Verdict};
pub use word::{Letter, Word};
