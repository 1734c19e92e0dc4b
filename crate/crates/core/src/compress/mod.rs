//! Weak and strong compression, generator collapse, and the reduction
//! pipeline built from them.

pub mod collapse;
pub mod pipeline;
pub mod strong;
pub mod weak;

pub use collapse::{collapse_generators, CollapseMap};
pub use pipeline::{reduce_to_canonical, PipelineStep, ReductionPipeline};
pub use strong::{strong_compress, StrongCompression};
pub use weak::{weak_compress, weak_compress_with, AlphaChoice, WeakCompression};

use crate::presentation::{ElementaryStep, Presentation, Trace};
use crate::verdict::Verdict;
use crate::word::{Letter, Word};

/// Callback used by the compression deciders to solve the reduced query.
pub type Recurse<'a> = dyn FnMut(&Presentation, &Word, &Word) -> Verdict + 'a;

/// Picks a letter name not used by `taken`, starting from `base`.
pub(crate) fn fresh_name(base: &str, taken: &[Letter]) -> Letter {
    let mut name = base.to_owned();
    while taken.iter().any(|l| l.name() == name) {
        name.push('_');
    }
    Letter::named(&name)
}

/// Lifts a derivation in a reduced presentation back to the source.
///
/// `position` maps a step position in an inner word to a position in the
/// corresponding outer word, and `outer_of` turns an inner word into the
/// outer word it encodes. `swapped` records whether the reduced relation
/// was stored with its sides exchanged relative to the source.
pub(crate) fn lift_trace(
    inner: &Presentation,
    trace: &Trace,
    swapped: bool,
    mut position: impl FnMut(&Word, usize) -> usize,
    mut outer_of: impl FnMut(&Word) -> Word,
) -> Option<Trace> {
    let words = trace.replay(inner).ok()?;
    let steps = trace
        .steps
        .iter()
        .zip(&words)
        .map(|(s, w)| {
            let direction = if swapped { s.direction.flip() } else { s.direction };
            ElementaryStep::new(position(w, s.position), direction)
        })
        .collect();
    Some(Trace { start: outer_of(&trace.start), steps, end: outer_of(&trace.end) })
}
