//! Verdicts returned by the word-problem solvers, with their certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::presentation::{Presentation, Trace};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Equal,
    NotEqual,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Equal => "equal",
            Outcome::NotEqual => "not_equal",
            Outcome::Unknown => "unknown",
        })
    }
}

/// How much a decided verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    /// Backed by a replayable derivation, an invariant, or a complete
    /// procedure.
    Sound,
    /// Relies on a reduction whose converse direction is assumed, not
    /// re-verified.
    Reduced,
    /// Relies on a loop-detection pattern that is not known to be complete.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    /// The exact same state recurred under a deterministic process.
    ExactRepetition,
    /// An earlier prefix decomposition reappeared inside a later one.
    Embedding,
    /// A Collatz pair recurred modulo `2^L` with growth.
    Modular,
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The two words are graphically equal.
    Identical,
    /// A derivation from the first word to the second.
    Derivation { trace: Trace },
    /// An invariant of the congruence separates the words.
    Invariant { description: String },
    /// Algorithm 𝔄 reached a headless decomposition of `word` while
    /// looking for the letter `letter`.
    Headless { word: Word, letter: Letter },
    /// A non-terminating loop was detected.
    Loop { loop_kind: LoopKind, detail: String },
    /// Normal forms computed by a complete procedure.
    NormalForms { left: Word, right: Word },
    /// A congruence class was enumerated to closure.
    ClosedClass { word: Word, size: usize },
    /// A search or iteration budget ran out.
    Budget { detail: String },
    /// The verdict was obtained on a reduced presentation.
    Reduction {
        step: String,
        presentation: Presentation,
        left: Word,
        right: Word,
        inner: Box<Verdict>,
    },
    /// No procedure applies.
    Unsupported { detail: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub confidence: Confidence,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn identical() -> Verdict {
        Verdict {
            outcome: Outcome::Equal,
            confidence: Confidence::Sound,
            certificate: Certificate::Identical,
        }
    }

    pub fn derivation(trace: Trace) -> Verdict {
        if trace.is_empty() && trace.start == trace.end {
            return Verdict::identical();
        }
        Verdict {
            outcome: Outcome::Equal,
            confidence: Confidence::Sound,
            certificate: Certificate::Derivation { trace },
        }
    }

    pub fn equal(confidence: Confidence, certificate: Certificate) -> Verdict {
        Verdict { outcome: Outcome::Equal, confidence, certificate }
    }

    pub fn not_equal(confidence: Confidence, certificate: Certificate) -> Verdict {
        Verdict { outcome: Outcome::NotEqual, confidence, certificate }
    }

    pub fn invariant(description: impl Into<String>) -> Verdict {
        Verdict::not_equal(
            Confidence::Sound,
            Certificate::Invariant { description: description.into() },
        )
    }

    pub fn unknown(certificate: Certificate) -> Verdict {
        Verdict { outcome: Outcome::Unknown, confidence: Confidence::Sound, certificate }
    }

    pub fn budget(detail: impl Into<String>) -> Verdict {
        Verdict::unknown(Certificate::Budget { detail: detail.into() })
    }

    pub fn unsupported(detail: impl Into<String>) -> Verdict {
        Verdict::unknown(Certificate::Unsupported { detail: detail.into() })
    }

    pub fn is_decided(&self) -> bool {
        self.outcome != Outcome::Unknown
    }

    /// In strict mode heuristic verdicts are demoted to `Unknown`.
    pub fn strict(self, strict: bool) -> Verdict {
        if strict && self.is_decided() && self.confidence == Confidence::Heuristic {
            Verdict { outcome: Outcome::Unknown, ..self }
        } else {
            self
        }
    }

    /// Wraps a verdict obtained on a reduced presentation. The weakest
    /// confidence of the two wins.
    pub fn reduced(
        step: impl Into<String>,
        presentation: &Presentation,
        left: &Word,
        right: &Word,
        inner: Verdict,
        at_least: Confidence,
    ) -> Verdict {
        Verdict {
            outcome: inner.outcome,
            confidence: inner.confidence.max(at_least),
            certificate: Certificate::Reduction {
                step: step.into(),
                presentation: presentation.clone(),
                left: left.clone(),
                right: right.clone(),
                inner: Box::new(inner),
            },
        }
    }

    /// The derivation carried by an `Equal` verdict, if any.
    pub fn trace(&self) -> Option<&Trace> {
        match &self.certificate {
            Certificate::Derivation { trace } => Some(trace),
            _ => None,
        }
    }

    /// Checks every derivation in the certificate chain against the
    /// presentation it belongs to. `p` is the presentation the verdict was
    /// produced for; `u` and `v` the query.
    pub fn check_derivations(&self, p: &Presentation, u: &Word, v: &Word) -> bool {
        match &self.certificate {
            Certificate::Identical => self.outcome != Outcome::Equal || u == v,
            Certificate::Derivation { trace } => {
                trace.start == *u && trace.end == *v && trace.verify(p)
            }
            Certificate::Reduction { presentation, left, right, inner, .. } => {
                inner.check_derivations(presentation, left, right)
            }
            _ => true,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome)?;
        if self.is_decided() && self.confidence != Confidence::Sound {
            write!(f, " ({:?})", self.confidence)?;
        }
        Ok(())
    }
}
