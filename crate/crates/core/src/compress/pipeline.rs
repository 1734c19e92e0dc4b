//! Reduction of a presentation towards the canonical shapes `bua = ava` and
//! `bua = a` by compression, reversal and collapse.

use serde::{Deserialize, Serialize};

use super::collapse::{collapse_generators, CollapseMap};
use super::strong::{strong_compress, StrongCompression};
use super::weak::{weak_compress, WeakCompression};
use crate::classify::{left_cycle_free, right_cycle_free};
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PipelineStep {
    Reverse { from: Presentation, to: Presentation },
    Weak(WeakCompression),
    Strong(StrongCompression),
    Collapse { map: CollapseMap, from: Presentation, to: Presentation },
}

impl PipelineStep {
    pub fn name(&self) -> &'static str {
        match self {
            PipelineStep::Reverse { .. } => "reverse",
            PipelineStep::Weak(_) => "weak",
            PipelineStep::Strong(_) => "strong",
            PipelineStep::Collapse { .. } => "collapse",
        }
    }

    pub fn output(&self) -> &Presentation {
        match self {
            PipelineStep::Reverse { to, .. } | PipelineStep::Collapse { to, .. } => to,
            PipelineStep::Weak(w) => &w.left_monoid,
            PipelineStep::Strong(s) => &s.m_tau,
        }
    }

    /// Word-problem queries can be translated through compressions only.
    pub fn translates_queries(&self) -> bool {
        matches!(self, PipelineStep::Weak(_) | PipelineStep::Strong(_))
    }

    /// Recomputes this step from its input presentation.
    pub fn replay(&self, input: &Presentation) -> Option<Presentation> {
        match self {
            PipelineStep::Reverse { .. } => Some(input.reversed()),
            PipelineStep::Weak(_) => weak_compress(input).map(|w| w.left_monoid),
            PipelineStep::Strong(_) => strong_compress(input).map(|s| s.m_tau),
            PipelineStep::Collapse { .. } => collapse_generators(input).ok().map(|(_, q)| q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPipeline {
    pub source: Presentation,
    pub steps: Vec<PipelineStep>,
    pub result: Presentation,
}

impl ReductionPipeline {
    pub fn step_names(&self) -> Vec<&'static str> {
        self.steps.iter().map(PipelineStep::name).collect()
    }

    /// Re-runs every step from the source and checks each output.
    pub fn replay(&self) -> Option<Presentation> {
        let mut cur = self.source.clone();
        for s in &self.steps {
            let next = s.replay(&cur)?;
            if &next != s.output() {
                return None;
            }
            cur = next;
        }
        Some(cur)
    }
}

/// Compresses while possible, then reverses a presentation that is only
/// right cycle-free, then collapses the left graph components.
///
/// Weak compression is tried before strong compression in every round. The
/// loop stops at special and equal-length presentations, which have their
/// own deciders. Collapse is skipped when it would merge nothing.
pub fn reduce_to_canonical(p: &Presentation) -> ReductionPipeline {
    let mut steps = Vec::new();
    let mut cur = p.clone();
    loop {
        if cur.is_special() || cur.is_trivial_relation() {
            break;
        }
        if let Some(wc) = weak_compress(&cur) {
            cur = wc.left_monoid.clone();
            steps.push(PipelineStep::Weak(wc));
            continue;
        }
        if let Some(sc) = strong_compress(&cur) {
            cur = sc.m_tau.clone();
            steps.push(PipelineStep::Strong(sc));
            continue;
        }
        break;
    }
    if !cur.is_special() && !cur.is_equal_length() {
        if left_cycle_free(&cur) == Some(false) && right_cycle_free(&cur) == Some(true) {
            let to = cur.reversed();
            steps.push(PipelineStep::Reverse { from: cur.clone(), to: to.clone() });
            cur = to;
        }
        if let Ok((map, to)) = collapse_generators(&cur) {
            if map.representatives.len() > 1 {
                steps.push(PipelineStep::Collapse { map, from: cur.clone(), to: to.clone() });
                cur = to;
            }
        }
    }
    ReductionPipeline { source: p.clone(), steps, result: cur }
}
