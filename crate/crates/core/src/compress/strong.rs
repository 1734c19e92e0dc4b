//! Strong compression: when both relation sides share a first letter and a
//! last letter, every word is re-read as its sequence of length-`k` windows.

use serde::{Deserialize, Serialize};

use super::{lift_trace, Recurse};
use crate::classify::{left_cycle_free, right_cycle_free};
use crate::presentation::Presentation;
use crate::verdict::{Certificate, Confidence, Verdict};
use crate::word::{Letter, Word};

/// `(C, D, k)` for a presentation with left and right cycles: the longest
/// common prefix and suffix of the sides and `k = 1 + min(|C|, |D|)`.
/// `None` when either cycle is missing or a side is shorter than `k`.
pub fn parameters(p: &Presentation) -> Option<(Word, Word, usize)> {
    let (lhs, rhs) = (p.lhs(), p.rhs());
    if rhs.is_empty() || p.is_trivial_relation() {
        return None;
    }
    if left_cycle_free(p)? || right_cycle_free(p)? {
        return None;
    }
    let c = lhs.prefix(lhs.common_prefix_len(rhs));
    let d = lhs.suffix(lhs.common_suffix_len(rhs));
    let k = 1 + c.len().min(d.len());
    if rhs.len() < k {
        return None;
    }
    Some((c, d, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCompression {
    pub source: Presentation,
    pub common_prefix: Word,
    pub common_suffix: Word,
    pub k: usize,
    pub m_tau: Presentation,
    /// True if `τ(lhs)` became the right-hand side of `m_tau`.
    pub swapped: bool,
}

/// 1-based index of a window among all words of its length, ordered
/// lexicographically by the alphabet order.
pub fn window_index(alphabet: &[Letter], window: &[Letter]) -> Option<u128> {
    let m = alphabet.len() as u128;
    let mut idx: u128 = 0;
    for l in window {
        let digit = alphabet.iter().position(|a| a == l)? as u128;
        idx = idx.checked_mul(m)?.checked_add(digit)?;
    }
    idx.checked_add(1)
}

pub fn window_letter(index: u128) -> Letter {
    Letter::named(&format!("e{index}"))
}

/// `τ_k(w)`: the windows of `w` of length `k`, left to right.
pub fn tau(alphabet: &[Letter], k: usize, w: &Word) -> Option<Word> {
    if w.len() < k {
        return Some(Word::empty());
    }
    w.letters()
        .windows(k)
        .map(|win| window_index(alphabet, win).map(window_letter))
        .collect()
}

/// The window letters determine the word when it is at least `k` long.
pub fn untau(alphabet: &[Letter], k: usize, t: &Word) -> Option<Word> {
    let m = alphabet.len() as u128;
    let digits = |l: Letter| -> Option<Vec<Letter>> {
        let mut idx: u128 = l.name().strip_prefix('e')?.parse::<u128>().ok()?.checked_sub(1)?;
        let mut out = vec![alphabet[0]; k];
        for slot in out.iter_mut().rev() {
            *slot = alphabet[(idx % m) as usize];
            idx /= m;
        }
        (idx == 0).then_some(out)
    };
    let mut letters = digits(*t.letters().first()?)?;
    for &l in &t.letters()[1..] {
        let win = digits(l)?;
        if win[..k - 1] != letters[letters.len() - (k - 1)..] {
            return None;
        }
        letters.push(win[k - 1]);
    }
    Some(Word::from_letters(letters))
}

pub fn strong_compress(p: &Presentation) -> Option<StrongCompression> {
    let (c, d, k) = parameters(p)?;
    let tl = tau(p.alphabet(), k, p.lhs())?;
    let tr = tau(p.alphabet(), k, p.rhs())?;
    let mut used: Vec<(u128, Letter)> = tl
        .letters()
        .iter()
        .chain(tr.letters())
        .map(|l| (l.name()[1..].parse().unwrap(), *l))
        .collect();
    used.sort();
    used.dedup();
    let alphabet = used.into_iter().map(|(_, l)| l).collect();
    let m_tau = Presentation::new(alphabet, tl.clone(), tr).ok()?;
    let swapped = m_tau.lhs() != &tl;
    Some(StrongCompression { source: p.clone(), common_prefix: c, common_suffix: d, k, m_tau, swapped })
}

impl StrongCompression {
    pub fn tau(&self, w: &Word) -> Option<Word> {
        tau(self.source.alphabet(), self.k, w)
    }

    /// Decides `u = v` in the source presentation through `M_τ`.
    ///
    /// A word shorter than the right-hand side contains no relation side, so
    /// its class is a singleton. Otherwise an elementary step at position `i`
    /// of a word corresponds to one at position `i` of its window word,
    /// because the sides agree on their first and last `k - 1` letters.
    pub fn decide(&self, u: &Word, v: &Word, recurse: &mut Recurse<'_>) -> Verdict {
        if u == v {
            return Verdict::identical();
        }
        let short = self.source.rhs().len();
        if u.len() < short || v.len() < short {
            return Verdict::invariant(format!(
                "a word shorter than {} has a singleton class",
                self.source.rhs()
            ));
        }
        let (Some(tu), Some(tv)) = (self.tau(u), self.tau(v)) else {
            return Verdict::unsupported("window index overflow");
        };
        let mut extra: Vec<Letter> = Vec::new();
        for &l in tu.letters().iter().chain(tv.letters()) {
            if !self.m_tau.contains_letter(l) && !extra.contains(&l) {
                extra.push(l);
            }
        }
        let inner_p = self.m_tau.with_extra_letters(&extra);
        let inner = recurse(&inner_p, &tu, &tv);
        if let Some(trace) = inner.trace() {
            let alphabet = self.source.alphabet();
            let lifted = lift_trace(&inner_p, trace, self.swapped, |_, pos| pos, |w| {
                untau(alphabet, self.k, w).unwrap_or_default()
            });
            if let Some(t) = lifted.filter(|t| t.verify(&self.source)) {
                return Verdict { certificate: Certificate::Derivation { trace: t }, ..inner };
            }
        }
        // Equality in M_τ implies equality in M; the converse direction is
        // the step correspondence above.
        let floor = if inner.outcome == crate::verdict::Outcome::Equal {
            Confidence::Reduced
        } else {
            Confidence::Sound
        };
        Verdict::reduced(format!("strong compression with k = {}", self.k), &inner_p, &tu, &tv, inner, floor)
    }
}
