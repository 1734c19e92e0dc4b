//! Weak compression: a self-overlap free word `α` that is a prefix and a
//! suffix of both relation sides lets every word of `αA* ∩ A*α` be read as a
//! sequence of blocks from `Σ(α) = α(A* \ A*αA*)`.

use serde::{Deserialize, Serialize};

use super::{fresh_name, lift_trace, Recurse};
use crate::classify::is_self_overlap_free;
use crate::presentation::Presentation;
use crate::verdict::{Confidence, Verdict};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaChoice {
    #[default]
    Longest,
    Shortest,
}

/// The longest (or shortest) self-overlap free `α` dividing both sides on
/// both ends.
pub fn find_alpha(p: &Presentation, choice: AlphaChoice) -> Option<Word> {
    let (lhs, rhs) = (p.lhs(), p.rhs());
    if rhs.is_empty() || p.is_trivial_relation() {
        return None;
    }
    let fits = |len: usize| {
        let a = lhs.prefix(len);
        rhs.starts_with(&a)
            && lhs.ends_with(&a)
            && rhs.ends_with(&a)
            && is_self_overlap_free(&a).unwrap_or(false)
    };
    let max = rhs.len();
    match choice {
        AlphaChoice::Longest => (1..=max).rev().find(|&l| fits(l)),
        AlphaChoice::Shortest => (1..=max).find(|&l| fits(l)),
    }
    .map(|l| lhs.prefix(l))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakCompression {
    pub source: Presentation,
    pub alpha: Word,
    /// Block (including its leading `α`) and the letter standing for it,
    /// in order of first occurrence.
    pub letter_map: Vec<(Word, Letter)>,
    pub left_monoid: Presentation,
    /// True if `ψ(lhs)` became the right-hand side of the left monoid.
    pub swapped: bool,
}

/// Splits a word of `αA* ∩ A*α` into its `Σ(α)` blocks; the trailing `α` is
/// dropped. `None` if `w` does not start and end with `α`.
pub fn sigma_blocks(alpha: &Word, w: &Word) -> Option<Vec<Word>> {
    if !w.starts_with(alpha) || !w.ends_with(alpha) {
        return None;
    }
    let occ = w.occurrences(alpha);
    Some(occ.windows(2).map(|p| w.slice(p[0], p[1])).collect())
}

fn block_name(alpha: &Word, block: &Word, index: usize, single_char: bool) -> String {
    if single_char {
        let content: String =
            block.letters()[alpha.len()..].iter().map(|l| l.name()).collect();
        format!("x_{content}")
    } else {
        format!("x{}", index + 1)
    }
}

pub fn weak_compress(p: &Presentation) -> Option<WeakCompression> {
    weak_compress_with(p, AlphaChoice::Longest)
}

pub fn weak_compress_with(p: &Presentation, choice: AlphaChoice) -> Option<WeakCompression> {
    let alpha = find_alpha(p, choice)?;
    let single_char = p.alphabet().iter().all(|l| l.name().len() == 1);
    let mut letter_map: Vec<(Word, Letter)> = Vec::new();
    let encode = |w: &Word, map: &mut Vec<(Word, Letter)>| -> Word {
        sigma_blocks(&alpha, w)
            .expect("relation sides start and end with alpha")
            .into_iter()
            .map(|b| match map.iter().find(|(k, _)| *k == b) {
                Some((_, l)) => *l,
                None => {
                    let taken: Vec<Letter> = map.iter().map(|(_, l)| *l).collect();
                    let l = fresh_name(&block_name(&alpha, &b, map.len(), single_char), &taken);
                    map.push((b, l));
                    l
                }
            })
            .collect()
    };
    let left = encode(p.lhs(), &mut letter_map);
    let right = encode(p.rhs(), &mut letter_map);
    let alphabet: Vec<Letter> = letter_map.iter().map(|(_, l)| *l).collect();
    let left_monoid = Presentation::new(alphabet, left.clone(), right).ok()?;
    let swapped = left_monoid.lhs() != &left;
    Some(WeakCompression { source: p.clone(), alpha, letter_map, left_monoid, swapped })
}

impl WeakCompression {
    pub fn letter_of(&self, block: &Word) -> Option<Letter> {
        self.letter_map.iter().find(|(b, _)| b == block).map(|(_, l)| *l)
    }

    /// `ψ_α` on a word of `αA* ∩ A*α`. Blocks missing from the relation get
    /// fresh letters, recorded in `extra`.
    pub fn encode(&self, w: &Word, extra: &mut Vec<(Word, Letter)>) -> Option<Word> {
        let single_char = self.source.alphabet().iter().all(|l| l.name().len() == 1);
        let blocks = sigma_blocks(&self.alpha, w)?;
        Some(
            blocks
                .into_iter()
                .map(|b| {
                    if let Some(l) = self.letter_of(&b) {
                        return l;
                    }
                    if let Some((_, l)) = extra.iter().find(|(k, _)| *k == b) {
                        return *l;
                    }
                    let taken: Vec<Letter> =
                        self.letter_map.iter().chain(extra.iter()).map(|(_, l)| *l).collect();
                    let n = taken.len();
                    let l = fresh_name(&block_name(&self.alpha, &b, n, single_char), &taken);
                    extra.push((b, l));
                    l
                })
                .collect(),
        )
    }

    fn block_of(&self, l: Letter, extra: &[(Word, Letter)]) -> Word {
        self.letter_map
            .iter()
            .chain(extra)
            .find(|(_, k)| *k == l)
            .map(|(b, _)| b.clone())
            .expect("letter comes from the block map")
    }

    /// Inverse of [`WeakCompression::encode`]: re-expands blocks and appends
    /// the trailing `α`.
    pub fn decode(&self, x: &Word, extra: &[(Word, Letter)]) -> Word {
        let mut out = Word::empty();
        for &l in x.letters() {
            out = out.concat(&self.block_of(l, extra));
        }
        out.concat(&self.alpha)
    }

    /// Decides `u = v` in the source presentation through the left monoid.
    ///
    /// Occurrences of `α` cannot be created or destroyed at the outer ends:
    /// both relation sides begin and end with `α`, which has no self-overlap.
    /// So the part before the first `α` and after the last `α` is invariant,
    /// and the middle is solved in the left monoid.
    pub fn decide(&self, u: &Word, v: &Word, recurse: &mut Recurse<'_>) -> Verdict {
        if u == v {
            return Verdict::identical();
        }
        let (fu, fv) = (u.find(&self.alpha), v.find(&self.alpha));
        let (Some(fu), Some(fv)) = (fu, fv) else {
            return if fu.is_none() && fv.is_none() {
                Verdict::invariant(format!("neither word contains {}; both classes are singletons", self.alpha))
            } else {
                Verdict::invariant(format!("exactly one word contains {}", self.alpha))
            };
        };
        let last = |w: &Word| *w.occurrences(&self.alpha).last().unwrap() + self.alpha.len();
        let (lu, lv) = (last(u), last(v));
        if u.prefix(fu) != v.prefix(fv) {
            return Verdict::invariant(format!("prefixes before the first {} differ", self.alpha));
        }
        if u.slice(lu, u.len()) != v.slice(lv, v.len()) {
            return Verdict::invariant(format!("suffixes after the last {} differ", self.alpha));
        }
        let (mu, mv) = (u.slice(fu, lu), v.slice(fv, lv));
        let mut extra = Vec::new();
        let xu = self.encode(&mu, &mut extra).expect("middle starts and ends with alpha");
        let xv = self.encode(&mv, &mut extra).expect("middle starts and ends with alpha");
        let new_letters: Vec<Letter> = extra.iter().map(|(_, l)| *l).collect();
        let inner_p = self.left_monoid.with_extra_letters(&new_letters);
        let inner = recurse(&inner_p, &xu, &xv);

        if let Some(trace) = inner.trace() {
            let prefix = u.prefix(fu);
            let suffix = u.slice(lu, u.len());
            let lifted = lift_trace(
                &inner_p,
                trace,
                self.swapped,
                |w, pos| {
                    let before: usize = w.letters()[..pos]
                        .iter()
                        .map(|&l| self.block_of(l, &extra).len())
                        .sum();
                    prefix.len() + before
                },
                |w| prefix.concat(&self.decode(w, &extra)).concat(&suffix),
            );
            if let Some(t) = lifted.filter(|t| t.verify(&self.source)) {
                return Verdict { certificate: crate::verdict::Certificate::Derivation { trace: t }, ..inner };
            }
        }
        Verdict::reduced(
            format!("weak compression by {}", self.alpha),
            &inner_p,
            &xu,
            &xv,
            inner,
            Confidence::Sound,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::sof_rewrite_decide;
    use crate::verdict::Outcome;

    fn w(s: &str) -> Word {
        Word::chars(s)
    }

    #[test]
    fn block_compression_example() {
        let p = Presentation::chars("ab", "abbaabbbabbbab", "abbaab").unwrap();
        let wc = weak_compress(&p).unwrap();
        assert_eq!(wc.alpha, w("ab"));
        assert_eq!(wc.left_monoid.to_string(), "x_ba,x_bb | x_ba.x_bb.x_bb = x_ba");
    }

    #[test]
    fn commutation_example() {
        let p = Presentation::chars("ab", "abaabbab", "abbabaab").unwrap();
        let wc = weak_compress(&p).unwrap();
        assert_eq!(wc.left_monoid.to_string(), "x_a,x_b | x_a.x_b = x_b.x_a");
    }

    #[test]
    fn not_compressible() {
        assert!(weak_compress(&Presentation::chars("ab", "aab", "ab").unwrap()).is_none());
    }

    #[test]
    fn encode_decode_round_trip() {
        let p = Presentation::chars("ab", "abaabbab", "abbabaab").unwrap();
        let wc = weak_compress(&p).unwrap();
        let mut extra = Vec::new();
        for s in ["ab", "abab", "abbbaab", "abaaab"] {
            let x = wc.encode(&w(s), &mut extra).unwrap();
            assert_eq!(wc.decode(&x, &extra), w(s));
        }
        assert!(wc.encode(&w("ba"), &mut extra).is_none());
    }

    #[test]
    fn decide_lifts_derivations() {
        let p = Presentation::chars("ab", "abbaabbbabbbab", "abbaab").unwrap();
        let wc = weak_compress(&p).unwrap();
        let mut rec = |q: &Presentation, a: &Word, b: &Word| sof_rewrite_decide(a, b, q).unwrap();
        let v = wc.decide(&w("babbaabbbabbbabb"), &w("babbaabb"), &mut rec);
        assert_eq!(v.outcome, Outcome::Equal);
        assert!(v.trace().unwrap().verify(&p));
        let v = wc.decide(&w("bb"), &w("abb"), &mut rec);
        assert_eq!(v.outcome, Outcome::NotEqual);
    }
}
