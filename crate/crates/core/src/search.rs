//! Brute-force search over elementary transformations and the complete
//! deciders for equal-length and self-overlap free relations.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::classify::{is_self_overlap_free, UnionFind};
use crate::error::Error;
use crate::presentation::{Direction, ElementaryStep, Presentation, Trace};
use crate::verdict::{Certificate, Confidence, Verdict};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub max_word_length: usize,
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 200_000, max_word_length: 24, max_depth: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BfsResult {
    Equal { trace: Trace },
    /// The class of `word` was enumerated completely (`size` words) without
    /// meeting the other word.
    NotEqualClosed { word: Word, size: usize },
    Unknown { explored: usize },
}

impl BfsResult {
    pub fn into_verdict(self) -> Verdict {
        match self {
            BfsResult::Equal { trace } => Verdict::derivation(trace),
            BfsResult::NotEqualClosed { word, size } => {
                Verdict::not_equal(Confidence::Sound, Certificate::ClosedClass { word, size })
            }
            BfsResult::Unknown { explored } => {
                Verdict::budget(format!("search budget exhausted after {explored} words"))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BfsResult::Equal { .. } => "equal",
            BfsResult::NotEqualClosed { .. } => "not_equal",
            BfsResult::Unknown { .. } => "unknown",
        }
    }
}

struct Side {
    parents: HashMap<Word, Option<(Word, ElementaryStep)>>,
    frontier: Vec<Word>,
    truncated: bool,
    depth: usize,
}

impl Side {
    fn new(w: &Word) -> Side {
        let mut parents = HashMap::new();
        parents.insert(w.clone(), None);
        Side { parents, frontier: vec![w.clone()], truncated: false, depth: 0 }
    }

    /// Derivation from the root of this side to `w`.
    fn path_to(&self, w: &Word) -> Trace {
        let mut steps = Vec::new();
        let mut cur = w.clone();
        while let Some(Some((parent, step))) = self.parents.get(&cur) {
            steps.push(*step);
            cur = parent.clone();
        }
        steps.reverse();
        Trace { start: cur, steps, end: w.clone() }
    }

    fn closed(&self) -> bool {
        self.frontier.is_empty() && !self.truncated
    }
}

/// Bidirectional breadth-first search between `u` and `v`.
pub fn bfs_decide(u: &Word, v: &Word, p: &Presentation, b: SearchBudget) -> BfsResult {
    if u == v {
        return BfsResult::Equal { trace: Trace::identity(u.clone()) };
    }
    let mut sides = [Side::new(u), Side::new(v)];
    loop {
        for (i, s) in sides.iter().enumerate() {
            if s.closed() {
                return BfsResult::NotEqualClosed {
                    word: if i == 0 { u.clone() } else { v.clone() },
                    size: s.parents.len(),
                };
            }
        }
        let explored = sides[0].parents.len() + sides[1].parents.len();
        let pick = match (sides[0].frontier.is_empty(), sides[1].frontier.is_empty()) {
            (true, true) => return BfsResult::Unknown { explored },
            (true, false) => 1,
            (false, true) => 0,
            _ => usize::from(sides[1].frontier.len() < sides[0].frontier.len()),
        };
        if sides[pick].depth >= b.max_depth {
            return BfsResult::Unknown { explored };
        }
        let (me, other) = if pick == 0 {
            let (a, c) = sides.split_at_mut(1);
            (&mut a[0], &c[0])
        } else {
            let (a, c) = sides.split_at_mut(1);
            (&mut c[0], &a[0])
        };
        me.depth += 1;
        let frontier = std::mem::take(&mut me.frontier);
        for w in frontier {
            for (step, next) in p.neighbours(&w) {
                if next.len() > b.max_word_length {
                    me.truncated = true;
                    continue;
                }
                if me.parents.contains_key(&next) {
                    continue;
                }
                me.parents.insert(next.clone(), Some((w.clone(), step)));
                if other.parents.contains_key(&next) {
                    let mine = me.path_to(&next);
                    let theirs = other.path_to(&next);
                    let trace = if pick == 0 {
                        mine.then(theirs.inverse())
                    } else {
                        theirs.then(mine.inverse())
                    };
                    return BfsResult::Equal { trace };
                }
                me.frontier.push(next);
                if me.parents.len() + other.parents.len() > b.max_nodes {
                    return BfsResult::Unknown { explored: me.parents.len() + other.parents.len() };
                }
            }
        }
    }
}

/// Complete decision for `|lhs| = |rhs|`: every class is finite.
pub fn equal_length_decide(u: &Word, v: &Word, p: &Presentation) -> Result<Verdict, Error> {
    if !p.is_equal_length() {
        return Err(Error::NotEqualLength);
    }
    p.check_word(u)?;
    p.check_word(v)?;
    if u.len() != v.len() {
        return Ok(Verdict::invariant("length is invariant and the lengths differ"));
    }
    let b = SearchBudget { max_nodes: usize::MAX, max_word_length: u.len(), max_depth: usize::MAX };
    Ok(bfs_decide(u, v, p, b).into_verdict())
}

/// Rewrites `w` to its normal form under `lhs → rhs`, always at the leftmost
/// redex, recording the derivation.
pub fn sof_normal_form(w: &Word, p: &Presentation) -> Trace {
    let lhs = p.lhs().letters();
    let rhs = p.rhs().letters();
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut input: VecDeque<Letter> = w.letters().iter().copied().collect();
    let mut steps = Vec::new();
    while let Some(l) = input.pop_front() {
        out.push(l);
        if out.len() >= lhs.len() && out[out.len() - lhs.len()..] == *lhs {
            let pos = out.len() - lhs.len();
            steps.push(ElementaryStep::new(pos, Direction::Forward));
            out.truncate(pos);
            // The right-hand side may complete a redex with letters to its
            // left, so it is fed back through the scanner.
            for &r in rhs.iter().rev() {
                input.push_front(r);
            }
            let back = out.len().min(lhs.len().saturating_sub(1));
            for _ in 0..back {
                input.push_front(out.pop().unwrap());
            }
        }
    }
    Trace { start: w.clone(), steps, end: Word::from_letters(out) }
}

/// Complete decision for a self-overlap free `lhs` longer than `rhs`: the
/// single rule `lhs → rhs` has no critical pairs and shortens words.
pub fn sof_rewrite_decide(u: &Word, v: &Word, p: &Presentation) -> Result<Verdict, Error> {
    if p.is_equal_length() || !is_self_overlap_free(p.lhs())? {
        return Err(Error::NotSofRule);
    }
    p.check_word(u)?;
    p.check_word(v)?;
    let tu = sof_normal_form(u, p);
    let tv = sof_normal_form(v, p);
    if tu.end == tv.end {
        Ok(Verdict::derivation(tu.then(tv.inverse())))
    } else {
        Ok(Verdict::not_equal(
            Confidence::Sound,
            Certificate::NormalForms { left: tu.end, right: tv.end },
        ))
    }
}

/// Answer of a [`BoundedCongruence`] lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtlasAnswer {
    Equal,
    NotEqual,
    Unknown,
}

/// The congruence restricted to all words up to a length cap, computed at
/// once with union-find.
///
/// Two words are equal under the cap exactly when bidirectional search with
/// that length cap and no node limit would meet; a component is closed when
/// no transformation leads out of the cap. This answers many queries on the
/// same presentation far faster than separate searches.
pub struct BoundedCongruence {
    p: Presentation,
    max_len: usize,
    bits: u32,
    offsets: Vec<usize>,
    sides: [(u64, usize); 2],
    parent: Vec<u32>,
    open: Vec<bool>,
}

/// Largest number of word slots a [`BoundedCongruence`] will allocate.
pub const ATLAS_MAX_SLOTS: usize = 1 << 24;

impl BoundedCongruence {
    pub fn build(p: &Presentation, max_len: usize) -> Option<BoundedCongruence> {
        let m = p.alphabet().len().max(2);
        let bits = usize::BITS - (m - 1).leading_zeros();
        if bits as usize * max_len > 60 {
            return None;
        }
        let mut offsets = Vec::with_capacity(max_len + 2);
        let mut total = 0usize;
        for len in 0..=max_len {
            offsets.push(total);
            total = total.checked_add(1usize << (bits as usize * len))?;
            if total > ATLAS_MAX_SLOTS {
                return None;
            }
        }
        offsets.push(total);
        let encode = |w: &Word| -> (u64, usize) {
            let mut v = 0u64;
            for &l in w.letters() {
                v = (v << bits) | p.index_of(l).unwrap() as u64;
            }
            (v, w.len())
        };
        let mut atlas = BoundedCongruence {
            p: p.clone(),
            max_len,
            bits,
            offsets,
            sides: [encode(p.lhs()), encode(p.rhs())],
            parent: Vec::new(),
            open: vec![false; total],
        };
        let mut uf = UnionFind::new(total);
        let grow = p.lhs().len() - p.rhs().len();
        for len in 0..=max_len {
            for value in 0..(1u64 << (bits as usize * len)) {
                if !atlas.valid(value, len) {
                    continue;
                }
                let idx = atlas.offsets[len] + value as usize;
                for (next, next_len, dir) in atlas.moves(value, len) {
                    if dir == Direction::Forward {
                        uf.union(idx, atlas.offsets[next_len] + next as usize);
                    } else if len + grow > max_len {
                        atlas.open[idx] = true;
                    }
                }
            }
        }
        let mut parent = vec![0u32; total];
        let mut open_root = vec![false; total];
        for (i, slot) in parent.iter_mut().enumerate() {
            let r = uf.find(i);
            *slot = r as u32;
            open_root[r] |= atlas.open[i];
        }
        atlas.parent = parent;
        atlas.open = open_root;
        Some(atlas)
    }

    fn valid(&self, value: u64, len: usize) -> bool {
        let m = self.p.alphabet().len() as u64;
        if m.is_power_of_two() || m < 2 {
            return m >= 2 || value == 0;
        }
        let mask = (1u64 << self.bits) - 1;
        (0..len).all(|i| (value >> (i as u32 * self.bits)) & mask < m)
    }

    /// Forward moves stay within the cap; backward moves are reported only
    /// by direction (their target may exceed the cap).
    fn moves(&self, value: u64, len: usize) -> Vec<(u64, usize, Direction)> {
        let b = self.bits as usize;
        let mut out = Vec::new();
        for (dir, (from, flen), (to, tlen)) in [
            (Direction::Forward, self.sides[0], self.sides[1]),
            (Direction::Backward, self.sides[1], self.sides[0]),
        ] {
            if flen > len || (flen == 0 && dir == Direction::Backward && len + tlen > self.max_len) {
                if flen == 0 && dir == Direction::Backward {
                    out.push((0, usize::MAX, dir));
                }
                continue;
            }
            let fmask = if flen == 0 { 0 } else { (1u64 << (b * flen)) - 1 };
            for i in 0..=len - flen {
                let rest = len - i - flen;
                if (value >> (b * rest)) & fmask != from {
                    continue;
                }
                let new_len = len - flen + tlen;
                if new_len > self.max_len {
                    out.push((0, usize::MAX, dir));
                    continue;
                }
                let prefix = if i == 0 { 0 } else { value >> (b * (len - i)) };
                let suffix = value & ((1u64 << (b * rest)) - 1);
                let next = (((prefix << (b * tlen)) | to) << (b * rest)) | suffix;
                out.push((next, new_len, dir));
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        let mut v = 0u64;
        for &l in w.letters() {
            v = (v << self.bits) | self.p.index_of(l)? as u64;
        }
        Some(self.offsets[w.len()] + v as usize)
    }

    pub fn word_at(&self, idx: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        let value = (idx - self.offsets[len]) as u64;
        let mask = (1u64 << self.bits) - 1;
        (0..len)
            .rev()
            .map(|i| self.p.alphabet()[((value >> (i as u32 * self.bits)) & mask) as usize])
            .collect()
    }

    pub fn decide(&self, u: &Word, v: &Word) -> AtlasAnswer {
        let (Some(iu), Some(iv)) = (self.index_of(u), self.index_of(v)) else {
            return AtlasAnswer::Unknown;
        };
        let (ru, rv) = (self.parent[iu] as usize, self.parent[iv] as usize);
        if ru == rv {
            AtlasAnswer::Equal
        } else if !self.open[ru] || !self.open[rv] {
            AtlasAnswer::NotEqual
        } else {
            AtlasAnswer::Unknown
        }
    }

    /// Neighbours of a word inside the cap, in both directions.
    pub fn neighbours(&self, idx: usize) -> Vec<usize> {
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        let value = (idx - self.offsets[len]) as u64;
        let mut out: Vec<usize> = self
            .moves(value, len)
            .into_iter()
            .filter(|&(_, l, _)| l != usize::MAX)
            .map(|(next, l, _)| self.offsets[l] + next as usize)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn slots(&self) -> usize {
        self.parent.len()
    }

    pub fn is_valid_slot(&self, idx: usize) -> bool {
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        self.valid((idx - self.offsets[len]) as u64, len)
    }

    /// Fewest elementary transformations from each word to some word
    /// beginning with `x`, through words inside the cap. `u32::MAX` marks
    /// words with no such derivation.
    pub fn distance_to_prefix(&self, x: Letter) -> Vec<u32> {
        let xi = self.p.index_of(x).expect("letter in alphabet");
        let mut dist = vec![u32::MAX; self.slots()];
        let mut queue = VecDeque::new();
        for (idx, d) in dist.iter_mut().enumerate() {
            if self.is_valid_slot(idx) && self.word_at(idx).first() == Some(self.p.alphabet()[xi]) {
                *d = 0;
                queue.push_back(idx);
            }
        }
        while let Some(i) = queue.pop_front() {
            for j in self.neighbours(i) {
                if dist[j] == u32::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}
