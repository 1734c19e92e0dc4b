//! Structural classification of one-relation presentations.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::compress::{strong, weak};
use crate::error::Error;
use crate::presentation::Presentation;
use crate::units::sof_code;
use crate::word::{longest_border, Letter, Word};

/// Undirected multigraph on the alphabet. Loops and parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideGraph {
    pub vertices: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

impl SideGraph {
    /// True unless the graph is a forest.
    pub fn has_cycle(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        let index: HashMap<Letter, usize> =
            self.vertices.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        self.edges.iter().any(|(a, b)| !uf.union(index[a], index[b]))
    }

    /// Connected components, each listed in alphabet order; components are
    /// ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<Letter>> {
        let mut uf = UnionFind::new(self.vertices.len());
        let index: HashMap<Letter, usize> =
            self.vertices.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        for (a, b) in &self.edges {
            uf.union(index[a], index[b]);
        }
        let mut groups: Vec<Vec<Letter>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (i, &l) in self.vertices.iter().enumerate() {
            let root = uf.find(i);
            let g = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(l);
        }
        groups
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Left and right graphs for a list of relations. Multi-relation input is
/// accepted here only so that small multi-relation examples can be drawn.
pub fn side_graphs_of(
    alphabet: &[Letter],
    relations: &[(Word, Word)],
) -> Result<(SideGraph, SideGraph), Error> {
    let mut left = SideGraph { vertices: alphabet.to_vec(), edges: Vec::new() };
    let mut right = left.clone();
    for (u, v) in relations {
        let (Some(uf), Some(vf), Some(ul), Some(vl)) = (u.first(), v.first(), u.last(), v.last())
        else {
            return Err(Error::Special);
        };
        for l in [uf, vf] {
            if !alphabet.contains(&l) {
                return Err(Error::UndeclaredLetter(l.name().to_owned()));
            }
        }
        left.edges.push((uf, vf));
        right.edges.push((ul, vl));
    }
    Ok((left, right))
}

/// The left graph and the right graph of `p`.
pub fn side_graphs(p: &Presentation) -> Result<(SideGraph, SideGraph), Error> {
    side_graphs_of(p.alphabet(), &[(p.lhs().clone(), p.rhs().clone())])
}

pub fn left_cycle_free(p: &Presentation) -> Option<bool> {
    Some(p.lhs().first()? != p.rhs().first()?)
}

pub fn right_cycle_free(p: &Presentation) -> Option<bool> {
    Some(p.lhs().last()? != p.rhs().last()?)
}

/// No nonempty proper prefix of `w` is also a suffix.
pub fn is_self_overlap_free(w: &Word) -> Result<bool, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(longest_border(w.letters()) == 0)
}

/// `w` is not a proper power. Uses the fact that `w` is a proper power iff
/// it occurs in `ww` at a position strictly between `0` and `|w|`.
pub fn is_primitive(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let ww = w.concat(w);
    !(1..w.len()).any(|i| ww.occurs_at(w, i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallOverlap {
    pub pieces: Vec<Word>,
    /// Largest `n` with C(n); `None` when no relation word is a product of
    /// pieces, so C(n) holds for every `n`.
    pub index: Option<usize>,
}

/// Pieces of the relation and its small-overlap index.
///
/// A piece is a nonempty factor that occurs at two or more distinct places
/// in the relation words; the two sides count as different words even when
/// graphically equal.
pub fn small_overlap_index(p: &Presentation) -> Result<SmallOverlap, Error> {
    if p.is_special() {
        return Err(Error::Special);
    }
    let words = [p.lhs(), p.rhs()];
    let mut counts: HashMap<&[Letter], usize> = HashMap::new();
    for w in words {
        let l = w.letters();
        for i in 0..l.len() {
            for j in i + 1..=l.len() {
                *counts.entry(&l[i..j]).or_default() += 1;
            }
        }
    }
    let piece_set: HashSet<&[Letter]> =
        counts.iter().filter(|(_, &c)| c >= 2).map(|(k, _)| *k).collect();
    let mut pieces: Vec<Word> = piece_set.iter().map(|s| Word::from_letters(s.to_vec())).collect();
    pieces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut index: Option<usize> = None;
    for w in words {
        let l = w.letters();
        let mut best: Vec<Option<usize>> = vec![None; l.len() + 1];
        best[0] = Some(0);
        for j in 1..=l.len() {
            best[j] = (0..j)
                .filter(|&i| piece_set.contains(&l[i..j]))
                .filter_map(|i| best[i].map(|b| b + 1))
                .min();
        }
        if let Some(n) = best[l.len()] {
            index = Some(index.map_or(n, |m| m.min(n)));
        }
    }
    Ok(SmallOverlap { pieces, index })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// `lhs = (uv)^m u` and `rhs = (uv)^n u` with `uv` primitive and `m > n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionWitness {
    pub u: Word,
    pub v: Word,
    pub m: usize,
    pub n: usize,
}

impl TorsionWitness {
    pub fn sides(&self) -> (Word, Word) {
        let uv = self.u.concat(&self.v);
        let power = |e: usize| {
            let mut w = Word::empty();
            for _ in 0..e {
                w = w.concat(&uv);
            }
            w.concat(&self.u)
        };
        (power(self.m), power(self.n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongParameters {
    pub common_prefix: Word,
    pub common_suffix: Word,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub left_cycle_free: Option<bool>,
    pub right_cycle_free: Option<bool>,
    pub special: bool,
    pub subspecial: bool,
    pub monadic: bool,
    pub equal_length: bool,
    pub lhs_sof: bool,
    pub torsion: Option<TorsionWitness>,
    pub has_nontrivial_idempotent: Tri,
    pub group_sufficient: Tri,
    pub small_overlap_index: Option<usize>,
    pub small_overlap_unbounded: bool,
    pub weak_compressible: Option<Word>,
    pub strong_compressible: Option<StrongParameters>,
}

/// `lhs` starts and ends with `rhs`, both nonempty and distinct.
pub fn is_subspecial(p: &Presentation) -> bool {
    !p.is_special()
        && !p.is_trivial_relation()
        && p.lhs().starts_with(p.rhs())
        && p.lhs().ends_with(p.rhs())
}

/// The relation is `bua = a` or `aub = a` for distinct letters `a`, `b`.
pub fn is_monadic(p: &Presentation) -> bool {
    let (lhs, rhs) = (p.lhs(), p.rhs());
    if rhs.len() != 1 || lhs.len() < 2 {
        return false;
    }
    let x = rhs.letters()[0];
    let (f, l) = (lhs.first().unwrap(), lhs.last().unwrap());
    (f != x && l == x) || (f == x && l != x)
}

/// Searches for the torsion shape `(uv)^m u = (uv)^n u`.
pub fn torsion_witness(p: &Presentation) -> Option<TorsionWitness> {
    let (lhs, rhs) = (p.lhs(), p.rhs());
    for period in 1..=lhs.len() {
        let uv = lhs.prefix(period);
        if !is_primitive(&uv) {
            continue;
        }
        for ulen in 0..period {
            if (lhs.len() - ulen) % period != 0 || rhs.len() < ulen {
                continue;
            }
            if (rhs.len() - ulen) % period != 0 {
                continue;
            }
            let w = TorsionWitness {
                u: uv.prefix(ulen),
                v: uv.suffix(period - ulen),
                m: (lhs.len() - ulen) / period,
                n: (rhs.len() - ulen) / period,
            };
            if w.m > w.n && w.sides() == (lhs.clone(), rhs.clone()) {
                return Some(w);
            }
        }
    }
    None
}

/// Sufficient test for a special presentation to define a group: the code
/// of the relator consists of single letters covering the whole alphabet.
pub fn group_sufficient(p: &Presentation) -> Tri {
    if !p.is_special() {
        return Tri::Unknown;
    }
    let code = sof_code(p.lhs());
    let letters: HashSet<Letter> =
        code.words.iter().filter(|w| w.len() == 1).map(|w| w.letters()[0]).collect();
    if code.words.iter().all(|w| w.len() == 1)
        && p.alphabet().iter().all(|l| letters.contains(l))
    {
        Tri::Yes
    } else {
        Tri::Unknown
    }
}

/// Idempotents exist exactly for special or subspecial monoids that are not
/// groups. A special monoid is a group only if every letter is invertible,
/// which fails when a letter is missing from the relator or when a code word
/// of the relator has length at least two.
fn idempotents(p: &Presentation, subspecial: bool, group: Tri) -> Tri {
    if p.is_special() {
        if group == Tri::Yes {
            return Tri::No;
        }
        let code = sof_code(p.lhs());
        let all_letters = p.alphabet().iter().all(|l| p.lhs().count(*l) > 0);
        if !all_letters || code.words.iter().any(|w| w.len() > 1) {
            Tri::Yes
        } else {
            Tri::Unknown
        }
    } else if subspecial {
        Tri::Yes
    } else {
        Tri::No
    }
}

pub fn classify(p: &Presentation) -> Classification {
    let subspecial = is_subspecial(p);
    let group = group_sufficient(p);
    let overlap = small_overlap_index(p).ok();
    Classification {
        left_cycle_free: left_cycle_free(p),
        right_cycle_free: right_cycle_free(p),
        special: p.is_special(),
        subspecial,
        monadic: is_monadic(p),
        equal_length: p.is_equal_length(),
        lhs_sof: is_self_overlap_free(p.lhs()).unwrap_or(false),
        torsion: torsion_witness(p),
        has_nontrivial_idempotent: idempotents(p, subspecial, group),
        group_sufficient: group,
        small_overlap_index: overlap.as_ref().and_then(|o| o.index),
        small_overlap_unbounded: overlap.as_ref().is_some_and(|o| o.index.is_none()),
        weak_compressible: weak::find_alpha(p, weak::AlphaChoice::Longest),
        strong_compressible: strong::parameters(p).map(|(c, d, k)| StrongParameters {
            common_prefix: c,
            common_suffix: d,
            k,
        }),
    }
}
