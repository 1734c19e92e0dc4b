//! One-relation presentations, elementary transformations and derivation
//! traces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::word::{Letter, Word};

/// A monoid presentation `⟨A | lhs = rhs⟩` with a single relation.
///
/// The relation is kept in canonical orientation: `lhs` is at least as long
/// as `rhs`, and on equal lengths `lhs` is the lexicographically smaller
/// side with respect to the declared alphabet order. Rewriting `lhs → rhs`
/// therefore never increases length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Vec<Letter>,
    lhs: Word,
    rhs: Word,
}

impl Presentation {
    /// Builds a presentation, checking letters and orienting the relation.
    pub fn new(alphabet: Vec<Letter>, u: Word, v: Word) -> Result<Self, Error> {
        for (i, l) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(l) {
                return Err(Error::DuplicateLetter(l.name().to_owned()));
            }
        }
        if u.is_empty() && v.is_empty() {
            return Err(Error::EmptyRelation);
        }
        for l in u.letters().iter().chain(v.letters()) {
            if !alphabet.contains(l) {
                return Err(Error::UndeclaredLetter(l.name().to_owned()));
            }
        }
        let mut p = Presentation { alphabet, lhs: u, rhs: v };
        if p.side_order(&p.lhs, &p.rhs) == Ordering::Less {
            std::mem::swap(&mut p.lhs, &mut p.rhs);
        }
        Ok(p)
    }

    /// Convenience constructor for single-character alphabets, e.g.
    /// `Presentation::chars("ab", "baaba", "aba")`.
    pub fn chars(alphabet: &str, u: &str, v: &str) -> Result<Self, Error> {
        let alphabet = Word::chars(alphabet).into_letters();
        Self::new(alphabet, Word::chars(u), Word::chars(v))
    }

    /// True if `(u, v)` would be stored swapped, i.e. `v` becomes the lhs.
    pub fn orientation_swaps(&self, u: &Word, v: &Word) -> bool {
        self.side_order(u, v) == Ordering::Less
    }

    /// `Greater` means `a` is the preferred left-hand side.
    fn side_order(&self, a: &Word, b: &Word) -> Ordering {
        match a.len().cmp(&b.len()) {
            Ordering::Equal => {
                let ka: Vec<_> = a.letters().iter().map(|&l| self.index_of(l)).collect();
                let kb: Vec<_> = b.letters().iter().map(|&l| self.index_of(l)).collect();
                kb.cmp(&ka)
            }
            other => other,
        }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    pub fn side(&self, direction: Direction) -> &Word {
        match direction {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    pub fn index_of(&self, letter: Letter) -> Option<usize> {
        self.alphabet.iter().position(|&l| l == letter)
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        self.alphabet.contains(&letter)
    }

    /// Checks that every letter of `w` is declared.
    pub fn check_word(&self, w: &Word) -> Result<(), Error> {
        match w.letters().iter().find(|l| !self.contains_letter(**l)) {
            Some(l) => Err(Error::UndeclaredLetter(l.name().to_owned())),
            None => Ok(()),
        }
    }

    pub fn is_special(&self) -> bool {
        self.rhs.is_empty()
    }

    pub fn is_equal_length(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }

    /// `lhs ≡ rhs`: the relation is trivial and the monoid is free.
    pub fn is_trivial_relation(&self) -> bool {
        self.lhs == self.rhs
    }

    /// The same relation read backwards.
    pub fn reversed(&self) -> Presentation {
        Presentation::new(self.alphabet.clone(), self.lhs.reversed(), self.rhs.reversed())
            .expect("reversal preserves validity")
    }

    /// Same relation over a larger alphabet; new letters are appended.
    pub fn with_extra_letters(&self, extra: &[Letter]) -> Presentation {
        let mut alphabet = self.alphabet.clone();
        for &l in extra {
            if !alphabet.contains(&l) {
                alphabet.push(l);
            }
        }
        Presentation { alphabet, lhs: self.lhs.clone(), rhs: self.rhs.clone() }
    }

    /// Applies one elementary transformation.
    pub fn apply_step(&self, w: &Word, step: ElementaryStep) -> Result<Word, Error> {
        let from = self.side(step.direction);
        let to = self.side(step.direction.flip());
        if !w.occurs_at(from, step.position) {
            return Err(Error::RejectedStep {
                word: w.to_string(),
                side: from.to_string(),
                position: step.position,
            });
        }
        Ok(w.splice(step.position, from.len(), to))
    }

    /// Every word reachable from `w` by one elementary transformation,
    /// paired with the step producing it.
    pub fn neighbours(&self, w: &Word) -> Vec<(ElementaryStep, Word)> {
        let mut out = Vec::new();
        for direction in [Direction::Forward, Direction::Backward] {
            let from = self.side(direction);
            let to = self.side(direction.flip());
            for position in w.occurrences(from) {
                out.push((
                    ElementaryStep { position, direction },
                    w.splice(position, from.len(), to),
                ));
            }
        }
        out
    }
}

/// Parses the text form `letters | word = word`.
///
/// Words are matched greedily against the declared letters; multi-character
/// letters may be separated by `.`; `1` is the empty word.
pub fn parse_presentation(text: &str) -> Result<Presentation, Error> {
    let (alpha_text, rel_text) = text
        .split_once('|')
        .ok_or_else(|| Error::Syntax(format!("missing `|` in `{}`", text.trim())))?;
    let mut alphabet = Vec::new();
    for name in alpha_text.split(',') {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Syntax("empty letter in alphabet list".into()));
        }
        alphabet.push(Letter::new(name)?);
    }
    let (u, v) = rel_text
        .split_once('=')
        .ok_or_else(|| Error::Syntax(format!("missing `=` in `{}`", rel_text.trim())))?;
    if v.contains('=') {
        return Err(Error::Syntax("exactly one relation expected".into()));
    }
    let u = parse_word(u, &alphabet)?;
    let v = parse_word(v, &alphabet)?;
    Presentation::new(alphabet, u, v)
}

/// Parses a word against an alphabet (see [`parse_presentation`]).
pub fn parse_word(text: &str, alphabet: &[Letter]) -> Result<Word, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Syntax("empty word (write `1` for the empty word)".into()));
    }
    if text == "1" {
        return Ok(Word::empty());
    }
    if text.chars().any(char::is_whitespace) {
        return Err(Error::Syntax(format!("whitespace inside word `{text}`")));
    }
    let mut letters = Vec::new();
    for chunk in text.split('.') {
        let mut rest = chunk;
        if rest.is_empty() {
            return Err(Error::Syntax(format!("empty token in `{text}`")));
        }
        while !rest.is_empty() {
            let best = alphabet
                .iter()
                .filter(|l| rest.starts_with(l.name()))
                .max_by_key(|l| l.name().len())
                .ok_or_else(|| Error::UndeclaredLetter(rest.to_owned()))?;
            letters.push(*best);
            rest = &rest[best.name().len()..];
        }
    }
    Ok(Word::from_letters(letters))
}

/// Reverses both relation sides; the left and right graphs trade places.
pub fn reverse_presentation(p: &Presentation) -> Presentation {
    p.reversed()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.alphabet.iter().map(|l| l.name()).collect();
        write!(f, "{} | {} = {}", names.join(","), self.lhs, self.rhs)
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_presentation(&text).map_err(serde::de::Error::custom)
    }
}

/// Which way a relation is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Replace an occurrence of `lhs` by `rhs`.
    Forward,
    /// Replace an occurrence of `rhs` by `lhs`.
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One elementary transformation: at `position`, replace the side named by
/// `direction` with the other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementaryStep {
    pub position: usize,
    pub direction: Direction,
}

impl ElementaryStep {
    pub fn new(position: usize, direction: Direction) -> Self {
        ElementaryStep { position, direction }
    }
}

/// A derivation `start → … → end` by elementary transformations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub start: Word,
    pub steps: Vec<ElementaryStep>,
    pub end: Word,
}

impl Trace {
    pub fn identity(w: Word) -> Trace {
        Trace { start: w.clone(), steps: Vec::new(), end: w }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps from `start`, returning every intermediate word
    /// (both endpoints included).
    pub fn replay(&self, p: &Presentation) -> Result<Vec<Word>, Error> {
        let mut words = vec![self.start.clone()];
        let mut cur = self.start.clone();
        for &step in &self.steps {
            cur = p.apply_step(&cur, step)?;
            words.push(cur.clone());
        }
        if cur != self.end {
            return Err(Error::Other(format!(
                "trace replay ends at `{cur}`, expected `{}`",
                self.end
            )));
        }
        Ok(words)
    }

    pub fn verify(&self, p: &Presentation) -> bool {
        self.replay(p).is_ok()
    }

    /// The derivation read backwards (`end → start`). Needs the
    /// presentation to know the length of each replaced side.
    pub fn inverse(&self) -> Trace {
        Trace {
            start: self.end.clone(),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| ElementaryStep::new(s.position, s.direction.flip()))
                .collect(),
            end: self.start.clone(),
        }
    }

    /// Concatenates two traces; `self.end` must equal `next.start`.
    pub fn then(mut self, next: Trace) -> Trace {
        debug_assert_eq!(self.end, next.start);
        self.steps.extend(next.steps);
        self.end = next.end;
        self
    }

    /// Lifts a derivation on `w` to the same derivation on
    /// `prefix · w · suffix`.
    pub fn embed(&self, prefix: &Word, suffix: &Word) -> Trace {
        Trace {
            start: prefix.concat(&self.start).concat(suffix),
            steps: self
                .steps
                .iter()
                .map(|s| ElementaryStep::new(s.position + prefix.len(), s.direction))
                .collect(),
            end: prefix.concat(&self.end).concat(suffix),
        }
    }

    /// The same derivation with every word reversed, for `p.reversed()`.
    /// `p` is the presentation the trace is valid for.
    pub fn reversed(&self, p: &Presentation) -> Result<Trace, Error> {
        let words = self.replay(p)?;
        let rev = p.reversed();
        let swapped = rev.lhs() != &p.lhs().reversed();
        let steps = self
            .steps
            .iter()
            .zip(&words)
            .map(|(s, w)| {
                let side_len = p.side(s.direction).len();
                let direction = if swapped { s.direction.flip() } else { s.direction };
                ElementaryStep::new(w.len() - s.position - side_len, direction)
            })
            .collect();
        Ok(Trace { start: self.start.reversed(), steps, end: self.end.reversed() })
    }
}
