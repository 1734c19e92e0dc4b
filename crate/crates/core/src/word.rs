//! Letters and words over a finite alphabet.
//!
//! Letters are interned tokens: two letters are the same letter exactly when
//! they carry the same name. Interning makes [`Letter`] `Copy` and lets it
//! hash and compare by pointer, which keeps word manipulation cheap in the
//! search-heavy parts of the crate.

use std::collections::HashSet;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

static INTERNER: LazyLock<Mutex<HashSet<&'static str>>> =
    LazyLock::new(|| Mutex::new(HashSet::new()));

fn intern(name: &str) -> &'static str {
    let mut table = INTERNER.lock().expect("letter interner poisoned");
    if let Some(existing) = table.get(name) {
        return existing;
    }
    let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
    table.insert(leaked);
    leaked
}

/// Returns true if `name` is a legal letter identifier: an ASCII letter or
/// underscore followed by ASCII alphanumerics or underscores.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A single alphabet symbol.
#[derive(Clone, Copy)]
pub struct Letter(&'static str);

impl Letter {
    /// Creates (or looks up) the letter with the given name.
    pub fn new(name: &str) -> Result<Self, Error> {
        if !is_identifier(name) {
            return Err(Error::InvalidLetter(name.to_owned()));
        }
        Ok(Letter(intern(name)))
    }

    /// Like [`Letter::new`] but panics on an invalid name. Meant for names
    /// built by the crate itself and for tests.
    pub fn named(name: &str) -> Self {
        Self::new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn name(self) -> &'static str {
        self.0
    }

    fn addr(self) -> usize {
        self.0.as_ptr() as usize
    }
}

impl PartialEq for Letter {
    fn eq(&self, other: &Self) -> bool {
        self.addr() == other.addr()
    }
}

impl Eq for Letter {}

impl std::hash::Hash for Letter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.addr().hash(state);
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by name. Presentations use their own declared alphabet order.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(other.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A finite word, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from single-character letter names, e.g. `"baaba"`.
    /// The string `"1"` and the empty string give the empty word.
    pub fn chars(text: &str) -> Self {
        if text == "1" {
            return Word::empty();
        }
        Word(
            text.chars()
                .map(|c| Letter::named(c.encode_utf8(&mut [0u8; 4])))
                .collect(),
        )
    }

    /// Parses a word without reference to an alphabet: tokens separated by
    /// `.` when present, otherwise one letter per character. `1` is the
    /// empty word.
    pub fn parse_free(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains('.') {
            text.split('.').map(Letter::new).collect::<Result<_, _>>().map(Word)
        } else {
            text.chars()
                .map(|c| Letter::new(c.encode_utf8(&mut [0u8; 4])))
                .collect::<Result<_, _>>()
                .map(Word)
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// The factor `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, self.len())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    /// True if `other` occurs in `self` at position `pos`.
    pub fn occurs_at(&self, other: &Word, pos: usize) -> bool {
        pos + other.len() <= self.len() && self.0[pos..pos + other.len()] == other.0[..]
    }

    /// All start positions of occurrences of `other`, overlapping ones
    /// included. The empty word occurs at every position.
    pub fn occurrences(&self, other: &Word) -> Vec<usize> {
        if other.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - other.len())
            .filter(|&p| self.occurs_at(other, p))
            .collect()
    }

    pub fn find(&self, other: &Word) -> Option<usize> {
        if other.len() > self.len() {
            return None;
        }
        (0..=self.len() - other.len()).find(|&p| self.occurs_at(other, p))
    }

    pub fn contains(&self, other: &Word) -> bool {
        self.find(other).is_some()
    }

    /// Replaces the factor `[pos, pos + len)` by `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() - len + with.len());
        letters.extend_from_slice(&self.0[..pos]);
        letters.extend_from_slice(&with.0);
        letters.extend_from_slice(&self.0[pos + len..]);
        Word(letters)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    /// Length of the longest common suffix.
    pub fn common_suffix_len(&self, other: &Word) -> usize {
        self.0
            .iter()
            .rev()
            .zip(other.0.iter().rev())
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Occurrence count of every letter of `alphabet`, in alphabet order.
    pub fn letter_counts(&self, alphabet: &[Letter]) -> Vec<usize> {
        alphabet
            .iter()
            .map(|a| self.0.iter().filter(|l| *l == a).count())
            .collect()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Applies a letter substitution.
    pub fn map(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }

    fn single_char_letters(&self) -> bool {
        self.0.iter().all(|l| l.name().chars().count() == 1)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Juxtaposes single-character letters and separates longer names with
/// `.`; the empty word renders as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let sep = if self.single_char_letters() { "" } else { "." };
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(l.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Words over single-character letters serialize as their string form,
/// other words as a list of letter names.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.single_char_letters() {
            s.collect_str(self)
        } else {
            s.collect_seq(self.0.iter().map(|l| l.name()))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WordRepr {
    Text(String),
    Letters(Vec<String>),
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match WordRepr::deserialize(d)? {
            WordRepr::Text(text) => Word::parse_free(&text),
            WordRepr::Letters(names) => names.iter().map(|n| Letter::new(n)).collect(),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Letter::new(&text).map_err(serde::de::Error::custom)
    }
}

/// Length of the longest proper border (a nonempty proper prefix that is
/// also a suffix) of `w`, via the prefix function.
pub(crate) fn longest_border(w: &[Letter]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let mut pi = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut k = pi[i - 1];
        while k > 0 && w[i] != w[k] {
            k = pi[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi[w.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_compare_by_name() {
        assert_eq!(Letter::named("x_ba"), Letter::named("x_ba"));
        assert_ne!(Letter::named("a"), Letter::named("b"));
        assert!(Letter::new("1").is_err());
        assert!(Letter::new("e3").is_ok());
    }

    #[test]
    fn render_round_trips() {
        let w = Word::chars("baaba");
        assert_eq!(w.to_string(), "baaba");
        assert_eq!(Word::parse_free("baaba").unwrap(), w);
        let e = Word::from_letters(vec![Letter::named("e3"), Letter::named("e5")]);
        assert_eq!(e.to_string(), "e3.e5");
        assert_eq!(Word::parse_free("e3.e5").unwrap(), e);
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn reverse_is_involution() {
        let w = Word::chars("abbab");
        assert_eq!(w.reversed().reversed(), w);
        assert_eq!(w.reversed(), Word::chars("babba"));
    }

    #[test]
    fn letter_counts_examples() {
        let ab = [Letter::named("a"), Letter::named("b")];
        assert_eq!(Word::chars("ababa").letter_counts(&ab), vec![3, 2]);
        assert_eq!(Word::chars("babba").count(Letter::named("b")), 3);
        assert_eq!(Word::empty().letter_counts(&ab), vec![0, 0]);
    }

    #[test]
    fn borders() {
        assert_eq!(longest_border(Word::chars("abbaab").letters()), 2);
        assert_eq!(longest_border(Word::chars("ab").letters()), 0);
        assert_eq!(longest_border(Word::chars("aaa").letters()), 2);
    }
}
