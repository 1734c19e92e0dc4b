//! Special one-relation monoids `⟨A | w = 1⟩`: the self-overlap free code
//! `C(w)`, the group of units, and a word-problem solver driven by an
//! oracle for that group.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::presentation::Presentation;
use crate::verdict::{Certificate, Verdict};
use crate::word::{Letter, Word};

/// A finite set of words, kept sorted by length and then letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    pub words: Vec<Word>,
}

impl Code {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Code {
        let set: BTreeSet<(usize, Word)> = words.into_iter().map(|w| (w.len(), w)).collect();
        Code { words: set.into_iter().map(|(_, w)| w).collect() }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// No word is a proper prefix or a proper suffix of another.
    pub fn is_biprefix(&self) -> bool {
        self.words.iter().all(|x| {
            self.words
                .iter()
                .all(|y| x == y || !(y.starts_with(x) || y.ends_with(x)))
        })
    }
}

/// Splits `x = v·u`, `y = u·w` on their first overlap, if any. `v` and `w`
/// may be empty (one word is a prefix or suffix of the other) but not both.
fn find_overlap(x: &Word, y: &Word) -> Option<(Word, Word, Word)> {
    for ulen in (1..=x.len().min(y.len())).rev() {
        if ulen == x.len() && ulen == y.len() {
            continue;
        }
        if x.suffix(ulen) == y.prefix(ulen) {
            return Some((x.prefix(x.len() - ulen), x.suffix(ulen), y.suffix(y.len() - ulen)));
        }
    }
    None
}

/// Runs the overlap-splitting process with a caller-supplied choice of which
/// overlapping pair to split next. `pick` receives the number of available
/// pairs and returns an index.
pub fn sof_code_with(w: &Word, mut pick: impl FnMut(usize) -> usize) -> Code {
    let mut set: BTreeSet<Word> = BTreeSet::new();
    if !w.is_empty() {
        set.insert(w.clone());
    }
    loop {
        let words: Vec<&Word> = set.iter().collect();
        let mut pairs = Vec::new();
        for x in &words {
            for y in &words {
                if let Some(split) = find_overlap(x, y) {
                    pairs.push(((*x).clone(), (*y).clone(), split));
                }
            }
        }
        if pairs.is_empty() {
            break;
        }
        let (x, y, (v, u, rest)) = pairs.swap_remove(pick(pairs.len()) % pairs.len());
        set.remove(&x);
        set.remove(&y);
        for part in [v, u, rest] {
            if !part.is_empty() {
                set.insert(part);
            }
        }
    }
    Code::new(set)
}

/// The self-overlap free code generated by `w`.
pub fn sof_code(w: &Word) -> Code {
    sof_code_with(w, |_| 0)
}

/// The unique factorization of `w` over a prefix code.
pub fn factor_over_code(w: &Word, code: &Code) -> Result<Vec<Word>, Error> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let mut hits = code.words.iter().filter(|c| !c.is_empty() && w.occurs_at(c, pos));
        let hit = hits.next().ok_or(Error::NotFactorable(pos))?;
        if hits.next().is_some() {
            return Err(Error::Other(format!("code is not a prefix code at position {pos}")));
        }
        out.push(hit.clone());
        pos += hit.len();
    }
    Ok(out)
}

/// A one-relator group presentation `⟨x1..xn | r = 1⟩` with a positive
/// relator, together with the code word each generator stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<Letter>,
    pub relator: Word,
    pub code: Vec<Word>,
}

impl GroupPresentation {
    pub fn generator_index(&self, l: Letter) -> Option<usize> {
        self.generators.iter().position(|&g| g == l)
    }

    /// The relator as a signed generator sequence (`+i` for `x_i`).
    pub fn relator_symbols(&self) -> Vec<i32> {
        self.relator
            .letters()
            .iter()
            .map(|&l| self.generator_index(l).expect("relator letter is a generator") as i32 + 1)
            .collect()
    }

    /// Encodes a word of `C(w)*` as a signed generator sequence.
    pub fn encode(&self, w: &Word) -> Result<Vec<i32>, Error> {
        let code = Code::new(self.code.iter().cloned());
        factor_over_code(w, &code)?
            .iter()
            .map(|piece| {
                self.code
                    .iter()
                    .position(|c| c == piece)
                    .map(|i| i as i32 + 1)
                    .ok_or(Error::NotFactorable(0))
            })
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.generators.iter().map(|l| l.name()).collect();
        write!(f, "{} | {} = 1", names.join(","), self.relator)
    }
}

/// The group of units of a special presentation, presented over fresh
/// generators `x1, x2, …` numbered by first occurrence in `lhs`.
pub fn unit_group_presentation(p: &Presentation) -> Result<GroupPresentation, Error> {
    if !p.is_special() {
        return Err(Error::NotSpecial);
    }
    let code = sof_code(p.lhs());
    let factors = factor_over_code(p.lhs(), &code)?;
    let mut order: Vec<Word> = Vec::new();
    for f in factors.iter().chain(&code.words) {
        if !order.contains(f) {
            order.push(f.clone());
        }
    }
    let generators: Vec<Letter> =
        (1..=order.len()).map(|i| Letter::named(&format!("x{i}"))).collect();
    let relator = factors
        .iter()
        .map(|f| generators[order.iter().position(|o| o == f).unwrap()])
        .collect();
    Ok(GroupPresentation { generators, relator, code: order })
}

fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|g| -g).collect()
}

/// Free reduction of a signed generator sequence.
pub fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Decides whether a group word is the identity.
pub trait GroupOracle {
    fn describe(&self) -> String;
    /// The presentation the oracle was built for.
    fn presentation(&self) -> &GroupPresentation;
    /// `Some(true)` if `w` is the identity, `Some(false)` if not, `None` if
    /// the oracle cannot tell.
    fn is_identity(&self, w: &[i32]) -> Option<bool>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BuiltinGroup {
    /// Free on the generators other than `eliminated`, which equals the
    /// word `substitute` in the others.
    Free { eliminated: Option<usize>, substitute: Vec<i32>, rank: usize },
    /// `⟨x | x^n⟩` free product with the free group on the other generators.
    Cyclic { generator: usize, order: usize },
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltinOracle {
    pub group: BuiltinGroup,
    presentation: GroupPresentation,
}

impl GroupOracle for BuiltinOracle {
    fn describe(&self) -> String {
        match &self.group {
            BuiltinGroup::Free { rank, .. } => format!("free group of rank {rank}"),
            BuiltinGroup::Cyclic { order, .. } => {
                let others = self.presentation.generators.len() - 1;
                if others == 0 {
                    format!("cyclic group of order {order}")
                } else {
                    format!("cyclic group of order {order} free product free group of rank {others}")
                }
            }
            BuiltinGroup::Trivial => "trivial group".into(),
        }
    }

    fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    fn is_identity(&self, w: &[i32]) -> Option<bool> {
        match &self.group {
            BuiltinGroup::Trivial => Some(true),
            BuiltinGroup::Free { eliminated, substitute, .. } => {
                let mut expanded = Vec::with_capacity(w.len());
                for &g in w {
                    if Some(g.unsigned_abs() as usize - 1) == *eliminated {
                        if g > 0 {
                            expanded.extend_from_slice(substitute);
                        } else {
                            expanded.extend(inverse(substitute));
                        }
                    } else {
                        expanded.push(g);
                    }
                }
                Some(free_reduce(&expanded).is_empty())
            }
            BuiltinGroup::Cyclic { generator, order } => {
                let x = *generator as i32 + 1;
                // Stack of (symbol, exponent); exponents of x are kept mod n.
                let mut stack: Vec<(i32, i64)> = Vec::new();
                for &g in w {
                    let (sym, e) = if g.abs() == x { (x, g.signum() as i64) } else { (g, 1) };
                    match stack.last_mut() {
                        Some((s, exp)) if *s == x && sym == x => {
                            *exp = (*exp + e).rem_euclid(*order as i64);
                            if *exp == 0 {
                                stack.pop();
                            }
                        }
                        Some((s, _)) if sym != x && *s == -sym => {
                            stack.pop();
                        }
                        _ => {
                            let e = if sym == x { e.rem_euclid(*order as i64) } else { e };
                            if !(sym == x && e == 0) {
                                stack.push((sym, e));
                            }
                        }
                    }
                }
                Some(stack.is_empty())
            }
        }
    }
}

/// Oracles for the relator shapes that can be recognized syntactically:
/// a generator occurring once (Tietze elimination leaves a free group), a
/// pure power of one generator, and the group with no generators.
pub fn builtin_oracle(g: &GroupPresentation) -> Option<BuiltinOracle> {
    let n = g.generators.len();
    let rel = g.relator_symbols();
    let wrap = |group| Some(BuiltinOracle { group, presentation: g.clone() });
    if n == 0 {
        return wrap(BuiltinGroup::Trivial);
    }
    if rel.is_empty() {
        return wrap(BuiltinGroup::Free { eliminated: None, substitute: Vec::new(), rank: n });
    }
    for i in 0..n {
        let x = i as i32 + 1;
        let hits: Vec<usize> = (0..rel.len()).filter(|&j| rel[j] == x).collect();
        if hits.len() == 1 {
            // r = A x B = 1 gives x = A⁻¹ B⁻¹ = (B A)⁻¹.
            let (a, b) = (&rel[..hits[0]], &rel[hits[0] + 1..]);
            let ba: Vec<i32> = b.iter().chain(a).copied().collect();
            let substitute = free_reduce(&inverse(&ba));
            if n == 1 {
                return wrap(BuiltinGroup::Trivial);
            }
            return wrap(BuiltinGroup::Free { eliminated: Some(i), substitute, rank: n - 1 });
        }
    }
    if rel.iter().all(|&s| s == rel[0]) {
        let generator = rel[0] as usize - 1;
        if n == 1 && rel.len() == 1 {
            return wrap(BuiltinGroup::Trivial);
        }
        return wrap(BuiltinGroup::Cyclic { generator, order: rel.len() });
    }
    None
}

/// Word-problem solver for special presentations.
///
/// Every factor of a word lying in `Δ*` (with `Δ = C(lhs)`) is replaced by
/// the length-lexicographically least `Δ*`-word equal to it in the group of
/// units, until nothing changes. The resulting normal forms are compared
/// graphically.
pub struct SpecialSolver<'a> {
    p: &'a Presentation,
    group: GroupPresentation,
    code: Code,
    oracle: &'a dyn GroupOracle,
    /// `Δ*`-words of each length in length-lexicographic order.
    levels: Vec<Vec<Word>>,
    minimal: HashMap<Word, Word>,
    max_candidates: usize,
}

/// How many `Δ*`-words the normal-form search may enumerate.
pub const DEFAULT_MAX_CANDIDATES: usize = 200_000;

impl<'a> SpecialSolver<'a> {
    pub fn new(p: &'a Presentation, oracle: &'a dyn GroupOracle) -> Result<Self, Error> {
        let group = unit_group_presentation(p)?;
        if oracle.presentation().relator != group.relator
            || oracle.presentation().code != group.code
        {
            return Err(Error::OracleMismatch(format!(
                "oracle is for `{}`, unit group is `{}`",
                oracle.presentation(),
                group
            )));
        }
        let code = Code::new(group.code.iter().cloned());
        Ok(SpecialSolver {
            p,
            group,
            code,
            oracle,
            levels: vec![vec![Word::empty()]],
            minimal: HashMap::new(),
            max_candidates: DEFAULT_MAX_CANDIDATES,
        })
    }

    pub fn with_max_candidates(mut self, n: usize) -> Self {
        self.max_candidates = n;
        self
    }

    fn alphabet_key(&self, w: &Word) -> Vec<usize> {
        w.letters().iter().map(|&l| self.p.index_of(l).unwrap_or(usize::MAX)).collect()
    }

    fn extend_levels(&mut self, len: usize) -> Option<()> {
        while self.levels.len() <= len {
            let l = self.levels.len();
            let mut level = Vec::new();
            for c in &self.code.words {
                if c.len() <= l {
                    for rest in &self.levels[l - c.len()] {
                        level.push(c.concat(rest));
                    }
                }
            }
            level.sort_by_cached_key(|w| self.alphabet_key(w));
            let total: usize = self.levels.iter().map(Vec::len).sum::<usize>() + level.len();
            if total > self.max_candidates {
                return None;
            }
            self.levels.push(level);
        }
        Some(())
    }

    /// Length-lexicographically least `Δ*`-word equal to `x` in the group.
    fn minimal_form(&mut self, x: &Word) -> Result<Option<Word>, Error> {
        if let Some(m) = self.minimal.get(x) {
            return Ok(Some(m.clone()));
        }
        if self.extend_levels(x.len()).is_none() {
            return Ok(None);
        }
        let gx = self.group.encode(x)?;
        let key = self.alphabet_key(x);
        for len in 0..=x.len() {
            for cand in &self.levels[len] {
                if len == x.len() && self.alphabet_key(cand) >= key {
                    self.minimal.insert(x.clone(), x.clone());
                    return Ok(Some(x.clone()));
                }
                let mut probe = gx.clone();
                probe.extend(inverse(&self.group.encode(cand)?));
                match self.oracle.is_identity(&probe) {
                    Some(true) => {
                        self.minimal.insert(x.clone(), cand.clone());
                        return Ok(Some(cand.clone()));
                    }
                    Some(false) => {}
                    None => return Ok(None),
                }
            }
        }
        self.minimal.insert(x.clone(), x.clone());
        Ok(Some(x.clone()))
    }

    fn parses(&self, w: &Word) -> bool {
        factor_over_code(w, &self.code).is_ok()
    }

    /// Normal form of `w`, or `None` when the oracle or the enumeration
    /// bound gives up.
    pub fn normal_form(&mut self, w: &Word) -> Result<Option<Word>, Error> {
        self.p.check_word(w)?;
        let mut cur = w.clone();
        'outer: loop {
            // Longest factors first, so whole segments are minimized before
            // their pieces.
            for len in (1..=cur.len()).rev() {
                for start in 0..=cur.len() - len {
                    let f = cur.slice(start, start + len);
                    if !self.parses(&f) {
                        continue;
                    }
                    match self.minimal_form(&f)? {
                        None => return Ok(None),
                        Some(m) if m != f => {
                            cur = cur.splice(start, len, &m);
                            continue 'outer;
                        }
                        Some(_) => {}
                    }
                }
            }
            return Ok(Some(cur));
        }
    }

    pub fn decide(&mut self, u: &Word, v: &Word) -> Result<Verdict, Error> {
        if u == v {
            return Ok(Verdict::identical());
        }
        let (Some(nu), Some(nv)) = (self.normal_form(u)?, self.normal_form(v)?) else {
            return Ok(Verdict::unknown(Certificate::Unsupported {
                detail: format!("unit group oracle ({}) gave no answer", self.oracle.describe()),
            }));
        };
        let cert = Certificate::NormalForms { left: nu.clone(), right: nv.clone() };
        Ok(if nu == nv {
            Verdict::equal(crate::verdict::Confidence::Sound, cert)
        } else {
            Verdict::not_equal(crate::verdict::Confidence::Sound, cert)
        })
    }
}

/// Decides `u = v` in a special presentation using `oracle` for its group
/// of units.
pub fn special_word_problem(
    p: &Presentation,
    u: &Word,
    v: &Word,
    oracle: &dyn GroupOracle,
) -> Result<Verdict, Error> {
    SpecialSolver::new(p, oracle)?.decide(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Outcome;

    fn w(s: &str) -> Word {
        Word::chars(s)
    }

    #[test]
    fn codes_from_the_examples() {
        assert_eq!(sof_code(&w("abbaab")), Code::new([w("a"), w("b")]));
        assert_eq!(sof_code(&w("abcabdab")), Code::new([w("ab"), w("cabd")]));
        assert_eq!(sof_code(&w("aab")), Code::new([w("aab")]));
    }

    #[test]
    fn factorization() {
        let code = Code::new([w("ab"), w("cabd")]);
        assert_eq!(
            factor_over_code(&w("abcabdab"), &code).unwrap(),
            vec![w("ab"), w("cabd"), w("ab")]
        );
        assert_eq!(factor_over_code(&w("ba"), &Code::new([w("ab")])), Err(Error::NotFactorable(0)));
    }

    #[test]
    fn unit_groups() {
        let p = Presentation::chars("abcd", "abcabdab", "1").unwrap();
        let g = unit_group_presentation(&p).unwrap();
        assert_eq!(g.to_string(), "x1,x2 | x1.x2.x1 = 1");
        let o = builtin_oracle(&g).unwrap();
        assert_eq!(o.describe(), "free group of rank 1");
        assert_eq!(o.is_identity(&[1, 2, 1]), Some(true));
        assert_eq!(o.is_identity(&[1]), Some(false));

        let p = Presentation::chars("ab", "abbaab", "1").unwrap();
        let g = unit_group_presentation(&p).unwrap();
        assert_eq!(g.relator.to_string(), "x1.x2.x2.x1.x1.x2");
        assert!(builtin_oracle(&g).is_none());

        let p = Presentation::chars("ab", "aab", "1").unwrap();
        let g = unit_group_presentation(&p).unwrap();
        assert_eq!(builtin_oracle(&g).unwrap().group, BuiltinGroup::Trivial);
    }

    #[test]
    fn cyclic_oracle() {
        let x = Letter::named("x1");
        let g = GroupPresentation {
            generators: vec![x],
            relator: Word::from_letters(vec![x, x, x]),
            code: vec![w("a")],
        };
        let o = builtin_oracle(&g).unwrap();
        assert_eq!(o.group, BuiltinGroup::Cyclic { generator: 0, order: 3 });
        assert_eq!(o.is_identity(&[1, 1, 1]), Some(true));
        assert_eq!(o.is_identity(&[-1, -1, -1, -1, 1]), Some(true));
        assert_eq!(o.is_identity(&[1, 1]), Some(false));
    }

    #[test]
    fn bicyclic_word_problem() {
        let p = Presentation::chars("bc", "bc", "1").unwrap();
        let g = unit_group_presentation(&p).unwrap();
        let o = builtin_oracle(&g).unwrap();
        let v = special_word_problem(&p, &w("cb"), &Word::empty(), &o).unwrap();
        assert_eq!(v.outcome, Outcome::NotEqual);
        let v = special_word_problem(&p, &w("bbcc"), &w("bc"), &o).unwrap();
        assert_eq!(v.outcome, Outcome::Equal);
    }

    #[test]
    fn relator_cancels() {
        let p = Presentation::chars("abcd", "abcabdab", "1").unwrap();
        let o = builtin_oracle(&unit_group_presentation(&p).unwrap()).unwrap();
        let v = special_word_problem(&p, &w("abcabdabab"), &w("ab"), &o).unwrap();
        assert_eq!(v.outcome, Outcome::Equal);
        let v = special_word_problem(&p, &w("cabcabdababd"), &w("cabd"), &o).unwrap();
        assert_eq!(v.outcome, Outcome::Equal);
    }

    #[test]
    fn mismatched_oracle_is_refused() {
        let p = Presentation::chars("bc", "bc", "1").unwrap();
        let q = Presentation::chars("abcd", "abcabdab", "1").unwrap();
        let o = builtin_oracle(&unit_group_presentation(&q).unwrap()).unwrap();
        assert!(matches!(
            special_word_problem(&p, &w("b"), &w("c"), &o),
            Err(Error::OracleMismatch(_))
        ));
    }
}
