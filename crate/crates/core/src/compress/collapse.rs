//! Generator collapse for left cycle-free presentations: one letter per
//! component of the left graph is merged into a single letter.

use serde::{Deserialize, Serialize};

use super::fresh_name;
use crate::classify::{left_cycle_free, side_graphs};
use crate::error::Error;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseMap {
    pub components: Vec<Vec<Letter>>,
    /// The alphabet-least letter of each component.
    pub representatives: Vec<Letter>,
    /// The letter every representative is replaced by.
    pub target: Letter,
}

impl CollapseMap {
    pub fn apply(&self, w: &Word) -> Word {
        w.map(|l| if self.representatives.contains(&l) { self.target } else { l })
    }
}

pub fn collapse_generators(p: &Presentation) -> Result<(CollapseMap, Presentation), Error> {
    match left_cycle_free(p) {
        None => return Err(Error::Special),
        Some(false) => return Err(Error::LeftCycles),
        Some(true) => {}
    }
    let (left, _) = side_graphs(p)?;
    let components = left.components();
    let representatives: Vec<Letter> = components.iter().map(|c| c[0]).collect();
    let others: Vec<Letter> =
        p.alphabet().iter().copied().filter(|l| !representatives.contains(l)).collect();
    let target = fresh_name("c1", &others);
    let map = CollapseMap { components, representatives, target };
    let mut alphabet = vec![target];
    alphabet.extend(others);
    let q = Presentation::new(alphabet, map.apply(p.lhs()), map.apply(p.rhs()))?;
    Ok((map, q))
}
