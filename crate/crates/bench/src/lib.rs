//! Fixed workloads shared by the benchmarks.

use onerel::{parse_presentation, Presentation, Word};

pub fn presentation(text: &str) -> Presentation {
    parse_presentation(text).expect("fixture presentation parses")
}

pub fn word(text: &str) -> Word {
    Word::chars(text)
}

/// Equality queries that exercise each solver route.
pub fn equality_fixtures() -> Vec<(&'static str, Presentation, Word, Word)> {
    [
        ("equal_length", "a,b | ab = ba", "aabbab", "bbaaba"),
        ("sof_rewrite", "a,b | abb = a", "aabbbbabb", "aaa"),
        ("special", "a,b,c,d | abcabdab = 1", "abcabdababcabdabcd", "cd"),
        ("weak", "a,b | abbaabbbabbbab = abbaab", "abbaabbbabbbabbab", "abbaabbab"),
        ("strong", "a,b | abaababb = abbaabb", "abaababbab", "abbaabbab"),
        ("pipeline", "a,b,c,d | abdadadacbaca = abdadabdaca", "abdadadacbaca", "abdadabdaca"),
        ("left_cycle_free", "a,b | baababa = aba", "abbaaababab", "abbaaabababa"),
        ("bfs", "a,b | abba = 1", "abbaab", "ab"),
    ]
    .into_iter()
    .map(|(name, p, u, v)| (name, presentation(p), word(u), word(v)))
    .collect()
}

/// Words whose self-overlap free code is computed in the benchmarks.
pub const CODE_WORDS: [&str; 3] = ["abbaab", "abcabdab", "abaabaababaabaab"];
