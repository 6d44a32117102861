//! Brute-force reference answers, used to cross-check the streaming
//! algorithms and to write truth sidecars for generated instances.
//!
//! Everything here works on plain slices and shares no code with the
//! algorithms it checks.

use crate::pattern_match::MatchOutcome;

/// 1-based start of the leftmost occurrence of `pattern` in `text`.
pub fn leftmost_occurrence(text: &[u8], pattern: &[u8]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(1);
    }
    if pattern.len() > text.len() {
        return None;
    }
    text.windows(pattern.len())
        .position(|w| w == pattern)
        .map(|i| i + 1)
}

pub fn match_outcome(text: &[u8], pattern: &[u8]) -> MatchOutcome {
    match leftmost_occurrence(text, pattern) {
        Some(ell) => MatchOutcome::Found {
            ell,
            r: ell + pattern.len() - 1,
        },
        None => MatchOutcome::NotFound,
    }
}

/// Length of the longest common substring, by the classic suffix-length
/// dynamic program in `O(|a| |b|)` time and `O(|b|)` space.
pub fn lcs_length(a: &[u8], b: &[u8]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    let mut best = 0;
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { 0 };
            best = best.max(cur[j + 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

/// Length of the longest suffix of `s` that occurs somewhere in `text`.
pub fn longest_suffix_in_text(text: &[u8], s: &[u8]) -> usize {
    (0..=s.len())
        .rev()
        .find(|&len| leftmost_occurrence(text, &s[s.len() - len..]).is_some())
        .unwrap_or(0)
}

/// Whether `sub` occurs in `text` (convenience for window checks).
pub fn occurs(text: &[u8], sub: &[u8]) -> bool {
    leftmost_occurrence(text, sub).is_some()
}
