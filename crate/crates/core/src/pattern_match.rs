//! One-pass pattern matching with a random-access text and a streamed pattern.
//!
//! A [`MatchSession`] keeps two pointers `ell..=r` into the text that delimit
//! the leftmost occurrence of the pattern streamed so far, together with the
//! fingerprints of the pattern and of that window. Each new pattern character
//! extends both; while the fingerprints disagree the window slides right.
//! Pointers only move forward, so a whole run costs `O(n + m)` steps and a
//! constant number of words.
//!
//! In [`Mode::Verified`] every fingerprint agreement is confirmed character by
//! character against the previous window (which equals the pattern so far),
//! trading time for an exact answer without storing the pattern.

use serde::{Deserialize, Serialize};

use crate::error::{contract, invalid, Result};
use crate::hashing::{Fingerprint, FingerprintContext, CONTEXT_WORDS};
use crate::model::{CharStream, SpaceMeter, TextAccess, TextOracle};

/// How fingerprint agreements are trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Equal fingerprints are taken as equal strings.
    Randomized,
    /// Equal fingerprints are confirmed by direct comparison.
    Verified,
}

/// State after a pattern character has been consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Alive { ell: usize, r: usize },
    NoMatch,
}

/// Final answer of a full matching run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchOutcome {
    /// Leftmost occurrence `[ell, r]`, 1-based inclusive. The empty pattern
    /// is reported as `Found { ell: 1, r: 0 }`.
    Found { ell: usize, r: usize },
    NotFound,
}

/// Persistent fields registered by a session: text and context handles, the
/// two pointers, two fingerprints of three words each, status, mode and the
/// pointer-move counter.
pub const MATCH_SESSION_WORDS: usize = 2 + 2 + 3 + 3 + 1 + 1 + 1;

/// Leftmost-occurrence tracker for a streamed pattern.
pub struct MatchSession<'a, A: TextAccess + ?Sized> {
    text: &'a A,
    ctx: &'a FingerprintContext,
    mode: Mode,
    ell: usize,
    r: usize,
    pattern_fp: Fingerprint,
    window_fp: Fingerprint,
    alive: bool,
    moves: u64,
    meter: SpaceMeter,
}

impl<'a, A: TextAccess + ?Sized> MatchSession<'a, A> {
    /// Empty pattern, window `(1, 0)`.
    pub fn new(text: &'a A, ctx: &'a FingerprintContext, mode: Mode) -> Self {
        let mut meter = SpaceMeter::new();
        meter.charge(MATCH_SESSION_WORDS);
        MatchSession {
            text,
            ctx,
            mode,
            ell: 1,
            r: 0,
            pattern_fp: Fingerprint::EMPTY,
            window_fp: Fingerprint::EMPTY,
            alive: true,
            moves: 0,
            meter,
        }
    }

    pub fn window(&self) -> (usize, usize) {
        (self.ell, self.r)
    }

    pub fn is_alive(&self) -> bool {
        self.alive
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Characters consumed so far while alive.
    pub fn pattern_len(&self) -> usize {
        self.pattern_fp.len
    }

    /// Advances of the right pointer so far. The left pointer trails it at
    /// the pattern length, so this bounds all pointer movement.
    pub fn pointer_moves(&self) -> u64 {
        self.moves
    }

    pub fn meter(&self) -> &SpaceMeter {
        &self.meter
    }

    /// Appends `c` to the pattern and moves the window to the leftmost
    /// occurrence of the extended pattern at or after the current one.
    pub fn push(&mut self, c: u8) -> Result<Step> {
        if !self.alive {
            return Err(contract("push after the session reported no match"));
        }
        let Some(d) = self.ctx.digit(c) else {
            // A character absent from the text cannot be matched.
            return Ok(self.die());
        };
        let (prev_ell, prev_r) = (self.ell, self.r);
        let n = self.text.len();

        self.pattern_fp = self.ctx.push_digit(self.pattern_fp, d);
        self.r += 1;
        self.moves += 1;
        if self.r > n {
            return Ok(self.die());
        }
        self.window_fp = self
            .ctx
            .push_digit(self.window_fp, self.ctx.digit_at(self.text, self.r)?);

        loop {
            if self.pattern_fp == self.window_fp
                && (self.mode == Mode::Randomized || self.window_equals(prev_ell, prev_r, c)?)
            {
                return Ok(Step::Alive {
                    ell: self.ell,
                    r: self.r,
                });
            }
            self.ell += 1;
            self.r += 1;
            self.moves += 1;
            if self.r > n {
                return Ok(self.die());
            }
            let out = self.ctx.digit_at(self.text, self.ell - 1)?;
            let inc = self.ctx.digit_at(self.text, self.r)?;
            self.window_fp = self.ctx.slide_digits(self.window_fp, out, inc);
        }
    }

    /// Alias of [`MatchSession::push`] for sessions created in verified mode;
    /// fails if the session is randomized.
    pub fn push_verified(&mut self, c: u8) -> Result<Step> {
        if self.mode != Mode::Verified {
            return Err(invalid("push_verified on a randomized session"));
        }
        self.push(c)
    }

    /// Checks `T[ell..=r] == T[prev_ell..=prev_r] . c`, where the previous
    /// window is already known to spell the pattern before `c`.
    fn window_equals(&self, prev_ell: usize, prev_r: usize, c: u8) -> Result<bool> {
        if self.text.read(self.r)? != c {
            return Ok(false);
        }
        if self.ell == prev_ell {
            return Ok(true);
        }
        for k in 0..(prev_r + 1 - prev_ell) {
            if self.text.read(self.ell + k)? != self.text.read(prev_ell + k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn die(&mut self) -> Step {
        self.alive = false;
        Step::NoMatch
    }
}

/// Counters from a full matching run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub outcome: MatchOutcome,
    pub passes: u32,
    pub peak_words: usize,
    pub pointer_moves: u64,
    pub pattern_len: u64,
}

/// Streams the whole pattern once against `text` and reports its leftmost
/// occurrence. After a mismatch is certain the rest of the stream is drained
/// unprocessed.
pub fn match_run(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    mode: Mode,
) -> Result<MatchReport> {
    let mut meter = SpaceMeter::new();
    meter.charge(CONTEXT_WORDS + text.buffer_words());
    let mut session = MatchSession::new(text, ctx, mode);
    meter.charge(session.meter().peak_words());

    let mut outcome = MatchOutcome::Found { ell: 1, r: 0 };
    while let Some(c) = stream.next_char()? {
        match session.push(c)? {
            Step::Alive { ell, r } => outcome = MatchOutcome::Found { ell, r },
            Step::NoMatch => {
                outcome = MatchOutcome::NotFound;
                stream.drain()?;
                break;
            }
        }
    }
    Ok(MatchReport {
        outcome,
        passes: stream.passes_started(),
        peak_words: meter.peak_words(),
        pointer_moves: session.pointer_moves(),
        pattern_len: stream.position(),
    })
}

/// Words registered by a [`FixedPatternSearch`].
pub const FIXED_SEARCH_WORDS: usize = 2 + 4;

/// Reports every stream position at which the last `w` streamed characters
/// spell the fixed text piece `T[p..p+w-1]`.
///
/// Only the length of the longest stream suffix that is a prefix of the piece
/// is kept. On a mismatch the next length is found by comparing fingerprints
/// of candidate borders, shrinking both ends one character at a time, and
/// confirming a fingerprint agreement directly in the text.
pub struct FixedPatternSearch<'a, A: TextAccess + ?Sized> {
    text: &'a A,
    ctx: &'a FingerprintContext,
    start: usize,
    width: usize,
    matched: usize,
    position: usize,
}

impl<'a, A: TextAccess + ?Sized> FixedPatternSearch<'a, A> {
    pub fn new(text: &'a A, ctx: &'a FingerprintContext, start: usize, width: usize) -> Result<Self> {
        if start == 0 || width == 0 || start + width - 1 > text.len() {
            return Err(invalid(format!(
                "piece [{start}, +{width}) does not fit a text of length {}",
                text.len()
            )));
        }
        Ok(FixedPatternSearch {
            text,
            ctx,
            start,
            width,
            matched: 0,
            position: 0,
        })
    }

    /// Consumes one stream character; returns its 1-based stream position if
    /// an occurrence of the piece ends there.
    pub fn push(&mut self, c: u8) -> Result<Option<usize>> {
        self.position += 1;
        let k = self.matched;
        if k < self.width && self.text.read(self.start + k)? == c {
            self.matched = k + 1;
        } else {
            self.matched = self.longest_border(k, c)?;
        }
        Ok((self.matched == self.width).then_some(self.position))
    }

    /// Largest `L <= k` such that the length-`L` suffix of `piece[..k] . c`
    /// equals `piece[..L]`.
    fn longest_border(&self, k: usize, c: u8) -> Result<usize> {
        if k == 0 || self.ctx.digit(c).is_none() {
            return Ok(0);
        }
        let p = self.start;
        let ctx = self.ctx;
        // suffix: piece[k-L+1 .. k-1] (0-based), prefix: piece[0 .. L-2]
        let mut suffix = crate::hashing::substring_hash(self.text, p + 1, p + k - 1, ctx)?;
        let mut prefix = crate::hashing::substring_hash(self.text, p, p + k - 2, ctx)?;
        let mut len = k;
        loop {
            if self.text.read(p + len - 1)? == c
                && suffix == prefix
                && self.ranges_equal(p + k - len + 1, p, len - 1)?
            {
                return Ok(len);
            }
            if len == 1 {
                return Ok(0);
            }
            suffix = ctx.drop_left_digit(suffix, ctx.digit_at(self.text, p + k - len + 1)?);
            prefix = ctx.drop_right_digit(prefix, ctx.digit_at(self.text, p + len - 2)?);
            len -= 1;
        }
    }

    fn ranges_equal(&self, a: usize, b: usize, len: usize) -> Result<bool> {
        for i in 0..len {
            if self.text.read(a + i)? != self.text.read(b + i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Runs a [`FixedPatternSearch`] over a whole stream and collects the end
/// positions it emits.
pub fn fixed_pattern_stream_search(
    text: &TextOracle,
    ctx: &FingerprintContext,
    start: usize,
    width: usize,
    stream: &mut CharStream,
) -> Result<Vec<usize>> {
    let mut search = FixedPatternSearch::new(text, ctx, start, width)?;
    let mut ends = Vec::new();
    while let Some(c) = stream.next_char()? {
        if let Some(e) = search.push(c)? {
            ends.push(e);
        }
    }
    Ok(ends)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::model::AlphabetMap;

    fn ctx_for(text: &[u8]) -> FingerprintContext {
        FingerprintContext::new(AlphabetMap::from_bytes(text), text.len(), 17)
    }

    fn pushes(text: &[u8], pattern: &[u8], mode: Mode) -> Vec<Step> {
        let t = TextOracle::from_bytes(text.to_vec());
        let ctx = ctx_for(text);
        let mut s = MatchSession::new(&t, &ctx, mode);
        let mut out = Vec::new();
        for &c in pattern {
            let step = s.push(c).unwrap();
            out.push(step);
            if step == Step::NoMatch {
                break;
            }
        }
        out
    }

    fn oracle_steps(text: &[u8], pattern: &[u8]) -> Vec<Step> {
        let mut out = Vec::new();
        for k in 1..=pattern.len() {
            match brute::leftmost_occurrence(text, &pattern[..k]) {
                Some(ell) => out.push(Step::Alive { ell, r: ell + k - 1 }),
                None => {
                    out.push(Step::NoMatch);
                    break;
                }
            }
        }
        out
    }

    #[test]
    fn new_session_is_empty() {
        let t = TextOracle::from_bytes(b"abc".to_vec());
        let ctx = ctx_for(b"abc");
        let s = MatchSession::new(&t, &ctx, Mode::Randomized);
        assert_eq!(s.window(), (1, 0));
        assert!(s.is_alive());
    }

    #[test]
    fn empty_text_never_matches() {
        let t = TextOracle::from_bytes(Vec::new());
        let ctx = ctx_for(b"");
        let mut s = MatchSession::new(&t, &ctx, Mode::Randomized);
        assert_eq!(s.push(b'a').unwrap(), Step::NoMatch);
        assert!(s.push(b'a').is_err());
    }

    #[test]
    fn sessions_on_one_text_are_independent() {
        let t = TextOracle::from_bytes(b"abab".to_vec());
        let ctx = ctx_for(b"abab");
        let mut a = MatchSession::new(&t, &ctx, Mode::Randomized);
        let mut b = MatchSession::new(&t, &ctx, Mode::Verified);
        assert_eq!(a.push(b'b').unwrap(), Step::Alive { ell: 2, r: 2 });
        assert_eq!(b.push(b'a').unwrap(), Step::Alive { ell: 1, r: 1 });
        assert_eq!(a.push(b'a').unwrap(), Step::Alive { ell: 2, r: 3 });
        assert_eq!(b.push(b'a').unwrap(), Step::NoMatch);
    }

    #[test]
    fn push_examples_match_oracle() {
        let cases: [(&[u8], &[u8]); 3] = [(b"aab", b"ab"), (b"abab", b"ba"), (b"aa", b"b")];
        for (text, pattern) in cases {
            for mode in [Mode::Randomized, Mode::Verified] {
                assert_eq!(pushes(text, pattern, mode), oracle_steps(text, pattern));
            }
        }
        assert_eq!(
            pushes(b"aab", b"ab", Mode::Verified),
            vec![Step::Alive { ell: 1, r: 1 }, Step::Alive { ell: 2, r: 3 }]
        );
        assert_eq!(
            pushes(b"abab", b"ba", Mode::Randomized),
            vec![Step::Alive { ell: 2, r: 2 }, Step::Alive { ell: 2, r: 3 }]
        );
        assert_eq!(pushes(b"aa", b"b", Mode::Verified), vec![Step::NoMatch]);
    }

    #[test]
    fn periodic_text_verified() {
        let text = vec![b'a'; 1000];
        let mut pattern = vec![b'a'; 999];
        pattern.push(b'b');
        let t = TextOracle::from_bytes(text.clone());
        // 'b' is outside the text alphabet; use a full byte alphabet so the
        // mismatch is found by sliding rather than by the alphabet check.
        let ctx = FingerprintContext::new(AlphabetMap::full(), 1000, 3);
        let mut stream = CharStream::from_bytes(pattern.clone());
        let report = match_run(&t, &ctx, &mut stream, Mode::Verified).unwrap();
        assert_eq!(report.outcome, MatchOutcome::NotFound);
        assert_eq!(brute::leftmost_occurrence(&text, &pattern), None);
    }

    #[test]
    fn tiny_modulus_verified_agrees_with_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ctx = FingerprintContext::with_modulus(AlphabetMap::from_bytes(b"ab"), 5).unwrap();
        for _ in 0..1000 {
            let n = rng.gen_range(1..40);
            let text: Vec<u8> = (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let m = rng.gen_range(0..=n);
            let pattern: Vec<u8> = if rng.gen_bool(0.5) {
                let s = rng.gen_range(0..=n - m);
                text[s..s + m].to_vec()
            } else {
                (0..m).map(|_| b"ab"[rng.gen_range(0..2)]).collect()
            };
            let t = TextOracle::from_bytes(text.clone());
            let report =
                match_run(&t, &ctx, &mut CharStream::from_bytes(pattern.clone()), Mode::Verified)
                    .unwrap();
            assert_eq!(report.outcome, brute::match_outcome(&text, &pattern));
        }
    }

    #[test]
    fn run_examples() {
        let text = b"abcabd";
        let t = TextOracle::from_bytes(text.to_vec());
        let ctx = ctx_for(text);
        for mode in [Mode::Randomized, Mode::Verified] {
            let r = match_run(&t, &ctx, &mut CharStream::from_bytes(b"abd".to_vec()), mode).unwrap();
            assert_eq!(r.outcome, MatchOutcome::Found { ell: 4, r: 6 });
            assert_eq!(r.passes, 1);

            let r = match_run(&t, &ctx, &mut CharStream::from_bytes(Vec::new()), mode).unwrap();
            assert_eq!(r.outcome, MatchOutcome::Found { ell: 1, r: 0 });

            let long = b"abcabdabcabd".to_vec();
            let mut s = CharStream::from_bytes(long);
            let r = match_run(&t, &ctx, &mut s, mode).unwrap();
            assert_eq!(r.outcome, MatchOutcome::NotFound);
            assert_eq!(s.position(), 12, "stream is drained");
        }
    }

    #[test]
    fn fixed_pattern_examples() {
        let text = b"xaby";
        let t = TextOracle::from_bytes(text.to_vec());
        let ctx = FingerprintContext::new(AlphabetMap::full(), 4, 1);
        let ends =
            fixed_pattern_stream_search(&t, &ctx, 2, 2, &mut CharStream::from_bytes(b"aab".to_vec()))
                .unwrap();
        assert_eq!(ends, vec![3]);
        let ends =
            fixed_pattern_stream_search(&t, &ctx, 2, 2, &mut CharStream::from_bytes(b"ba".to_vec()))
                .unwrap();
        assert!(ends.is_empty());

        let t = TextOracle::from_bytes(b"aa".to_vec());
        let ends =
            fixed_pattern_stream_search(&t, &ctx, 1, 2, &mut CharStream::from_bytes(b"aaa".to_vec()))
                .unwrap();
        assert_eq!(ends, vec![2, 3]);

        assert!(FixedPatternSearch::new(&t, &ctx, 2, 2).is_err());
        assert!(FixedPatternSearch::new(&t, &ctx, 1, 0).is_err());
    }
}
