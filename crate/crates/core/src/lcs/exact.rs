use crate::error::Result;
use crate::hashing::{FingerprintContext, CONTEXT_WORDS};
use crate::model::{CharStream, SpaceMeter, TextAccess, TextOracle};
use crate::pattern_match::{MatchSession, Mode, Step, MATCH_SESSION_WORDS};

/// 1-based inclusive interval of the text.
pub type Interval = (usize, usize);

/// The text read right to left: position `i` is `T[n + 1 - i]`.
pub struct Reversed<'a, A: TextAccess + ?Sized>(pub &'a A);

impl<A: TextAccess + ?Sized> TextAccess for Reversed<'_, A> {
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn read(&self, i: usize) -> Result<u8> {
        let n = self.0.len();
        if i == 0 || i > n {
            // Let the inner text produce the error with an index it knows.
            return self.0.read(0);
        }
        self.0.read(n + 1 - i)
    }
}

/// Interval of the longest suffix of `T[window] . c` that occurs in `T`.
///
/// The candidate string is fed right to left into a matcher over the
/// reversed text, so each prefix it sees is a reversed suffix of the
/// candidate. The last length at which the matcher is still alive is the
/// answer. Only `window`, `c` and one matcher are held.
pub fn longest_suffix_in_text<A: TextAccess + ?Sized>(
    text: &A,
    ctx: &FingerprintContext,
    mode: Mode,
    window: Option<Interval>,
    c: u8,
) -> Result<Option<Interval>> {
    let n = text.len();
    let reversed = Reversed(text);
    let mut session = MatchSession::new(&reversed, ctx, mode);
    let mut best = match session.push(c)? {
        Step::Alive { ell, r } => (ell, r),
        Step::NoMatch => return Ok(None),
    };
    if let Some((ell, r)) = window {
        for i in (ell..=r).rev() {
            match session.push(text.read(i)?)? {
                Step::Alive { ell, r } => best = (ell, r),
                Step::NoMatch => break,
            }
        }
    }
    let (a, b) = best;
    Ok(Some((n + 1 - b, n + 1 - a)))
}

/// Window and running maximum after one streamed character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcsStep {
    pub window: Option<Interval>,
    pub mx: usize,
}

/// Text and context handles, window (two pointers and an empty flag), the
/// running maximum with its interval, mode and step counter.
pub const LCS_SESSION_WORDS: usize = 2 + 3 + 1 + 2 + 1 + 1;

/// Streaming longest common substring in constant space.
///
/// Keeps `T[ell..=r]`, the longest suffix of the stream so far that occurs in
/// the text, and the largest such window seen.
pub struct LcsSession<'a, A: TextAccess + ?Sized> {
    text: &'a A,
    ctx: &'a FingerprintContext,
    mode: Mode,
    window: Option<Interval>,
    mx: usize,
    best: Option<Interval>,
    steps: u64,
    meter: SpaceMeter,
}

impl<'a, A: TextAccess + ?Sized> LcsSession<'a, A> {
    pub fn new(text: &'a A, ctx: &'a FingerprintContext, mode: Mode) -> Self {
        let mut meter = SpaceMeter::new();
        meter.charge(LCS_SESSION_WORDS);
        LcsSession {
            text,
            ctx,
            mode,
            window: None,
            mx: 0,
            best: None,
            steps: 0,
            meter,
        }
    }

    pub fn push(&mut self, c: u8) -> Result<LcsStep> {
        // The helper matcher plus `c` and the loop index live only during
        // this call.
        self.meter.charge(MATCH_SESSION_WORDS + 2);
        let window = longest_suffix_in_text(self.text, self.ctx, self.mode, self.window, c)?;
        self.meter.release(MATCH_SESSION_WORDS + 2)?;

        self.window = window;
        self.steps += 1;
        if let Some((ell, r)) = window {
            if r + 1 - ell > self.mx {
                self.mx = r + 1 - ell;
                self.best = window;
            }
        }
        Ok(LcsStep { window, mx: self.mx })
    }

    pub fn window(&self) -> Option<Interval> {
        self.window
    }

    pub fn mx(&self) -> usize {
        self.mx
    }

    /// A text interval achieving the running maximum.
    pub fn best(&self) -> Option<Interval> {
        self.best
    }

    pub fn meter(&self) -> &SpaceMeter {
        &self.meter
    }
}

/// Result of a streaming LCS computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsReport {
    pub length: usize,
    pub interval: Option<Interval>,
    pub passes: u32,
    pub peak_words: usize,
}

/// One pass over the stream; returns the longest common substring length
/// and an interval of the text where it occurs.
pub fn lcs_exact(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    mode: Mode,
) -> Result<LcsReport> {
    let mut session = LcsSession::new(text, ctx, mode);
    while let Some(c) = stream.next_char()? {
        session.push(c)?;
    }
    Ok(LcsReport {
        length: session.mx(),
        interval: session.best(),
        passes: stream.passes_started(),
        peak_words: CONTEXT_WORDS + text.buffer_words() + session.meter().peak_words(),
    })
}
