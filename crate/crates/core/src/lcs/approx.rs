//! Approximate longest common substring with few passes.
//!
//! For a size guess `d`, probes are launched at stream positions spaced
//! `ceil(eps d)` apart. Each probe is a matcher whose pattern is the next
//! `ceil((1 - eps) d)` stream characters. A common substring of length at
//! least `d` contains a whole probe window, so some probe survives; a
//! surviving probe is itself a common substring.
//!
//! Unknown `d` is handled with the geometric ladder `ceil(n (1 - eps)^j)`.
//! [`lcs_approx_logrounds`] tries one guess per pass; [`lcs_approx_multipass`]
//! groups guesses into `ceil(1 / kappa)` categories spanning a factor of
//! `n^kappa` each and runs a whole category per pass.

use crate::error::{invalid, Error, Result};
use crate::hashing::{FingerprintContext, CONTEXT_WORDS};
use crate::model::{CharStream, SpaceMeter, TextAccess, TextOracle};
use crate::pattern_match::{MatchSession, Mode, Step, MATCH_SESSION_WORDS};

/// Rounds up, treating values within floating noise of an integer as that
/// integer.
fn ceil_tol(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Parameters for deciding one size guess `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxConfig {
    pub epsilon: f64,
    pub kappa: f64,
    pub d: usize,
    pub mark_spacing: usize,
    pub probe_length: usize,
}

impl ApproxConfig {
    pub fn new(epsilon: f64, kappa: f64, d: usize) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(kappa > 0.0 && kappa <= 1.0) {
            return Err(invalid(format!("kappa must be in (0, 1], got {kappa}")));
        }
        if d == 0 {
            return Err(invalid("size guess must be at least 1"));
        }
        let mark_spacing = ceil_tol(epsilon * d as f64);
        let probe_length = ceil_tol((1.0 - epsilon) * d as f64);
        if mark_spacing < 1 || probe_length < 1 || mark_spacing + probe_length > d + 1 {
            return Err(invalid(format!(
                "degenerate guess d={d}: spacing {mark_spacing}, probe {probe_length}"
            )));
        }
        Ok(ApproxConfig {
            epsilon,
            kappa,
            d,
            mark_spacing,
            probe_length,
        })
    }

    /// Upper bound on probes alive at once.
    pub fn instance_cap(&self) -> usize {
        self.probe_length.div_ceil(self.mark_spacing) + 1
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("epsilon must be in (0, 1), got {epsilon}")))
    }
}

/// Answer for a single guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A common substring of this length exists.
    FoundLength(usize),
    NotFound,
}

/// A probe is a matcher plus its launch position.
pub const PROBE_WORDS: usize = MATCH_SESSION_WORDS + 1;
/// Per-guess bookkeeping: d, spacing, probe length, found flag, alive count,
/// and the probe list handle.
pub const GUESS_WORDS: usize = 7;
/// Driver bookkeeping: ladder position, current guess, category, passes.
const DRIVER_WORDS: usize = 4;

struct Probe<'a> {
    session: MatchSession<'a, TextOracle>,
}

struct GuessRun<'a> {
    cfg: ApproxConfig,
    probes: Vec<Probe<'a>>,
    found: bool,
    max_alive: usize,
}

impl<'a> GuessRun<'a> {
    fn new(cfg: ApproxConfig) -> Self {
        GuessRun {
            probes: Vec::with_capacity(cfg.instance_cap()),
            cfg,
            found: false,
            max_alive: 0,
        }
    }

    /// Feeds the character at 1-based stream position `pos`.
    fn feed(
        &mut self,
        text: &'a TextOracle,
        ctx: &'a FingerprintContext,
        mode: Mode,
        pos: usize,
        c: u8,
        meter: &mut SpaceMeter,
    ) -> Result<()> {
        if self.found {
            return Ok(());
        }
        if (pos - 1).is_multiple_of(self.cfg.mark_spacing) {
            meter.charge(PROBE_WORDS);
            self.probes.push(Probe {
                session: MatchSession::new(text, ctx, mode),
            });
        }
        self.max_alive = self.max_alive.max(self.probes.len());
        let before = self.probes.len();
        let probe_length = self.cfg.probe_length;
        let mut found = false;
        let mut err = None;
        self.probes.retain_mut(|p| {
            if found || err.is_some() {
                return true;
            }
            match p.session.push(c) {
                Ok(Step::Alive { .. }) => {
                    if p.session.pattern_len() == probe_length {
                        found = true;
                    }
                    true
                }
                Ok(Step::NoMatch) => false,
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        meter.release((before - self.probes.len()) * PROBE_WORDS)?;
        if found {
            self.found = true;
            self.retire(meter)?;
        }
        Ok(())
    }

    fn retire(&mut self, meter: &mut SpaceMeter) -> Result<()> {
        meter.release(self.probes.len() * PROBE_WORDS)?;
        self.probes.clear();
        Ok(())
    }
}

/// Counters from one pass over a set of guesses.
struct PassResult {
    best: Option<usize>,
    max_alive: usize,
}

/// Runs every guess in `guesses` (largest first) over one pass of the
/// stream and returns the longest probe that survived.
fn run_pass(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    guesses: &[ApproxConfig],
    mode: Mode,
    meter: &mut SpaceMeter,
) -> Result<PassResult> {
    meter.charge(guesses.len() * GUESS_WORDS);
    let mut runs: Vec<GuessRun> = guesses.iter().copied().map(GuessRun::new).collect();
    let ceiling = guesses.iter().map(|g| g.probe_length).max().unwrap_or(0);
    let mut best: Option<usize> = None;
    let mut pos = 0usize;
    while let Some(c) = stream.next_char()? {
        pos += 1;
        for run in runs.iter_mut() {
            run.feed(text, ctx, mode, pos, c, meter)?;
            if run.found {
                best = best.max(Some(run.cfg.probe_length));
            }
        }
        if best == Some(ceiling) {
            break;
        }
    }
    let max_alive = runs.iter().map(|r| r.max_alive).max().unwrap_or(0);
    for run in runs.iter_mut() {
        run.retire(meter)?;
    }
    meter.release(guesses.len() * GUESS_WORDS)?;
    Ok(PassResult { best, max_alive })
}

/// Report of a single-guess decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideReport {
    pub decision: Decision,
    pub passes: u32,
    pub peak_words: usize,
    pub max_alive: usize,
}

/// Decides, in one pass, whether a common substring of length
/// `cfg.probe_length` can be certified. Guaranteed to find one whenever the
/// true answer is at least `cfg.d`.
pub fn lcs_approx_decide(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    cfg: &ApproxConfig,
    mode: Mode,
) -> Result<DecideReport> {
    let mut meter = SpaceMeter::new();
    meter.charge(CONTEXT_WORDS + text.buffer_words());
    let pass = run_pass(text, ctx, stream, std::slice::from_ref(cfg), mode, &mut meter)?;
    Ok(DecideReport {
        decision: match pass.best {
            Some(len) => Decision::FoundLength(len),
            None => Decision::NotFound,
        },
        passes: stream.passes_started(),
        peak_words: meter.peak_words(),
        max_alive: pass.max_alive,
    })
}

/// Decreasing size guesses `ceil(n (1 - eps)^j)`, without repeats, ending
/// at 1. Empty for `n == 0`.
pub struct GuessLadder {
    x: f64,
    factor: f64,
    last: usize,
}

impl GuessLadder {
    pub fn new(n: usize, epsilon: f64) -> Self {
        GuessLadder {
            x: n as f64,
            factor: 1.0 - epsilon,
            last: if n == 0 { 0 } else { usize::MAX },
        }
    }
}

impl Iterator for GuessLadder {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.last <= 1 {
            return None;
        }
        loop {
            let d = (self.x.ceil() as usize).max(1);
            self.x *= self.factor;
            if d < self.last {
                self.last = d;
                return Some(d);
            }
        }
    }
}

pub fn guess_ladder(n: usize, epsilon: f64) -> Vec<usize> {
    GuessLadder::new(n, epsilon).collect()
}

/// Number of categories the ladder is split into.
pub fn category_count(kappa: f64) -> usize {
    ceil_tol(1.0 / kappa).max(1)
}

/// Category of guess `d`: category `c` holds `d` in
/// `(n^(1 - (c + 1) kappa), n^(1 - c kappa)]`, the last one everything below.
pub fn category_of(d: usize, n: usize, kappa: f64) -> usize {
    if n <= 1 || d >= n {
        return 0;
    }
    let ratio = (n as f64 / d as f64).ln() / (kappa * (n as f64).ln());
    // Snap ratios that are integers up to rounding.
    let c = if (ratio - ratio.round()).abs() < 1e-9 {
        ratio.round()
    } else {
        ratio.floor()
    };
    (c as usize).min(category_count(kappa) - 1)
}

/// Result of an approximate LCS driver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxReport {
    pub length: usize,
    pub passes: u32,
    pub peak_words: usize,
    pub guesses_run: usize,
    pub max_alive: usize,
}

fn prepare(stream: &mut CharStream) -> Result<()> {
    if !stream.is_replayable() {
        return Err(Error::NotReplayable);
    }
    if stream.position() > 0 {
        stream.rewind()?;
    }
    Ok(())
}

/// Runs categories of the guess ladder, one pass each, highest first, and
/// stops at the first category that certifies any length.
pub fn lcs_approx_multipass(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    epsilon: f64,
    kappa: f64,
    mode: Mode,
) -> Result<ApproxReport> {
    check_epsilon(epsilon)?;
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(invalid(format!("kappa must be in (0, 1), got {kappa}")));
    }
    prepare(stream)?;
    let n = text.len();
    let mut meter = SpaceMeter::new();
    meter.charge(CONTEXT_WORDS + text.buffer_words() + DRIVER_WORDS);

    let mut ladder = GuessLadder::new(n, epsilon).peekable();
    let mut report = ApproxReport {
        length: 0,
        passes: 0,
        peak_words: 0,
        guesses_run: 0,
        max_alive: 0,
    };
    let mut first_pass = true;
    while let Some(&top) = ladder.peek() {
        let category = category_of(top, n, kappa);
        let mut guesses = Vec::new();
        while let Some(&d) = ladder.peek() {
            if category_of(d, n, kappa) != category {
                break;
            }
            guesses.push(ApproxConfig::new(epsilon, kappa, d)?);
            ladder.next();
        }
        if !first_pass {
            stream.rewind()?;
        }
        first_pass = false;
        report.guesses_run += guesses.len();
        let pass = run_pass(text, ctx, stream, &guesses, mode, &mut meter)?;
        report.max_alive = report.max_alive.max(pass.max_alive);
        if let Some(len) = pass.best {
            report.length = len;
            break;
        }
    }
    report.passes = stream.passes_started();
    report.peak_words = meter.peak_words();
    Ok(report)
}

/// Walks the guess ladder one guess per pass and stops at the first guess
/// that certifies a length.
pub fn lcs_approx_logrounds(
    text: &TextOracle,
    ctx: &FingerprintContext,
    stream: &mut CharStream,
    epsilon: f64,
    mode: Mode,
) -> Result<ApproxReport> {
    check_epsilon(epsilon)?;
    prepare(stream)?;
    let mut meter = SpaceMeter::new();
    meter.charge(CONTEXT_WORDS + text.buffer_words() + DRIVER_WORDS);
    let mut report = ApproxReport {
        length: 0,
        passes: 0,
        peak_words: 0,
        guesses_run: 0,
        max_alive: 0,
    };
    for (j, d) in GuessLadder::new(text.len(), epsilon).enumerate() {
        if j > 0 {
            stream.rewind()?;
        }
        let cfg = ApproxConfig::new(epsilon, 1.0, d)?;
        report.guesses_run += 1;
        let pass = run_pass(text, ctx, stream, &[cfg], mode, &mut meter)?;
        report.max_alive = report.max_alive.max(pass.max_alive);
        if let Some(len) = pass.best {
            report.length = len;
            break;
        }
    }
    report.passes = stream.passes_started();
    report.peak_words = meter.peak_words();
    Ok(report)
}
