use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::report::{Answer, RunReport};
use crate::error::{invalid, Result};
use crate::hashing::FingerprintContext;
use crate::lcs::{lcs_approx_logrounds, lcs_approx_multipass, lcs_exact};
use crate::model::{AlphabetMap, CharStream, TextAccess, TextOracle};
use crate::pattern_match::{match_run, MatchOutcome, Mode};
use crate::wildcard::{sampled_wildcard_match, ConvolutionOracle, NaiveOracle, WildcardPattern};

/// Where the streamed string comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamSource {
    File(PathBuf),
    Stdin,
    Bytes(Vec<u8>),
}

impl StreamSource {
    /// `-` means standard input.
    pub fn from_arg(arg: &str) -> Self {
        if arg == "-" {
            StreamSource::Stdin
        } else {
            StreamSource::File(arg.into())
        }
    }

    fn open(&self) -> Result<CharStream> {
        Ok(match self {
            StreamSource::File(p) => CharStream::open(p)?,
            StreamSource::Stdin => CharStream::stdin(),
            StreamSource::Bytes(b) => CharStream::from_bytes(b.clone()),
        })
    }

    fn describe(&self) -> String {
        match self {
            StreamSource::File(p) => p.display().to_string(),
            StreamSource::Stdin => "-".into(),
            StreamSource::Bytes(b) => format!("<{} bytes>", b.len()),
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Common {
    pub seed: u64,
    pub modulus_bits: Option<u32>,
    pub deterministic: bool,
    /// When false, `wall_time_ms` is reported as 0 so reruns are
    /// byte-identical.
    pub timing: bool,
}

impl Default for Common {
    fn default() -> Self {
        Common {
            seed: DEFAULT_SEED,
            modulus_bits: None,
            deterministic: false,
            timing: true,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl Common {
    fn mode(&self) -> Mode {
        if self.deterministic {
            Mode::Verified
        } else {
            Mode::Randomized
        }
    }

    fn context(&self, text: &TextOracle) -> Result<FingerprintContext> {
        let alphabet = AlphabetMap::from_text(text)?;
        match self.modulus_bits {
            Some(bits) => FingerprintContext::with_modulus_bits(alphabet, bits, self.seed),
            None => Ok(FingerprintContext::new(alphabet, text.len(), self.seed)),
        }
    }

    fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("mode".into(), mode_name(self.mode()).into());
        if let Some(b) = self.modulus_bits {
            p.insert("modulus_bits".into(), b.to_string());
        }
        p
    }

    fn elapsed(&self, start: Instant) -> f64 {
        if self.timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        }
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Randomized => "randomized",
        Mode::Verified => "verified",
    }
}

/// Exact pattern matching with the pattern streamed.
pub fn cmd_match(text_path: &Path, pattern: &StreamSource, common: &Common) -> Result<RunReport> {
    let text = TextOracle::open(text_path)?;
    let ctx = common.context(&text)?;
    let mut stream = pattern.open()?;
    let start = Instant::now();
    let r = match_run(&text, &ctx, &mut stream, common.mode())?;
    let wall_time_ms = common.elapsed(start);

    let mut params = common.params();
    params.insert("text".into(), text_path.display().to_string());
    params.insert("pattern".into(), pattern.describe());
    params.insert("modulus".into(), ctx.modulus().to_string());
    let answer = match r.outcome {
        MatchOutcome::Found { ell, r: end } => Answer {
            found: true,
            position: Some(ell),
            end: Some(end),
            length: None,
        },
        MatchOutcome::NotFound => Answer::default(),
    };
    Ok(RunReport {
        command: "match".into(),
        answer,
        passes: r.passes,
        peak_state_words: r.peak_words,
        text_reads: text.reads_performed(),
        wall_time_ms,
        seed: common.seed,
        params,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LcsMode {
    Exact,
    /// Guess categories, one pass each.
    Approx,
    /// One guess per pass.
    Logrounds,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LcsOptions {
    pub mode: LcsMode,
    pub epsilon: f64,
    pub kappa: f64,
}

impl Default for LcsOptions {
    fn default() -> Self {
        LcsOptions {
            mode: LcsMode::Exact,
            epsilon: 0.25,
            kappa: 0.5,
        }
    }
}

/// Longest common substring between the text and the stream.
pub fn cmd_lcs(text_path: &Path, source: &StreamSource, opts: &LcsOptions, common: &Common) -> Result<RunReport> {
    let text = TextOracle::open(text_path)?;
    let ctx = common.context(&text)?;
    let mut stream = source.open()?;
    let mode = common.mode();
    let mut params = common.params();
    params.insert("text".into(), text_path.display().to_string());
    params.insert("stream".into(), source.describe());
    params.insert("modulus".into(), ctx.modulus().to_string());
    params.insert("lcs_mode".into(), format!("{:?}", opts.mode).to_lowercase());

    let start = Instant::now();
    let (answer, passes, peak) = match opts.mode {
        LcsMode::Exact => {
            let r = lcs_exact(&text, &ctx, &mut stream, mode)?;
            let answer = Answer {
                found: r.length > 0,
                position: r.interval.map(|i| i.0),
                end: r.interval.map(|i| i.1),
                length: Some(r.length),
            };
            (answer, r.passes, r.peak_words)
        }
        LcsMode::Approx | LcsMode::Logrounds => {
            params.insert("epsilon".into(), opts.epsilon.to_string());
            let r = if opts.mode == LcsMode::Approx {
                params.insert("kappa".into(), opts.kappa.to_string());
                lcs_approx_multipass(&text, &ctx, &mut stream, opts.epsilon, opts.kappa, mode)?
            } else {
                lcs_approx_logrounds(&text, &ctx, &mut stream, opts.epsilon, mode)?
            };
            params.insert("guesses_run".into(), r.guesses_run.to_string());
            let answer = Answer {
                found: r.length > 0,
                position: None,
                end: None,
                length: Some(r.length),
            };
            (answer, r.passes, r.peak_words)
        }
    };
    let wall_time_ms = common.elapsed(start);
    Ok(RunReport {
        command: "lcs".into(),
        answer,
        passes,
        peak_state_words: peak,
        text_reads: text.reads_performed(),
        wall_time_ms,
        seed: common.seed,
        params,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Naive,
    Ntt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WildcardOptions {
    /// Space budget; `None` picks `ceil(sqrt(n))`.
    pub space_budget: Option<usize>,
    pub oracle: OracleKind,
    pub wildcard_byte: u8,
}

impl Default for WildcardOptions {
    fn default() -> Self {
        WildcardOptions {
            space_budget: None,
            oracle: OracleKind::Ntt,
            wildcard_byte: crate::wildcard::DEFAULT_WILDCARD,
        }
    }
}

/// Wildcard matching with both strings available for random access.
pub fn cmd_wildcard(text_path: &Path, pattern_path: &Path, opts: &WildcardOptions, common: &Common) -> Result<RunReport> {
    let text = TextOracle::open(text_path)?;
    let pattern = WildcardPattern::parse(&fs::read(pattern_path)?, opts.wildcard_byte);
    let n = text.len();
    let s = match opts.space_budget {
        Some(0) => return Err(invalid("space budget must be at least 1")),
        Some(s) => s,
        None => (n as f64).sqrt().ceil().max(1.0) as usize,
    };
    let start = Instant::now();
    let r = match opts.oracle {
        OracleKind::Naive => sampled_wildcard_match(&text, &pattern, s, &mut NaiveOracle)?,
        OracleKind::Ntt => sampled_wildcard_match(&text, &pattern, s, &mut ConvolutionOracle::new())?,
    };
    let wall_time_ms = common.elapsed(start);

    let mut params = BTreeMap::new();
    params.insert("text".into(), text_path.display().to_string());
    params.insert("pattern".into(), pattern_path.display().to_string());
    params.insert("space_budget".into(), s.to_string());
    params.insert("stride".into(), r.stride.to_string());
    params.insert("oracle".into(), format!("{:?}", opts.oracle).to_lowercase());
    params.insert("oracle_calls".into(), r.oracle_calls.to_string());
    params.insert("wildcard_byte".into(), opts.wildcard_byte.to_string());
    let answer = match r.position {
        Some(p) => Answer {
            found: true,
            position: Some(p),
            end: Some(p + pattern.len().max(1) - 1),
            length: None,
        },
        None => Answer::default(),
    };
    Ok(RunReport {
        command: "wildcard".into(),
        answer,
        // Nothing is streamed.
        passes: 0,
        peak_state_words: r.peak_words + text.buffer_words(),
        text_reads: text.reads_performed(),
        wall_time_ms,
        seed: common.seed,
        params,
    })
}
