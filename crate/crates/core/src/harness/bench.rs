//! Timing grids written as CSV.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::gen::{planted_lcs, random_string, rng_for};
use crate::error::Result;
use crate::hashing::FingerprintContext;
use crate::lcs::{lcs_approx_logrounds, lcs_approx_multipass, lcs_exact};
use crate::model::{AlphabetMap, CharStream, TextOracle};
use crate::pattern_match::{match_run, Mode};
use crate::wildcard::{sampled_wildcard_match, ConvolutionOracle, WildcardPattern};

pub const CSV_HEADER: [&str; 7] = ["algorithm", "n", "m", "param", "time_ms", "peak_words", "passes"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Match,
    Lcs,
    Wildcard,
}

/// One cell of a benchmark grid. `None` fields are cells whose run failed.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub param: String,
    pub time_ms: Option<f64>,
    pub peak_words: Option<usize>,
    pub passes: Option<u32>,
}

impl BenchRow {
    fn record(&self) -> [String; 7] {
        let na = || "NA".to_string();
        [
            self.algorithm.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.param.clone(),
            self.time_ms.map_or_else(na, |t| format!("{t:.3}")),
            self.peak_words.map_or_else(na, |w| w.to_string()),
            self.passes.map_or_else(na, |p| p.to_string()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub suite: Suite,
    /// Sizes to sweep; empty selects the suite default.
    pub sizes: Vec<usize>,
    /// Space budgets for the wildcard suite; empty selects the default.
    pub budgets: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(suite: Suite) -> Self {
        BenchConfig {
            suite,
            sizes: Vec::new(),
            budgets: Vec::new(),
            repetitions: 3,
            seed: 1,
        }
    }
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

/// Counters from one timed run.
struct Sample {
    ms: f64,
    peak: usize,
    passes: u32,
}

fn cell(
    algorithm: &str,
    n: usize,
    m: usize,
    param: String,
    reps: usize,
    mut run: impl FnMut() -> Result<Sample>,
) -> BenchRow {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps.max(1) {
        match run() {
            Ok(s) => {
                times.push(s.ms);
                last = Some(s);
            }
            Err(_) => {
                last = None;
                break;
            }
        }
    }
    BenchRow {
        algorithm: algorithm.into(),
        n,
        m,
        param,
        time_ms: last.as_ref().map(|_| median(&mut times)),
        peak_words: last.as_ref().map(|s| s.peak),
        passes: last.as_ref().map(|s| s.passes),
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64() * 1e3))
}

/// Random binary text whose second half is the pattern, so the matcher
/// walks the whole text.
pub fn match_instance(n: usize, seed: u64) -> (Vec<u8>, Vec<u8>) {
    let text = random_string(&mut rng_for(seed), n, 2);
    let pattern = text[n / 2..].to_vec();
    (text, pattern)
}

/// Times one `match_run` on an in-memory instance.
pub fn time_match(text: &[u8], pattern: &[u8], seed: u64) -> Result<(f64, usize, u32)> {
    let t = TextOracle::from_bytes(text.to_vec());
    let ctx = FingerprintContext::new(AlphabetMap::from_bytes(text), text.len(), seed);
    let mut s = CharStream::from_bytes(pattern.to_vec());
    let (r, ms) = timed(|| match_run(&t, &ctx, &mut s, Mode::Randomized))?;
    Ok((ms, r.peak_words, r.passes))
}

/// Binary text with a pattern that occurs nowhere: all ones against a
/// text whose ones never run longer than one.
pub fn wildcard_instance(n: usize, m: usize) -> (Vec<u8>, WildcardPattern) {
    let text: Vec<u8> = (0..n).map(|i| if i % 2 == 0 { b'1' } else { b'0' }).collect();
    let mut symbols = vec![Some(b'1'); m];
    for (i, s) in symbols.iter_mut().enumerate() {
        if i % 3 == 1 {
            *s = None;
        }
    }
    (text, WildcardPattern::from_symbols(symbols))
}

pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRow> {
    let reps = cfg.repetitions;
    let seed = cfg.seed;
    let mut rows = Vec::new();
    match cfg.suite {
        Suite::Match => {
            let sizes = if cfg.sizes.is_empty() {
                vec![100_000, 200_000, 400_000]
            } else {
                cfg.sizes.clone()
            };
            for n in sizes {
                let (text, pattern) = match_instance(n, seed);
                rows.push(cell("match", n, pattern.len(), "randomized".into(), reps, || {
                    let (ms, peak, passes) = time_match(&text, &pattern, seed)?;
                    Ok(Sample { ms, peak, passes })
                }));
            }
        }
        Suite::Lcs => {
            let sizes = if cfg.sizes.is_empty() {
                vec![100, 200, 400]
            } else {
                cfg.sizes.clone()
            };
            for n in sizes {
                let len = (n / 8).max(1);
                let pair = planted_lcs(&mut rng_for(seed), n, n, len, 4);
                let text = TextOracle::from_bytes(pair.text.clone());
                let ctx = FingerprintContext::new(AlphabetMap::from_bytes(&pair.text), n, seed);
                let stream = || CharStream::from_bytes(pair.stream.clone());
                rows.push(cell("lcs-exact", n, n, "randomized".into(), reps, || {
                    let (r, ms) = timed(|| lcs_exact(&text, &ctx, &mut stream(), Mode::Randomized))?;
                    Ok(Sample {
                        ms,
                        peak: r.peak_words,
                        passes: r.passes,
                    })
                }));
                rows.push(cell("lcs-multipass", n, n, "eps=0.25 kappa=0.5".into(), reps, || {
                    let (r, ms) =
                        timed(|| lcs_approx_multipass(&text, &ctx, &mut stream(), 0.25, 0.5, Mode::Verified))?;
                    Ok(Sample {
                        ms,
                        peak: r.peak_words,
                        passes: r.passes,
                    })
                }));
                rows.push(cell("lcs-logrounds", n, n, "eps=0.25".into(), reps, || {
                    let (r, ms) = timed(|| lcs_approx_logrounds(&text, &ctx, &mut stream(), 0.25, Mode::Verified))?;
                    Ok(Sample {
                        ms,
                        peak: r.peak_words,
                        passes: r.passes,
                    })
                }));
            }
        }
        Suite::Wildcard => {
            let n = cfg.sizes.first().copied().unwrap_or(1 << 13);
            let budgets = if cfg.budgets.is_empty() {
                vec![1 << 4, 1 << 7, 1 << 10]
            } else {
                cfg.budgets.clone()
            };
            let (text, pattern) = wildcard_instance(n, n / 2);
            let t = TextOracle::from_bytes(text);
            for s in budgets {
                rows.push(cell("wildcard-ntt", n, pattern.len(), format!("s={s}"), reps, || {
                    let (r, ms) = timed(|| sampled_wildcard_match(&t, &pattern, s, &mut ConvolutionOracle::new()))?;
                    Ok(Sample {
                        ms,
                        peak: r.peak_words,
                        passes: 0,
                    })
                }));
            }
        }
    }
    rows
}

/// Environment line written before the CSV header.
pub fn env_stamp() -> String {
    format!(
        "# asymstream {} os={} arch={} cpus={}",
        env!("CARGO_PKG_VERSION"),
        std::env::consts::OS,
        std::env::consts::ARCH,
        std::thread::available_parallelism().map_or(1, |n| n.get()),
    )
}

pub fn write_csv(out: impl Write, rows: &[BenchRow]) -> Result<()> {
    let mut out = out;
    writeln!(out, "{}", env_stamp())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(std::io::Error::other)?;
    for r in rows {
        w.write_record(r.record()).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}
