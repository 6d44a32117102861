//! Seeded instance generators and their truth sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::brute;
use crate::error::{invalid, Result};
use crate::wildcard::{adversarial_instance, naive_wildcard_oracle, DEFAULT_WILDCARD};

/// Largest input size for which sidecars include brute-force answers.
pub const TRUTH_LIMIT: usize = 4096;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform string over the first `sigma` lowercase letters.
pub fn random_string(rng: &mut impl Rng, n: usize, sigma: usize) -> Vec<u8> {
    assert!((1..=26).contains(&sigma));
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma as u8)).collect()
}

/// A random block of length `period` repeated to length `n`.
pub fn periodic_string(rng: &mut impl Rng, n: usize, period: usize, sigma: usize) -> Vec<u8> {
    let block = random_string(rng, period, sigma);
    block.iter().copied().cycle().take(n).collect()
}

/// Two random strings sharing a planted block.
#[derive(Clone, Debug)]
pub struct PlantedPair {
    pub text: Vec<u8>,
    pub stream: Vec<u8>,
    pub length: usize,
    /// 1-based start of the block in each string.
    pub text_pos: usize,
    pub stream_pos: usize,
}

pub fn planted_lcs(rng: &mut impl Rng, n: usize, m: usize, length: usize, sigma: usize) -> PlantedPair {
    assert!(length <= n.min(m));
    let mut text = random_string(rng, n, sigma);
    let mut stream = random_string(rng, m, sigma);
    let block = random_string(rng, length, sigma);
    let text_pos = rng.gen_range(0..=n - length);
    let stream_pos = rng.gen_range(0..=m - length);
    text[text_pos..text_pos + length].copy_from_slice(&block);
    stream[stream_pos..stream_pos + length].copy_from_slice(&block);
    PlantedPair {
        text,
        stream,
        length,
        text_pos: text_pos + 1,
        stream_pos: stream_pos + 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Random,
    Periodic,
    PlantedLcs,
    Thm2Adversarial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub period: usize,
    pub length: usize,
    pub kk: usize,
    pub i: usize,
    pub wild: Vec<usize>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 1000,
            m: 100,
            sigma: 2,
            period: 7,
            length: 32,
            kk: 4,
            i: 1,
            wild: Vec::new(),
        }
    }
}

/// Files written by [`cmd_gen`].
#[derive(Clone, Debug)]
pub struct Generated {
    pub text: PathBuf,
    pub pattern: PathBuf,
    pub truth: PathBuf,
    pub sidecar: serde_json::Value,
}

/// Writes `text.txt`, `pattern.txt` and `truth.json` into `out`.
pub fn cmd_gen(kind: GenKind, p: &GenParams, seed: u64, out: &Path) -> Result<Generated> {
    let mut rng = rng_for(seed);
    let (text, pattern, mut sidecar) = match kind {
        GenKind::Random | GenKind::Periodic => {
            if p.n == 0 || p.m > p.n {
                return Err(invalid("need 1 <= n and m <= n"));
            }
            if !(1..=26).contains(&p.sigma) {
                return Err(invalid("sigma must be in 1..=26"));
            }
            let (text, pattern) = if kind == GenKind::Random {
                let t = random_string(&mut rng, p.n, p.sigma);
                (t, random_string(&mut rng, p.m, p.sigma))
            } else {
                if p.period == 0 {
                    return Err(invalid("period must be at least 1"));
                }
                let t = periodic_string(&mut rng, p.n, p.period, p.sigma);
                let at = rng.gen_range(0..=p.n - p.m);
                let pat = t[at..at + p.m].to_vec();
                (t, pat)
            };
            let mut side = json!({ "n": p.n, "m": p.m, "sigma": p.sigma });
            if kind == GenKind::Periodic {
                side["period"] = json!(p.period);
            }
            if p.n <= TRUTH_LIMIT && p.m <= TRUTH_LIMIT {
                side["leftmost"] = json!(brute::leftmost_occurrence(&text, &pattern));
                side["lcs"] = json!(brute::lcs_length(&text, &pattern));
            }
            (text, pattern, side)
        }
        GenKind::PlantedLcs => {
            let m = if p.m == 0 { p.n } else { p.m };
            if p.length == 0 || p.length > p.n.min(m) {
                return Err(invalid("need 1 <= length <= min(n, m)"));
            }
            if !(1..=26).contains(&p.sigma) {
                return Err(invalid("sigma must be in 1..=26"));
            }
            let pair = planted_lcs(&mut rng, p.n, m, p.length, p.sigma);
            let mut side = json!({
                "n": p.n,
                "m": m,
                "sigma": p.sigma,
                "planted_length": pair.length,
                "text_pos": pair.text_pos,
                "pattern_pos": pair.stream_pos,
            });
            if p.n <= TRUTH_LIMIT && m <= TRUTH_LIMIT {
                side["lcs"] = json!(brute::lcs_length(&pair.text, &pair.stream));
            }
            (pair.text, pair.stream, side)
        }
        GenKind::Thm2Adversarial => {
            if p.kk == 0 || !(1..=p.kk).contains(&p.i) {
                return Err(invalid("need 1 <= i <= kk"));
            }
            if let Some(j) = p.wild.iter().find(|j| !(1..=p.kk).contains(*j)) {
                return Err(invalid(format!("wildcard position {j} outside 1..={}", p.kk)));
            }
            let (text, pat) = adversarial_instance(p.kk, p.i, &p.wild);
            let side = json!({
                "kk": p.kk,
                "i": p.i,
                "wild": p.wild,
                "match_expected": p.wild.contains(&p.i),
                "positions": naive_wildcard_oracle(&pat, &text).positions(),
            });
            (text, pat.to_bytes(DEFAULT_WILDCARD), side)
        }
    };
    sidecar["kind"] = json!(kind);
    sidecar["seed"] = json!(seed);

    fs::create_dir_all(out)?;
    let g = Generated {
        text: out.join("text.txt"),
        pattern: out.join("pattern.txt"),
        truth: out.join("truth.json"),
        sidecar,
    };
    fs::write(&g.text, text)?;
    fs::write(&g.pattern, pattern)?;
    fs::write(&g.truth, serde_json::to_vec_pretty(&g.sidecar).expect("json"))?;
    Ok(g)
}
