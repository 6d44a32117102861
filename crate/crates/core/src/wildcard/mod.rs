//! Pattern matching with single-character wildcards in small space.
//!
//! A pattern position holding the wildcard matches any text character. The
//! text and pattern are read-only inputs; [`sampled_wildcard_match`] keeps
//! only `O(s)` words of its own by splitting alignments into residue
//! classes modulo `k = n / s`.

mod adversarial;
pub mod ntt;
mod oracle;
mod sampled;

pub use adversarial::adversarial_instance;
pub use oracle::{
    convolution_wildcard_oracle, naive_wildcard_oracle, ConvolutionOracle, NaiveOracle,
    WildcardOracle, MAX_CONVOLUTION_PATTERN,
};
pub use sampled::{sample, sampled_wildcard_match, stride_for, WildcardReport};

use serde::{Deserialize, Serialize};

pub const DEFAULT_WILDCARD: u8 = b'?';

/// Pattern symbols; `None` is the wildcard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildcardPattern {
    symbols: Vec<Option<u8>>,
}

impl WildcardPattern {
    /// Reads `bytes`, treating every occurrence of `wild` as the wildcard.
    pub fn parse(bytes: &[u8], wild: u8) -> Self {
        WildcardPattern {
            symbols: bytes.iter().map(|&b| (b != wild).then_some(b)).collect(),
        }
    }

    pub fn from_symbols(symbols: Vec<Option<u8>>) -> Self {
        WildcardPattern { symbols }
    }

    pub fn symbols(&self) -> &[Option<u8>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn wildcard_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// Renders the pattern with `wild` in wildcard positions.
    pub fn to_bytes(&self, wild: u8) -> Vec<u8> {
        self.symbols.iter().map(|s| s.unwrap_or(wild)).collect()
    }

    /// Direct check of the alignment at 1-based `pos`.
    pub fn matches_at(&self, text: &[u8], pos: usize) -> bool {
        pos >= 1
            && pos - 1 + self.len() <= text.len()
            && self
                .symbols
                .iter()
                .zip(&text[pos - 1..])
                .all(|(p, &t)| p.is_none_or(|c| c == t))
    }
}

/// Match flags for consecutive alignments; `bits[j]` is the alignment at
/// 1-based text position `start + j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchBitmap {
    pub start: usize,
    pub bits: Vec<bool>,
}

impl MatchBitmap {
    /// 1-based positions of all matches.
    pub fn positions(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| self.start + j)
            .collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.iter().position(|&b| b).map(|j| self.start + j)
    }
}
