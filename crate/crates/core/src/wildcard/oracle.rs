use super::ntt::{from_mont, to_mont, Ntt};
use super::{MatchBitmap, WildcardPattern};

/// Full-text matcher for patterns with wildcards (`None`).
///
/// `match_into` clears `out` and writes one flag per alignment, so
/// `out.len() == text.len() - pattern.len() + 1`, or 0 when the pattern is
/// longer than the text.
pub trait WildcardOracle {
    fn name(&self) -> &'static str;

    fn match_into(&mut self, pattern: &[Option<u8>], text: &[u8], out: &mut Vec<bool>);

    /// Working words used by one call on these lengths, beyond `out`.
    fn scratch_words(&self, pattern_len: usize, text_len: usize) -> usize;
}

fn alignments(m: usize, n: usize) -> usize {
    if m > n {
        0
    } else {
        n - m + 1
    }
}

/// Checks every alignment directly.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaiveOracle;

impl WildcardOracle for NaiveOracle {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn match_into(&mut self, pattern: &[Option<u8>], text: &[u8], out: &mut Vec<bool>) {
        out.clear();
        out.extend((0..alignments(pattern.len(), text.len())).map(|j| {
            pattern
                .iter()
                .zip(&text[j..])
                .all(|(p, &t)| p.is_none_or(|c| c == t))
        }));
    }

    fn scratch_words(&self, _: usize, _: usize) -> usize {
        2
    }
}

/// Largest pattern length for which the mismatch score cannot wrap modulo
/// the transform prime: `m * 257^2 * 256^2 < P`.
pub const MAX_CONVOLUTION_PATTERN: usize = 1 << 29;

/// Scores every alignment with three correlations:
/// `sum p t (p - t)^2 = sum p^3 t - 2 sum p^2 t^2 + sum p t^3`, which is zero
/// exactly at matches when wildcards are 0 and characters positive.
#[derive(Default)]
pub struct ConvolutionOracle {
    ntt: Ntt,
    bufs: [Vec<u64>; 6],
}

impl ConvolutionOracle {
    pub fn new() -> Self {
        Self::default()
    }
}

impl WildcardOracle for ConvolutionOracle {
    fn name(&self) -> &'static str {
        "ntt"
    }

    fn match_into(&mut self, pattern: &[Option<u8>], text: &[u8], out: &mut Vec<bool>) {
        out.clear();
        let (m, n) = (pattern.len(), text.len());
        let count = alignments(m, n);
        if count == 0 {
            return;
        }
        if m == 0 {
            out.resize(count, true);
            return;
        }
        assert!(m <= MAX_CONVOLUTION_PATTERN, "pattern too long for the transform");

        // Dense ranks 1..=sigma for the text's bytes; pattern bytes the text
        // lacks get sigma + 1 so they can never score zero.
        let mut rank = [0u64; 256];
        text.iter().for_each(|&b| rank[b as usize] = 1);
        let mut sigma = 0;
        for r in rank.iter_mut().filter(|r| **r == 1) {
            sigma += 1;
            *r = sigma;
        }
        let code = |c: Option<u8>| match c {
            None => 0,
            Some(b) if rank[b as usize] == 0 => sigma + 1,
            Some(b) => rank[b as usize],
        };

        let len = (n + m - 1).next_power_of_two();
        let [p1, p2, p3, t1, t2, t3] = &mut self.bufs;
        for b in [&mut *p1, &mut *p2, &mut *p3, &mut *t1, &mut *t2, &mut *t3] {
            b.clear();
            b.resize(len, 0);
        }
        for (i, &c) in pattern.iter().rev().enumerate() {
            let v = code(c);
            p1[i] = to_mont(v);
            p2[i] = to_mont(v * v);
            p3[i] = to_mont(v * v * v);
        }
        for (i, &b) in text.iter().enumerate() {
            let v = rank[b as usize];
            t1[i] = to_mont(v);
            t2[i] = to_mont(v * v);
            t3[i] = to_mont(v * v * v);
        }
        for b in [&mut *p1, &mut *p2, &mut *p3, &mut *t1, &mut *t2, &mut *t3] {
            self.ntt.transform(b, false);
        }
        // p3 t1 - 2 p2 t2 + p1 t3, accumulated into p3.
        Ntt::mul_assign(p3, t1);
        Ntt::mul_assign(p2, t2);
        Ntt::sub_assign(p3, p2);
        Ntt::sub_assign(p3, p2);
        Ntt::mul_assign(p1, t3);
        Ntt::add_assign(p3, p1);
        self.ntt.transform(p3, true);
        out.extend((0..count).map(|j| from_mont(p3[j + m - 1]) == 0));
    }

    fn scratch_words(&self, pattern_len: usize, text_len: usize) -> usize {
        if pattern_len == 0 || pattern_len > text_len {
            return 0;
        }
        6 * (text_len + pattern_len - 1).next_power_of_two() + 256
    }
}

fn run(oracle: &mut impl WildcardOracle, pattern: &WildcardPattern, text: &[u8]) -> MatchBitmap {
    let mut bits = Vec::new();
    oracle.match_into(pattern.symbols(), text, &mut bits);
    MatchBitmap { start: 1, bits }
}

/// Reference matcher: O(nm) time, O(1) extra space.
pub fn naive_wildcard_oracle(pattern: &WildcardPattern, text: &[u8]) -> MatchBitmap {
    run(&mut NaiveOracle, pattern, text)
}

/// Transform-based matcher: O((n + m) log(n + m)) time, O(n + m) space.
pub fn convolution_wildcard_oracle(pattern: &WildcardPattern, text: &[u8]) -> MatchBitmap {
    run(&mut ConvolutionOracle::new(), pattern, text)
}
