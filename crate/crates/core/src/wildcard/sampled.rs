use serde::{Deserialize, Serialize};

use super::{WildcardOracle, WildcardPattern};
use crate::error::{invalid, Result};
use crate::model::{SpaceMeter, TextAccess};

/// Characters of `t` at 1-based positions `offset, offset + k, ...`.
pub fn sample(t: &[u8], offset: usize, k: usize) -> Vec<u8> {
    assert!(offset >= 1 && k >= 1, "offset and stride start at 1");
    t.get(offset - 1..)
        .map(|rest| rest.iter().step_by(k).copied().collect())
        .unwrap_or_default()
}

/// Stride `k = n / min(s, n)`, at least 1.
pub fn stride_for(n: usize, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(invalid("space budget must be at least 1"));
    }
    Ok((n / s.min(n).max(1)).max(1))
}

/// Outcome and counters of a sampled wildcard search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildcardReport {
    /// A 1-based match position, if any.
    pub position: Option<usize>,
    pub stride: usize,
    pub oracle_calls: u64,
    pub candidates_checked: u64,
    pub peak_words: usize,
}

/// Loop state: n, m, k, offset, shift, candidate count, call counters.
const SAMPLED_FIXED_WORDS: usize = 8;

/// Searches for the pattern using residue classes modulo `k = n / s`.
///
/// For alignment offset `o` (0-based) the candidates are `o, o + k, ...`.
/// Shift `h` compares every `k`-th pattern character from `h` against every
/// `k`-th text character from `o + h`, so one oracle call on the two sampled
/// strings tests shift `h` of all candidates at once. A candidate surviving
/// every shift is confirmed by a direct scan before it is reported.
pub fn sampled_wildcard_match<A, O>(
    text: &A,
    pattern: &WildcardPattern,
    s: usize,
    oracle: &mut O,
) -> Result<WildcardReport>
where
    A: TextAccess + ?Sized,
    O: WildcardOracle + ?Sized,
{
    let n = text.len();
    let m = pattern.len();
    let k = stride_for(n, s)?;
    let mut meter = SpaceMeter::new();
    meter.charge(SAMPLED_FIXED_WORDS);
    let mut report = WildcardReport {
        position: None,
        stride: k,
        oracle_calls: 0,
        candidates_checked: 0,
        peak_words: 0,
    };
    if m == 0 {
        report.position = Some(1);
        report.peak_words = meter.peak_words();
        return Ok(report);
    }

    let symbols = pattern.symbols();
    let mut res: Vec<bool> = Vec::new();
    let mut p_buf: Vec<Option<u8>> = Vec::new();
    let mut t_buf: Vec<u8> = Vec::new();
    let mut bits: Vec<bool> = Vec::new();

    // Candidates exist only while o <= n - m.
    for o in 0..k.min((n + 1).saturating_sub(m)) {
        let count = (n - m - o) / k + 1;
        res.clear();
        res.resize(count, true);
        meter.charge(count);

        for h in 0..k.min(m) {
            p_buf.clear();
            p_buf.extend(symbols[h..].iter().step_by(k));
            // Only the text prefix covering the candidates is needed.
            let t_len = count + p_buf.len() - 1;
            t_buf.clear();
            for i in 0..t_len {
                t_buf.push(text.read(o + h + i * k + 1)?);
            }
            let scratch = p_buf.len() + t_len + count + oracle.scratch_words(p_buf.len(), t_len);
            meter.charge(scratch);
            oracle.match_into(&p_buf, &t_buf, &mut bits);
            report.oracle_calls += 1;
            debug_assert!(bits.len() >= count);
            res.iter_mut().zip(&bits).for_each(|(r, &b)| *r &= b);
            meter.release(scratch)?;
        }

        for (i, _) in res.iter().enumerate().filter(|(_, &r)| r) {
            report.candidates_checked += 1;
            let start = o + i * k;
            if verify(text, symbols, start)? {
                report.position = Some(start + 1);
                break;
            }
        }
        meter.release(count)?;
        if report.position.is_some() {
            break;
        }
    }
    report.peak_words = meter.peak_words();
    Ok(report)
}

fn verify<A: TextAccess + ?Sized>(text: &A, symbols: &[Option<u8>], start: usize) -> Result<bool> {
    for (i, p) in symbols.iter().enumerate() {
        if let Some(c) = *p {
            if text.read(start + i + 1)? != c {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
