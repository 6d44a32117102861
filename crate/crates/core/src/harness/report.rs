use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

/// What a command found. `position`/`end` locate a match or a common
/// substring in the text; `length` is set by the LCS commands.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Answer {
    pub found: bool,
    pub position: Option<usize>,
    pub end: Option<usize>,
    pub length: Option<usize>,
}

/// One line of machine-readable output per command run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub answer: Answer,
    pub passes: u32,
    pub peak_state_words: usize,
    pub text_reads: u64,
    pub wall_time_ms: f64,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        if self.answer.found {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One-line summary for people.
    pub fn summary(&self) -> String {
        let a = &self.answer;
        let what = match (a.found, a.position, a.length) {
            (false, _, Some(_)) => "length 0".to_string(),
            (false, _, None) => "not found".to_string(),
            (true, Some(p), None) => format!("found at {p}"),
            (true, p, Some(l)) => match (p, a.end) {
                (Some(p), Some(e)) => format!("length {l} at text {p}..{e}"),
                _ => format!("length {l}"),
            },
            (true, None, None) => "found".to_string(),
        };
        format!(
            "{}: {what}; passes {}, peak {} words, {} text reads, {:.3} ms",
            self.command, self.passes, self.peak_state_words, self.text_reads, self.wall_time_ms
        )
    }
}

/// Writes one report as a single JSON line.
pub fn write_report(out: &mut impl Write, report: &RunReport) -> std::io::Result<()> {
    writeln!(out, "{}", report.to_json())
}
