//! Space-bounded string matching in the asymmetric streaming model.
//!
//! One string (the text) is available through random-access reads; the
//! other arrives as a one-way character stream. Algorithms keep a constant
//! or budgeted number of words of state, tracked by [`model::SpaceMeter`],
//! and count passes over the stream.

pub mod brute;
pub mod error;
pub mod harness;
pub mod hashing;
pub mod lcs;
pub mod model;
pub mod pattern_match;
pub mod prime;
pub mod wildcard;

pub use error::{Error, Result};
pub use hashing::{Fingerprint, FingerprintContext};
pub use model::{AlphabetMap, CharStream, SpaceMeter, TextAccess, TextOracle};
pub use pattern_match::{match_run, MatchOutcome, MatchReport, MatchSession, Mode, Step};
