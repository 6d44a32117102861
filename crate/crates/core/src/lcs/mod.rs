//! Longest common substring between the text and the stream.

pub mod approx;
pub mod exact;

pub use approx::{
    category_count, category_of, guess_ladder, lcs_approx_decide, lcs_approx_logrounds,
    lcs_approx_multipass, ApproxConfig, ApproxReport, Decision, DecideReport, GuessLadder,
};
pub use exact::{lcs_exact, longest_suffix_in_text, Interval, LcsReport, LcsSession, LcsStep, Reversed};
