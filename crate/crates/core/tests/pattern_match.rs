use asymstream::brute;
use asymstream::hashing::FingerprintContext;
use asymstream::model::{AlphabetMap, CharStream, TextOracle};
use asymstream::pattern_match::{fixed_pattern_stream_search, match_run, MatchSession, Mode, Step};
use proptest::prelude::*;

fn strings(alpha: &'static [u8], max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(prop::sample::select(alpha.to_vec()), 0..max)
}

fn setup(text: &[u8], seed: u64) -> (TextOracle, FingerprintContext) {
    (
        TextOracle::from_bytes(text.to_vec()),
        FingerprintContext::new(AlphabetMap::from_bytes(text), text.len(), seed),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn verified_equals_brute(text in strings(b"ab", 80), pattern in strings(b"abc", 12), seed in any::<u64>()) {
        let (t, ctx) = setup(&text, seed);
        let r = match_run(&t, &ctx, &mut CharStream::from_bytes(pattern.clone()), Mode::Verified).unwrap();
        prop_assert_eq!(r.outcome, brute::match_outcome(&text, &pattern));
        prop_assert_eq!(r.passes, 1);
    }

    #[test]
    fn randomized_never_misses(text in strings(b"ab", 80), pattern in strings(b"ab", 12), seed in any::<u64>()) {
        // A fingerprint collision can only report a match too early.
        let (t, ctx) = setup(&text, seed);
        let r = match_run(&t, &ctx, &mut CharStream::from_bytes(pattern.clone()), Mode::Randomized).unwrap();
        if brute::leftmost_occurrence(&text, &pattern).is_some() {
            prop_assert!(r.outcome != asymstream::MatchOutcome::NotFound);
        }
    }

    #[test]
    fn windows_track_prefixes(text in strings(b"abc", 60), pattern in strings(b"abc", 15)) {
        let (t, ctx) = setup(&text, 3);
        let mut s = MatchSession::new(&t, &ctx, Mode::Verified);
        for k in 1..=pattern.len() {
            let want = brute::leftmost_occurrence(&text, &pattern[..k]);
            match s.push(pattern[k - 1]).unwrap() {
                Step::Alive { ell, r } => {
                    prop_assert_eq!(Some(ell), want);
                    prop_assert_eq!(r + 1 - ell, k);
                }
                Step::NoMatch => {
                    prop_assert_eq!(want, None);
                    break;
                }
            }
        }
        prop_assert!(s.pointer_moves() as usize <= text.len() + pattern.len());
        prop_assert!(s.meter().peak_words() <= 32);
    }

    #[test]
    fn fixed_pattern_finds_every_occurrence(text in strings(b"ab", 40), stream in strings(b"ab", 60),
                                            start in 1usize..10, width in 1usize..6) {
        prop_assume!(start + width - 1 <= text.len());
        let (t, ctx) = setup(&text, 11);
        let piece = &text[start - 1..start - 1 + width];
        let got = fixed_pattern_stream_search(&t, &ctx, start, width, &mut CharStream::from_bytes(stream.clone())).unwrap();
        let want: Vec<usize> = (width..=stream.len())
            .filter(|&e| &stream[e - width..e] == piece)
            .collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn state_is_constant_across_sizes() {
    let mut peaks = Vec::new();
    for n in [100usize, 1000, 10_000] {
        let text: Vec<u8> = (0..n).map(|i| b"ab"[(i * i / 7) % 2]).collect();
        let pattern = text[n / 3..n / 2].to_vec();
        let (t, ctx) = setup(&text, 1);
        let r = match_run(&t, &ctx, &mut CharStream::from_bytes(pattern), Mode::Randomized).unwrap();
        peaks.push(r.peak_words);
    }
    assert!(peaks.windows(2).all(|w| w[0] == w[1]), "{peaks:?}");
}

#[test]
fn file_backed_text_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t");
    let text: Vec<u8> = (0..5000).map(|i| b"acgt"[(i * 31 + i / 13) % 4]).collect();
    std::fs::write(&path, &text).unwrap();
    let t = TextOracle::open(&path).unwrap();
    let ctx = FingerprintContext::new(AlphabetMap::from_text(&t).unwrap(), text.len(), 4);
    for at in [0usize, 17, 2500, 4980] {
        let pattern = text[at..at + 20].to_vec();
        let r = match_run(&t, &ctx, &mut CharStream::from_bytes(pattern.clone()), Mode::Verified).unwrap();
        assert_eq!(r.outcome, brute::match_outcome(&text, &pattern));
    }
}

#[test]
fn verified_survives_a_tiny_modulus() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(235);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=60);
        let text: Vec<u8> = (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
        let m = rng.gen_range(0..=8);
        let pattern: Vec<u8> = (0..m).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
        let t = TextOracle::from_bytes(text.clone());
        let ctx = FingerprintContext::with_modulus(AlphabetMap::from_bytes(b"ab"), 5).unwrap();
        let r = match_run(&t, &ctx, &mut CharStream::from_bytes(pattern.clone()), Mode::Verified).unwrap();
        assert_eq!(r.outcome, brute::match_outcome(&text, &pattern), "{text:?} {pattern:?}");
    }
}
