use asymstream::brute;
use asymstream::model::TextOracle;
use asymstream::wildcard::{
    adversarial_instance, convolution_wildcard_oracle, naive_wildcard_oracle, sampled_wildcard_match,
    ConvolutionOracle, NaiveOracle, WildcardPattern,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn symbols(max: usize) -> impl Strategy<Value = Vec<Option<u8>>> {
    proptest::collection::vec(prop::option::weighted(0.7, prop::sample::select(b"abc".to_vec())), 0..max)
}

fn text(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(prop::sample::select(b"abc".to_vec()), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracles_agree(p in symbols(10), t in text(80)) {
        let p = WildcardPattern::from_symbols(p);
        prop_assert_eq!(convolution_wildcard_oracle(&p, &t), naive_wildcard_oracle(&p, &t));
    }

    #[test]
    fn no_wildcards_is_exact_matching(p in text(6), t in text(60)) {
        let bits = convolution_wildcard_oracle(&WildcardPattern::parse(&p, b'?'), &t);
        prop_assert_eq!(bits.first(), if p.len() <= t.len() { brute::leftmost_occurrence(&t, &p) } else { None });
    }

    #[test]
    fn sampled_agrees_with_truth(p in symbols(8), t in text(120), s in 1usize..200) {
        let p = WildcardPattern::from_symbols(p);
        let truth = naive_wildcard_oracle(&p, &t).positions();
        let o = TextOracle::from_bytes(t.clone());
        for r in [
            sampled_wildcard_match(&o, &p, s, &mut NaiveOracle).unwrap(),
            sampled_wildcard_match(&o, &p, s, &mut ConvolutionOracle::new()).unwrap(),
        ] {
            match r.position {
                Some(pos) => prop_assert!(p.is_empty() || truth.contains(&pos)),
                None => prop_assert!(truth.is_empty()),
            }
        }
    }
}

#[test]
fn exhaustive_tiny_inputs() {
    // Every binary text up to length 8 against every pattern over {0, 1, ?}
    // up to length 3.
    let mut patterns = vec![Vec::new()];
    for len in 1..=3 {
        let mut next = Vec::new();
        for p in patterns.iter().filter(|p: &&Vec<Option<u8>>| p.len() == len - 1) {
            for s in [Some(b'0'), Some(b'1'), None] {
                let mut q = p.clone();
                q.push(s);
                next.push(q);
            }
        }
        patterns.extend(next);
    }
    for n in 0..=8 {
        for mask in 0u32..(1 << n) {
            let t: Vec<u8> = (0..n).map(|i| if mask >> i & 1 == 1 { b'1' } else { b'0' }).collect();
            for p in &patterns {
                let p = WildcardPattern::from_symbols(p.clone());
                assert_eq!(convolution_wildcard_oracle(&p, &t), naive_wildcard_oracle(&p, &t));
            }
        }
    }
}

#[test]
fn adversarial_indicator_random_large() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    for _ in 0..400 {
        let kk = rng.gen_range(9..=16);
        let i = rng.gen_range(1..=kk);
        let wild: Vec<usize> = (1..=kk).filter(|_| rng.gen_bool(0.5)).collect();
        let (t, p) = adversarial_instance(kk, i, &wild);
        assert_eq!(naive_wildcard_oracle(&p, &t).first().is_some(), wild.contains(&i));
        assert_eq!(convolution_wildcard_oracle(&p, &t).first().is_some(), wild.contains(&i));
    }
}

#[test]
fn peak_words_scale_with_budget() {
    let n = 1 << 12;
    let t: Vec<u8> = (0..n).map(|i| b"01"[i % 2]).collect();
    let o = TextOracle::from_bytes(t);
    let p = WildcardPattern::parse(&[b'1'; 16], b'?');
    let peaks: Vec<f64> = [16usize, 128, 1024]
        .iter()
        .map(|&s| sampled_wildcard_match(&o, &p, s, &mut ConvolutionOracle::new()).unwrap().peak_words as f64 / s as f64)
        .collect();
    let (lo, hi) = peaks.iter().fold((f64::MAX, 0f64), |(l, h), &x| (l.min(x), h.max(x)));
    assert!(hi / lo <= 4.0, "{peaks:?}");
}
