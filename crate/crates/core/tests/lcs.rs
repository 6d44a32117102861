use asymstream::brute;
use asymstream::hashing::FingerprintContext;
use asymstream::lcs::{
    guess_ladder, lcs_approx_decide, lcs_approx_logrounds, lcs_approx_multipass, lcs_exact, ApproxConfig,
    Decision, LcsSession,
};
use asymstream::model::{AlphabetMap, CharStream, TextOracle};
use asymstream::pattern_match::Mode;
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
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_equals_brute(a in strings(b"abc", 60), b in strings(b"abcd", 60), seed in any::<u64>()) {
        let (t, ctx) = setup(&a, seed);
        let r = lcs_exact(&t, &ctx, &mut CharStream::from_bytes(b.clone()), Mode::Verified).unwrap();
        prop_assert_eq!(r.length, brute::lcs_length(&a, &b));
        prop_assert_eq!(r.passes, 1);
        if let Some((ell, end)) = r.interval {
            prop_assert!(brute::occurs(&b, &a[ell - 1..end]));
        }
    }

    #[test]
    fn window_is_the_longest_suffix(a in strings(b"ab", 40), b in strings(b"abc", 40)) {
        let (t, ctx) = setup(&a, 5);
        let mut s = LcsSession::new(&t, &ctx, Mode::Verified);
        let mut prev = 0usize;
        for k in 1..=b.len() {
            let step = s.push(b[k - 1]).unwrap();
            let len = step.window.map_or(0, |(l, r)| r + 1 - l);
            prop_assert_eq!(len, brute::longest_suffix_in_text(&a, &b[..k]));
            prop_assert!(len <= prev + 1);
            if let Some((l, r)) = step.window {
                prop_assert_eq!(&a[l - 1..r], &b[k - len..k]);
            }
            prev = len;
        }
        prop_assert!(s.meter().peak_words() <= 48);
    }

    #[test]
    fn decide_is_sound_and_complete(a in strings(b"ab", 50), b in strings(b"ab", 50), d in 1usize..20, eps in 0.1f64..0.6) {
        let (t, ctx) = setup(&a, 8);
        let opt = brute::lcs_length(&a, &b);
        let cfg = ApproxConfig::new(eps, 0.5, d).unwrap();
        let r = lcs_approx_decide(&t, &ctx, &mut CharStream::from_bytes(b.clone()), &cfg, Mode::Verified).unwrap();
        match r.decision {
            Decision::FoundLength(l) => prop_assert!(l == cfg.probe_length && l <= opt),
            Decision::NotFound => prop_assert!(opt < d),
        }
        prop_assert!(r.max_alive <= cfg.instance_cap());
    }

    #[test]
    fn approx_sandwich(a in strings(b"ab", 80), b in strings(b"ab", 80), eps in 0.1f64..0.5, kappa in 0.2f64..0.9) {
        let (t, ctx) = setup(&a, 2);
        let opt = brute::lcs_length(&a, &b) as f64;
        let lo = (1.0 - eps) * (1.0 - eps) * opt - 1e-9;
        let r = lcs_approx_logrounds(&t, &ctx, &mut CharStream::from_bytes(b.clone()), eps, Mode::Verified).unwrap();
        prop_assert!(r.length as f64 >= lo && r.length as f64 <= opt);
        prop_assert!(r.passes as usize <= guess_ladder(a.len(), eps).len().max(1));
        let r = lcs_approx_multipass(&t, &ctx, &mut CharStream::from_bytes(b.clone()), eps, kappa, Mode::Verified).unwrap();
        prop_assert!(r.length as f64 >= lo && r.length as f64 <= opt);
        prop_assert!(r.passes as f64 <= (1.0 / kappa).ceil() + 1.0);
    }
}

#[test]
fn planted_instance_is_recovered() {
    use asymstream::harness::gen::{planted_lcs, rng_for};
    let p = planted_lcs(&mut rng_for(12), 1024, 1024, 100, 26);
    let opt = brute::lcs_length(&p.text, &p.stream);
    assert!(opt >= 100);
    let (t, ctx) = setup(&p.text, 12);
    let r = lcs_exact(&t, &ctx, &mut CharStream::from_bytes(p.stream.clone()), Mode::Randomized).unwrap();
    assert_eq!(r.length, opt);
    let r = lcs_approx_multipass(&t, &ctx, &mut CharStream::from_bytes(p.stream.clone()), 0.1, 0.5, Mode::Verified)
        .unwrap();
    assert!(r.length as f64 >= 0.81 * opt as f64 && r.length <= opt, "{} vs {opt}", r.length);
    assert!(r.passes <= 3);
}

#[test]
fn no_common_character() {
    let (t, ctx) = setup(&[b'a'; 64], 1);
    let r = lcs_approx_logrounds(&t, &ctx, &mut CharStream::from_bytes(vec![b'b'; 64]), 0.5, Mode::Verified).unwrap();
    assert_eq!((r.length, r.passes), (0, 7));
}
