use super::WildcardPattern;

/// Hard instance for streaming the pattern: text `1^kk 0 1^kk 0`, pattern
/// `a_1 .. a_kk 1^i 0` with `a_j` a wildcard for `j` in `wild` and `1`
/// otherwise. The pattern occurs iff `i` is in `wild`, so a one-pass reader
/// of the pattern must remember all of `a_1 .. a_kk`.
pub fn adversarial_instance(kk: usize, i: usize, wild: &[usize]) -> (Vec<u8>, WildcardPattern) {
    assert!((1..=kk).contains(&i), "probe index out of range");
    assert!(wild.iter().all(|j| (1..=kk).contains(j)), "wildcard position out of range");
    let mut text = vec![b'1'; kk];
    text.push(b'0');
    text.extend(std::iter::repeat_n(b'1', kk));
    text.push(b'0');
    let mut symbols: Vec<Option<u8>> = (1..=kk)
        .map(|j| if wild.contains(&j) { None } else { Some(b'1') })
        .collect();
    symbols.extend(std::iter::repeat_n(Some(b'1'), i));
    symbols.push(Some(b'0'));
    (text, WildcardPattern::from_symbols(symbols))
}
