//! Positional fingerprints modulo a random prime.
//!
//! A string `S` over an alphabet of size `sigma` is fingerprinted as
//! `sum_i sigma^(i-1) * f(S[i]) mod q`, where `f` is the dense alphabet map
//! and `q` is a prime drawn from `(M^2, 2 M^2]`, `M = max(n, sigma)`.
//! Fingerprints grow on either end and slide in O(1) time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{contract, invalid, Error, Result};
use crate::model::{AlphabetMap, TextAccess};
use crate::prime::{add_mod, is_prime, mul_mod, pow_mod, sub_mod};

/// Largest modulus width supported; keeps `2q` inside a `u64`.
pub const MAX_MODULUS_BITS: u32 = 62;

/// Words of scalar state a context contributes to a session (q, base, base inverse).
pub const CONTEXT_WORDS: usize = 3;

/// Draws a prime uniformly from `(M^2, 2 M^2]` with `M = max(n, base)`.
///
/// When `2 M^2` would exceed `2^62` the range is clamped to `(2^61, 2^62]`.
pub fn select_modulus(n: usize, base: u64, seed: u64) -> u64 {
    let m = (n as u128).max(base as u128).max(1);
    let cap = 1u128 << (MAX_MODULUS_BITS - 1);
    let (lo, hi) = if m * m > cap {
        (cap, cap << 1)
    } else {
        (m * m, 2 * m * m)
    };
    sample_prime(lo as u64, hi as u64, seed)
}

/// Draws a prime uniformly from `(max(2^(bits-1), base), 2^bits]`.
pub fn select_modulus_bits(bits: u32, base: u64, seed: u64) -> Result<u64> {
    if !(2..=MAX_MODULUS_BITS).contains(&bits) {
        return Err(invalid(format!(
            "modulus bits must be in 2..={MAX_MODULUS_BITS}, got {bits}"
        )));
    }
    let hi = 1u64 << bits;
    let lo = (1u64 << (bits - 1)).max(base);
    if lo >= hi || !(lo + 1..=hi).any(is_prime) {
        return Err(invalid(format!(
            "no prime above alphabet size {base} fits in {bits} bits"
        )));
    }
    Ok(sample_prime(lo, hi, seed))
}

/// Rejection sampling of a uniform prime in `(lo, hi]`. Bertrand's postulate
/// guarantees one exists whenever `hi >= 2 lo`.
fn sample_prime(lo: u64, hi: u64, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let x = rng.gen_range(lo + 1..=hi);
        if is_prime(x) {
            return x;
        }
    }
}

/// Fingerprint of a string: residue, character count, and `base^len mod q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub value: u64,
    pub len: usize,
    pub base_pow: u64,
}

impl Fingerprint {
    pub const EMPTY: Fingerprint = Fingerprint {
        value: 0,
        len: 0,
        base_pow: 1,
    };
}

/// Modulus, base and alphabet map shared by every fingerprint of one run.
#[derive(Clone, Debug)]
pub struct FingerprintContext {
    q: u64,
    base: u64,
    inv_base: u64,
    alphabet: AlphabetMap,
}

impl FingerprintContext {
    /// Context for a text of length `n`, with the modulus drawn by
    /// [`select_modulus`].
    pub fn new(alphabet: AlphabetMap, n: usize, seed: u64) -> Self {
        let base = base_of(&alphabet);
        let q = select_modulus(n, base, seed);
        Self::build(alphabet, q)
    }

    /// Context with a modulus of the given bit width.
    pub fn with_modulus_bits(alphabet: AlphabetMap, bits: u32, seed: u64) -> Result<Self> {
        let base = base_of(&alphabet);
        let q = select_modulus_bits(bits, base, seed)?;
        Ok(Self::build(alphabet, q))
    }

    /// Context with an explicit prime modulus larger than the base.
    pub fn with_modulus(alphabet: AlphabetMap, q: u64) -> Result<Self> {
        let base = base_of(&alphabet);
        if !is_prime(q) || q <= base || q >= 1 << MAX_MODULUS_BITS {
            return Err(invalid(format!(
                "modulus {q} must be a prime in ({base}, 2^{MAX_MODULUS_BITS})"
            )));
        }
        Ok(Self::build(alphabet, q))
    }

    fn build(alphabet: AlphabetMap, q: u64) -> Self {
        let base = base_of(&alphabet);
        let inv_base = pow_mod(base, q - 2, q);
        FingerprintContext {
            q,
            base,
            inv_base,
            alphabet,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn inv_base(&self) -> u64 {
        self.inv_base
    }

    pub fn alphabet(&self) -> &AlphabetMap {
        &self.alphabet
    }

    /// Alphabet value `f(c)`, if `c` belongs to the alphabet.
    #[inline]
    pub fn digit(&self, c: u8) -> Option<u64> {
        self.alphabet.index_of(c)
    }

    fn digit_checked(&self, c: u8) -> Result<u64> {
        self.digit(c).ok_or(Error::NotInAlphabet(c))
    }

    pub fn hash(&self, s: &[u8]) -> Result<Fingerprint> {
        s.iter()
            .try_fold(Fingerprint::EMPTY, |fp, &c| self.append_right(fp, c))
    }

    pub fn append_right(&self, fp: Fingerprint, c: u8) -> Result<Fingerprint> {
        Ok(self.push_digit(fp, self.digit_checked(c)?))
    }

    pub fn prepend_left(&self, c: u8, fp: Fingerprint) -> Result<Fingerprint> {
        let d = self.digit_checked(c)?;
        Ok(Fingerprint {
            value: add_mod(d, mul_mod(self.base, fp.value, self.q), self.q),
            len: fp.len + 1,
            base_pow: mul_mod(fp.base_pow, self.base, self.q),
        })
    }

    /// Shifts the hashed window one position right: drops `out_char` from the
    /// left end and appends `in_char` on the right. `out_char` must be the
    /// window's true first character.
    pub fn slide_window(&self, fp: Fingerprint, out_char: u8, in_char: u8) -> Result<Fingerprint> {
        if fp.len == 0 {
            return Err(contract("cannot slide an empty window"));
        }
        let out = self.digit_checked(out_char)?;
        let inc = self.digit_checked(in_char)?;
        Ok(self.slide_digits(fp, out, inc))
    }

    #[inline]
    pub(crate) fn push_digit(&self, fp: Fingerprint, d: u64) -> Fingerprint {
        Fingerprint {
            value: add_mod(fp.value, mul_mod(fp.base_pow, d, self.q), self.q),
            len: fp.len + 1,
            base_pow: mul_mod(fp.base_pow, self.base, self.q),
        }
    }

    /// `((value - out) + base^len * in) * base^-1`, which equals
    /// `(value - out) / base + base^(len-1) * in`.
    #[inline]
    pub(crate) fn slide_digits(&self, fp: Fingerprint, out: u64, inc: u64) -> Fingerprint {
        let shifted = add_mod(
            sub_mod(fp.value, out, self.q),
            mul_mod(fp.base_pow, inc, self.q),
            self.q,
        );
        Fingerprint {
            value: mul_mod(shifted, self.inv_base, self.q),
            ..fp
        }
    }

    /// Removes the first character (value `d`) of a nonempty fingerprint.
    #[inline]
    pub(crate) fn drop_left_digit(&self, fp: Fingerprint, d: u64) -> Fingerprint {
        debug_assert!(fp.len > 0);
        Fingerprint {
            value: mul_mod(sub_mod(fp.value, d, self.q), self.inv_base, self.q),
            len: fp.len - 1,
            base_pow: mul_mod(fp.base_pow, self.inv_base, self.q),
        }
    }

    /// Removes the last character (value `d`) of a nonempty fingerprint.
    #[inline]
    pub(crate) fn drop_right_digit(&self, fp: Fingerprint, d: u64) -> Fingerprint {
        debug_assert!(fp.len > 0);
        let base_pow = mul_mod(fp.base_pow, self.inv_base, self.q);
        Fingerprint {
            value: sub_mod(fp.value, mul_mod(d, base_pow, self.q), self.q),
            len: fp.len - 1,
            base_pow,
        }
    }

    /// Alphabet value of `T[i]`; the text must be over this alphabet.
    #[inline]
    pub(crate) fn digit_at<A: TextAccess + ?Sized>(&self, text: &A, i: usize) -> Result<u64> {
        self.digit_checked(text.read(i)?)
    }
}

fn base_of(alphabet: &AlphabetMap) -> u64 {
    alphabet.sigma().max(1) as u64
}

/// Fingerprint of `T[i..=j]` by repeated appends; `i == j + 1` is the empty
/// substring.
pub fn substring_hash<A: TextAccess + ?Sized>(
    text: &A,
    i: usize,
    j: usize,
    ctx: &FingerprintContext,
) -> Result<Fingerprint> {
    if i == 0 || i > j + 1 || j > text.len() {
        return Err(Error::OutOfRange {
            index: if i == 0 { 0 } else { j },
            len: text.len(),
        });
    }
    (i..=j).try_fold(Fingerprint::EMPTY, |fp, k| {
        Ok(ctx.push_digit(fp, ctx.digit_at(text, k)?))
    })
}
