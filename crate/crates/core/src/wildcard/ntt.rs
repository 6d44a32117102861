//! Exact cyclic convolution over the prime field `Z_P`, `P = 29 * 2^57 + 1`.
//!
//! Multiplication uses Montgomery form with `R = 2^64`.

pub const P: u64 = 4_179_340_454_199_820_289;
const PRIMITIVE_ROOT: u64 = 3;
/// Largest power of two dividing `P - 1`.
pub const MAX_LOG_LEN: u32 = 57;

/// `-P^{-1} mod 2^64`.
const NEG_INV: u64 = {
    let mut inv: u64 = 1;
    let mut i = 0;
    while i < 6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(P.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
};

/// `R^2 mod P`, for converting into Montgomery form.
const R2: u64 = {
    let r = (1u128 << 64) % P as u128;
    ((r * r) % P as u128) as u64
};

#[inline(always)]
fn redc(t: u128) -> u64 {
    let m = (t as u64).wrapping_mul(NEG_INV);
    let u = ((t + m as u128 * P as u128) >> 64) as u64;
    if u >= P {
        u - P
    } else {
        u
    }
}

#[inline(always)]
fn mont_mul(a: u64, b: u64) -> u64 {
    redc(a as u128 * b as u128)
}

#[inline(always)]
fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline(always)]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn to_mont(a: u64) -> u64 {
    mont_mul(a % P, R2)
}

#[inline]
pub fn from_mont(a: u64) -> u64 {
    redc(a as u128)
}

fn mont_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = to_mont(1);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mont_mul(acc, base);
        }
        base = mont_mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Transform plans for power-of-two lengths, with cached twiddles.
#[derive(Default)]
pub struct Ntt {
    /// Entry `k` holds the `2^k` twiddles for stage size `2^(k+1)`, in
    /// Montgomery form.
    fwd: Vec<Vec<u64>>,
    inv: Vec<Vec<u64>>,
}

impl Ntt {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure(&mut self, log_len: u32) {
        assert!(log_len <= MAX_LOG_LEN, "transform too long");
        while (self.fwd.len() as u32) < log_len {
            let k = self.fwd.len() as u32;
            let half = 1usize << k;
            let w = mont_pow(to_mont(PRIMITIVE_ROOT), (P - 1) >> (k + 1));
            let w_inv = mont_pow(w, P - 2);
            let mut f = Vec::with_capacity(half);
            let mut g = Vec::with_capacity(half);
            let (mut x, mut y) = (to_mont(1), to_mont(1));
            for _ in 0..half {
                f.push(x);
                g.push(y);
                x = mont_mul(x, w);
                y = mont_mul(y, w_inv);
            }
            self.fwd.push(f);
            self.inv.push(g);
        }
    }

    /// In-place transform of Montgomery-form values. `inverse` includes the
    /// `1/len` scaling.
    pub fn transform(&mut self, a: &mut [u64], inverse: bool) {
        let len = a.len();
        assert!(len.is_power_of_two());
        let log_len = len.trailing_zeros();
        self.ensure(log_len);
        let mut j = 0;
        for i in 1..len {
            let mut bit = len >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let tables = if inverse { &self.inv } else { &self.fwd };
        for (k, tw) in tables.iter().enumerate().take(log_len as usize) {
            let half = 1usize << k;
            for block in a.chunks_exact_mut(half << 1) {
                let (lo, hi) = block.split_at_mut(half);
                for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                    let t = mont_mul(*y, w);
                    *y = sub(*x, t);
                    *x = add(*x, t);
                }
            }
        }
        if inverse {
            let scale = mont_pow(to_mont(len as u64), P - 2);
            a.iter_mut().for_each(|x| *x = mont_mul(*x, scale));
        }
    }

    /// Pointwise product in the transformed domain.
    pub fn mul_assign(a: &mut [u64], b: &[u64]) {
        a.iter_mut().zip(b).for_each(|(x, &y)| *x = mont_mul(*x, y));
    }

    pub fn add_assign(a: &mut [u64], b: &[u64]) {
        a.iter_mut().zip(b).for_each(|(x, &y)| *x = add(*x, y));
    }

    pub fn sub_assign(a: &mut [u64], b: &[u64]) {
        a.iter_mut().zip(b).for_each(|(x, &y)| *x = sub(*x, y));
    }
}

/// Linear convolution of sequences whose true products stay below `P`.
pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let len = out_len.next_power_of_two();
    let mut fa = vec![0; len];
    let mut fb = vec![0; len];
    fa.iter_mut().zip(a).for_each(|(x, &v)| *x = to_mont(v));
    fb.iter_mut().zip(b).for_each(|(x, &v)| *x = to_mont(v));
    let mut ntt = Ntt::new();
    ntt.transform(&mut fa, false);
    ntt.transform(&mut fb, false);
    Ntt::mul_assign(&mut fa, &fb);
    ntt.transform(&mut fa, true);
    fa.truncate(out_len);
    fa.iter_mut().for_each(|x| *x = from_mont(*x));
    fa
}
