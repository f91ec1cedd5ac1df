//! Number-theoretic transform modulo 998244353 = 119·2²³ + 1.

pub const MODULUS: u64 = 998_244_353;
const GENERATOR: u64 = 3;

/// Longest supported transform: the multiplicative group has a 2²³-th root
/// of unity.
pub const MAX_LEN: usize = 1 << 23;

pub fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= MODULUS;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % MODULUS;
        }
        base = base * base % MODULUS;
        exp >>= 1;
    }
    acc
}

/// In-place transform of a power-of-two length slice with entries `< MODULUS`.
pub fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    assert!(n.is_power_of_two() && n <= MAX_LEN);
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(GENERATOR, (MODULUS - 1) / len as u64);
        if invert {
            w = pow_mod(w, MODULUS - 2);
        }
        let half = len / 2;
        let mut roots = Vec::with_capacity(half);
        let mut cur = 1u64;
        for _ in 0..half {
            roots.push(cur);
            cur = cur * w % MODULUS;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((x, y), &r) in lo.iter_mut().zip(hi.iter_mut()).zip(&roots) {
                let u = *x;
                let v = *y * r % MODULUS;
                *x = if u + v >= MODULUS { u + v - MODULUS } else { u + v };
                *y = if u >= v { u - v } else { u + MODULUS - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, MODULUS - 2);
        for x in a.iter_mut() {
            *x = *x * inv % MODULUS;
        }
    }
}

/// Product of two polynomials, coefficients reduced modulo [`MODULUS`].
pub fn multiply(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out = a.len() + b.len() - 1;
    let n = out.next_power_of_two();
    let mut fa: Vec<u64> = a.iter().map(|&x| x % MODULUS).collect();
    let mut fb: Vec<u64> = b.iter().map(|&x| x % MODULUS).collect();
    fa.resize(n, 0);
    fb.resize(n, 0);
    transform(&mut fa, false);
    transform(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MODULUS;
    }
    transform(&mut fa, true);
    fa.truncate(out);
    fa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % MODULUS;
            }
        }
        c
    }

    #[test]
    fn small_products() {
        assert_eq!(multiply(&[1, 1], &[1, 1]), vec![1, 2, 1]);
        assert_eq!(multiply(&[3], &[4, 5]), vec![12, 15]);
        let a: Vec<u64> = (0..37).map(|i| (i * i * 7919) % 1000).collect();
        let b: Vec<u64> = (0..53).map(|i| (i * 104_729 + 3) % 977).collect();
        assert_eq!(multiply(&a, &b), naive(&a, &b));
    }

    #[test]
    fn round_trip() {
        let mut a: Vec<u64> = (0..64).collect();
        transform(&mut a, false);
        transform(&mut a, true);
        assert_eq!(a, (0..64).collect::<Vec<u64>>());
    }
}
