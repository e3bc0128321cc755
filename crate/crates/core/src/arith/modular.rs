use crate::{Error, Result};

/// `(a * b) mod m` through a 128-bit product.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(mulmod_unchecked(a, b, m))
}

#[inline]
pub(crate) fn mulmod_unchecked(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 << 32 && a < m && b < m {
        // both operands < 2^32, the product fits in 64 bits
        return (a * b) % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `b^e mod m` by square-and-multiply. `powmod(b, 0, m) = 1 mod m`.
pub fn powmod(b: u64, e: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(powmod_unchecked(b, e, m))
}

pub(crate) fn powmod_unchecked(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_unchecked(acc, base, m);
        }
        base = mulmod_unchecked(base, base, m);
        e >>= 1;
    }
    acc
}

pub const fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `m` (any `m >= 1`), if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a signed value into `0..m`.
pub fn normalize(v: i64, m: u64) -> u64 {
    (v as i128).rem_euclid(m as i128) as u64
}
