use crate::arith::{is_prime, powmod_unchecked, PrimeContext};
use crate::{Error, Result};

/// Largest prime for which a full histogram is held in memory.
pub const HISTOGRAM_CAP: u64 = 1 << 27;

/// Largest prime accepted by the quadratic pair oracle for `M(p)`.
pub const PAIR_ORACLE_CAP: u64 = 500;

/// `x^x mod p`, exponent reduced mod `p - 1`.
#[inline]
fn self_power(x: u64, p: u64) -> u64 {
    powmod_unchecked(x, x % (p - 1), p)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `N(p;a)`: the number of `1 <= x <= p - 1` with `x^x = a (mod p)`, by
/// direct enumeration.
pub fn n_count(p: u64, a: u64) -> Result<u64> {
    check_prime(p)?;
    let a = a % p;
    if a == 0 {
        return Ok(0);
    }
    Ok((1..p).filter(|&x| self_power(x, p) == a).count() as u64)
}

/// [`n_count`] through the context's tables when it has them.
pub fn n_count_ctx(ctx: &PrimeContext, a: u64) -> u64 {
    let p = ctx.p();
    let a = a % p;
    if a == 0 {
        return 0;
    }
    (1..p).filter(|&x| ctx.self_power(x) == a).count() as u64
}

/// Same as [`n_count`] for a signed residue.
pub fn n_count_signed(p: u64, a: i64) -> Result<u64> {
    n_count(p, crate::arith::normalize(a, p))
}

/// All values `N(p;a)` for `a = 1..p-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountHistogram {
    p: u64,
    /// Entry `a - 1` holds `N(p;a)`.
    counts: Vec<u32>,
}

impl CountHistogram {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, a: u64) -> u64 {
        match a % self.p {
            0 => 0,
            r => self.counts[(r - 1) as usize] as u64,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `M(p) = sum_a N(p;a)^2`.
    pub fn sum_of_squares(&self) -> u64 {
        self.counts.iter().map(|&c| (c as u64) * (c as u64)).sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0) as u64
    }

    /// Number of residues hit at least once.
    pub fn distinct(&self) -> u64 {
        self.counts.iter().filter(|&&c| c > 0).count() as u64
    }
}

/// One pass over `x = 1..p-1`, bumping the bucket of `x^x mod p`.
pub fn histogram(ctx: &PrimeContext) -> Result<CountHistogram> {
    let p = ctx.p();
    if p > HISTOGRAM_CAP {
        return Err(Error::HistogramTooLarge {
            p,
            cap: HISTOGRAM_CAP,
        });
    }
    let mut counts = vec![0u32; (p - 1) as usize];
    for x in 1..p {
        counts[(ctx.self_power(x) - 1) as usize] += 1;
    }
    Ok(CountHistogram { p, counts })
}

/// Histogram by per-`x` square-and-multiply, bypassing the context tables.
/// Entry `a - 1` is exactly [`n_count`]`(p, a)`.
pub fn histogram_direct(p: u64) -> Result<CountHistogram> {
    check_prime(p)?;
    if p > HISTOGRAM_CAP {
        return Err(Error::HistogramTooLarge {
            p,
            cap: HISTOGRAM_CAP,
        });
    }
    let mut counts = vec![0u32; (p - 1) as usize];
    for x in 1..p {
        counts[(self_power(x, p) - 1) as usize] += 1;
    }
    Ok(CountHistogram { p, counts })
}

/// `M(p)`, the number of pairs with `x^x = y^y (mod p)`, from the histogram.
pub fn symmetric_count(ctx: &PrimeContext) -> Result<u64> {
    Ok(histogram(ctx)?.sum_of_squares())
}

/// `M(p)` by enumerating all `(p - 1)^2` pairs. Capped at
/// [`PAIR_ORACLE_CAP`].
pub fn symmetric_count_pairs(p: u64) -> Result<u64> {
    check_prime(p)?;
    if p > PAIR_ORACLE_CAP {
        return Err(Error::OracleTooLarge {
            p,
            cap: PAIR_ORACLE_CAP,
        });
    }
    let values: Vec<u64> = (1..p).map(|x| self_power(x, p)).collect();
    let mut pairs = 0;
    for &u in &values {
        for &v in &values {
            if u == v {
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}

/// Solutions of `x^(x-1) = 1 (mod p)` in `1..p-1`.
pub fn fixed_points(ctx: &PrimeContext) -> u64 {
    let p = ctx.p();
    (1..p).filter(|&x| ctx.power_of_self(x, x - 1) == 1).count() as u64
}

/// Number of distinct values of `x^x mod p` on `1..p-1`.
pub fn crocker_distinct(ctx: &PrimeContext) -> Result<u64> {
    Ok(histogram(ctx)?.distinct())
}

/// `floor(sqrt((p - 1) / 2))`, the guaranteed minimum of [`crocker_distinct`].
pub fn crocker_floor(p: u64) -> u64 {
    let m = (p - 1) / 2;
    let mut r = (m as f64).sqrt() as u64;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

/// An explicit solution of `x^x = a (mod p)` with `x` taken mod `p(p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftResult {
    pub p: u64,
    pub a: u64,
    pub g: u64,
    pub x: u128,
    pub verified: bool,
}

/// `x = p * ind(a) - (p - 1) * g (mod p(p - 1))`, then checks
/// `(x mod p)^(x mod (p - 1)) = a (mod p)`.
pub fn lift_solution(ctx: &PrimeContext, a: u64) -> Result<LiftResult> {
    let p = ctx.p();
    let a = a % p;
    let v = ctx.ind(a)?;
    let g = ctx.g();
    let modulus = p as u128 * (p - 1) as u128;
    let pos = p as u128 * v as u128 % modulus;
    let neg = (p - 1) as u128 * g as u128 % modulus;
    let x = (pos + modulus - neg) % modulus;

    let base = (x % p as u128) as u64;
    let exp = (x % (p - 1) as u128) as u64;
    let reduced = base != 0 && powmod_unchecked(base, exp, p) == a;
    // the full exponent must agree with the Fermat-reduced one
    let full = powmod_u128(base, x, p) == a;
    Ok(LiftResult {
        p,
        a,
        g,
        x,
        verified: reduced && full,
    })
}

fn powmod_u128(b: u64, e: u128, m: u64) -> u64 {
    let hi = (e >> 64) as u64;
    let lo = e as u64;
    // b^e = (b^(2^64))^hi * b^lo
    let mut b64 = b % m;
    for _ in 0..64 {
        b64 = crate::arith::mulmod_unchecked(b64, b64, m);
    }
    crate::arith::mulmod_unchecked(powmod_unchecked(b64, hi, m), powmod_unchecked(b, lo, m), m)
}
