use std::collections::HashMap;

use super::modular::{mod_inverse, mulmod_unchecked, powmod_unchecked};
use super::prime::{factorize, is_prime, Factorization};
use crate::{Error, Result};

/// Primes up to this bound get a full index table by default.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlogMode {
    Table,
    PohligHellman,
}

/// Discrete log and power tables for `p <= 2^32`.
#[derive(Debug, Clone)]
struct Tables {
    /// `ind[a - 1]` is the index of `a`.
    ind: Vec<u32>,
    /// `pow[v]` is `g^v mod p`.
    pow: Vec<u32>,
}

/// A prime together with the factorization of `p - 1`, its smallest
/// primitive root and a discrete-log backend.
///
/// Immutable once built and `Sync`, so workers can share one.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    pm1: Factorization,
    g: u64,
    tables: Option<Tables>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_threshold(p, DEFAULT_TABLE_THRESHOLD)
    }

    /// Builds the context, tabulating logarithms when `p <= table_threshold`.
    pub fn with_threshold(p: u64, table_threshold: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pm1 = factorize(p - 1);
        let g = find_primitive_root(p, &pm1);
        // u32 entries; the threshold never lets a table past 2^32
        let tables = (p <= table_threshold && p <= u32::MAX as u64).then(|| build_tables(p, g));
        Ok(PrimeContext { p, pm1, g, tables })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn pm1_factors(&self) -> &Factorization {
        &self.pm1
    }

    pub fn mode(&self) -> DlogMode {
        if self.tables.is_some() {
            DlogMode::Table
        } else {
            DlogMode::PohligHellman
        }
    }

    /// Index table, entry `a - 1` holding `ind a`.
    pub fn index_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.ind.as_slice())
    }

    /// Overwrites one index-table entry. Only meant for fault-injection
    /// tests of the identity checks; leaves the context inconsistent.
    #[doc(hidden)]
    pub fn corrupt_index(&mut self, a: u64, v: u32) {
        if let Some(t) = self.tables.as_mut() {
            t.ind[(a - 1) as usize] = v;
        }
    }

    /// Least `t >= 1` with `a^t = 1 (mod p)`, by descending the divisor
    /// lattice of `p - 1`.
    pub fn mult_order(&self, a: u64) -> Result<u64> {
        let a = self.unit(a)?;
        let mut t = self.p - 1;
        for &(q, e) in self.pm1.factors() {
            for _ in 0..e {
                if powmod_unchecked(a, t / q, self.p) == 1 {
                    t /= q;
                } else {
                    break;
                }
            }
        }
        Ok(t)
    }

    /// Discrete logarithm of `a` to base `g`, in `0..p-1`.
    pub fn ind(&self, a: u64) -> Result<u64> {
        let a = self.unit(a)?;
        match &self.tables {
            Some(t) => Ok(t.ind[(a - 1) as usize] as u64),
            None => self.pohlig_hellman(a),
        }
    }

    /// `g^v mod p`.
    pub fn pow_g(&self, v: u64) -> u64 {
        let n = self.p - 1;
        match &self.tables {
            Some(t) => t.pow[(v % n) as usize] as u64,
            None => powmod_unchecked(self.g, v, self.p),
        }
    }

    /// `x^x mod p` for `1 <= x <= p - 1`, with the exponent reduced mod `p - 1`.
    #[inline]
    pub fn self_power(&self, x: u64) -> u64 {
        self.power_of_self(x, x)
    }

    /// `x^e mod p` for a unit `x`, through the tables when present.
    #[inline]
    pub fn power_of_self(&self, x: u64, e: u64) -> u64 {
        let n = self.p - 1;
        match &self.tables {
            Some(t) => {
                let v = t.ind[(x - 1) as usize] as u64 * (e % n) % n;
                t.pow[v as usize] as u64
            }
            None => powmod_unchecked(x, e % n, self.p),
        }
    }

    fn unit(&self, a: u64) -> Result<u64> {
        let r = a % self.p;
        if r == 0 {
            return Err(Error::NotUnit { a, p: self.p });
        }
        Ok(r)
    }

    fn pohlig_hellman(&self, a: u64) -> Result<u64> {
        let p = self.p;
        let n = p - 1;
        let mut x: u128 = 0;
        let mut modulus: u128 = 1;
        for &(q, e) in self.pm1.factors() {
            let qe = q.pow(e);
            let g_i = powmod_unchecked(self.g, n / qe, p);
            let a_i = powmod_unchecked(a, n / qe, p);
            let gamma = powmod_unchecked(g_i, qe / q, p);
            let g_inv = powmod_unchecked(g_i, p - 2, p);
            // digits of the log in base q
            let mut r = 0u64;
            let mut qk = 1u64;
            for k in 0..e {
                let h = mulmod_unchecked(powmod_unchecked(g_inv, r, p), a_i, p);
                let h = powmod_unchecked(h, qe / qk / q, p);
                let digit = bsgs(gamma, h, q, p).ok_or(Error::DlogFailed { a, p })?;
                r += digit * qk;
                if k + 1 < e {
                    qk *= q;
                }
            }
            // CRT step: x = r (mod qe)
            let qe128 = qe as u128;
            let m_inv =
                mod_inverse((modulus % qe128) as u64, qe).ok_or(Error::DlogFailed { a, p })?;
            let diff = (r as u128 + qe128 - (x % qe128)) % qe128;
            let k = diff * m_inv as u128 % qe128;
            x += modulus * k;
            modulus *= qe128;
        }
        Ok((x % n as u128) as u64)
    }
}

/// Solves `base^x = target (mod p)` for `0 <= x < order`.
fn bsgs(base: u64, target: u64, order: u64, p: u64) -> Option<u64> {
    if order == 1 {
        return (target == 1).then_some(0);
    }
    let m = (order as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = mulmod_unchecked(cur, base, p);
    }
    // base^-m
    let giant = powmod_unchecked(powmod_unchecked(base, m, p), p - 2, p);
    let mut gamma = target;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let x = i * m + j;
            if x < order {
                return Some(x);
            }
        }
        gamma = mulmod_unchecked(gamma, giant, p);
    }
    None
}

fn build_tables(p: u64, g: u64) -> Tables {
    let n = (p - 1) as usize;
    let mut ind = vec![0u32; n];
    let mut pow = vec![0u32; n];
    let mut cur = 1u64;
    for (v, slot) in pow.iter_mut().enumerate() {
        *slot = cur as u32;
        ind[(cur - 1) as usize] = v as u32;
        cur = mulmod_unchecked(cur, g, p);
    }
    Tables { ind, pow }
}

/// Smallest positive primitive root modulo `p`; `1` for `p = 2`.
pub fn find_primitive_root(p: u64, pm1: &Factorization) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            pm1.primes()
                .all(|q| powmod_unchecked(g, (p - 1) / q, p) != 1)
        })
        .expect("every prime has a primitive root")
}

pub fn build_context(p: u64, table_threshold: u64) -> Result<PrimeContext> {
    PrimeContext::with_threshold(p, table_threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime::factorize;

    fn brute_order(a: u64, p: u64) -> u64 {
        let mut x = a % p;
        let mut t = 1;
        while x != 1 {
            x = x * a % p;
            t += 1;
        }
        t
    }

    #[test]
    fn primitive_roots_by_exhaustion() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            let g = find_primitive_root(p, &factorize(p - 1));
            let smallest = (2..p).find(|&c| brute_order(c, p) == p - 1).unwrap();
            assert_eq!(g, smallest, "p = {p}");
        }
        assert_eq!(find_primitive_root(7, &factorize(6)), 3);
        assert_eq!(find_primitive_root(11, &factorize(10)), 2);
        assert_eq!(find_primitive_root(2, &factorize(1)), 1);
    }

    #[test]
    fn context_for_seven() {
        let ctx = build_context(7, DEFAULT_TABLE_THRESHOLD).unwrap();
        assert_eq!(ctx.g(), 3);
        assert_eq!(ctx.pm1_factors().factors(), &[(2, 1), (3, 1)]);
        assert_eq!(ctx.mode(), DlogMode::Table);
        assert_eq!(ctx.ind(1).unwrap(), 0);
        assert_eq!(ctx.ind(3).unwrap(), 1);
        assert_eq!(ctx.ind(2).unwrap(), 2);
        assert_eq!(ctx.mult_order(1).unwrap(), 1);
        assert_eq!(ctx.mult_order(6).unwrap(), 2);
        assert_eq!(ctx.mult_order(3).unwrap(), 6);
        assert!(matches!(ctx.ind(7), Err(Error::NotUnit { .. })));
        assert!(matches!(ctx.mult_order(0), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn degenerate_and_composite() {
        let ctx = PrimeContext::new(2).unwrap();
        assert_eq!(ctx.g(), 1);
        assert_eq!(ctx.ind(1).unwrap(), 0);
        assert_eq!(ctx.mult_order(1).unwrap(), 1);
        assert_eq!(ctx.self_power(1), 1);
        assert_eq!(PrimeContext::new(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(PrimeContext::new(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn table_mode_structure() {
        let ctx = build_context(1_000_003, 1 << 26).unwrap();
        assert_eq!(ctx.mode(), DlogMode::Table);
        assert_eq!(ctx.index_table().unwrap().len(), 1_000_002);
        let ph = build_context(1_000_003, 0).unwrap();
        assert_eq!(ph.mode(), DlogMode::PohligHellman);
        assert!(ph.index_table().is_none());
    }

    #[test]
    fn exhaustive_round_trip_and_order_census() {
        for p in (3..2000u64).filter(|&n| is_prime(n)) {
            let ctx = PrimeContext::new(p).unwrap();
            let table = ctx.index_table().unwrap();
            let mut seen = vec![false; (p - 1) as usize];
            let mut census: HashMap<u64, u64> = HashMap::new();
            for a in 1..p {
                let v = ctx.ind(a).unwrap();
                assert_eq!(powmod_unchecked(ctx.g(), v, p), a);
                assert!(!seen[v as usize]);
                seen[v as usize] = true;
                assert_eq!(table[(a - 1) as usize] as u64, v);
                let t = ctx.mult_order(a).unwrap();
                assert_eq!((p - 1) % t, 0);
                *census.entry(t).or_default() += 1;
            }
            for t in ctx.pm1_factors().divisors() {
                assert_eq!(census.get(&t).copied().unwrap_or(0), factorize(t).totient());
            }
        }
    }

    #[test]
    fn pohlig_hellman_matches_table() {
        let primes: Vec<u64> = (3..100_000u64)
            .filter(|&n| is_prime(n))
            .step_by(97)
            .collect();
        for p in primes {
            let table = PrimeContext::new(p).unwrap();
            let ph = PrimeContext::with_threshold(p, 0).unwrap();
            let step = ((p - 1) / 500).max(1);
            for a in (1..p).step_by(step as usize) {
                assert_eq!(
                    table.ind(a).unwrap(),
                    ph.ind(a).unwrap(),
                    "p = {p}, a = {a}"
                );
            }
            assert_eq!(table.self_power(p - 2), ph.self_power(p - 2));
        }
    }

    #[test]
    fn pohlig_hellman_beyond_tables() {
        for p in [1_000_000_007u64, 998_244_353, 4_294_967_291] {
            let ctx = PrimeContext::with_threshold(p, 0).unwrap();
            for a in [2u64, 3, 12345, p - 1] {
                let v = ctx.ind(a).unwrap();
                assert_eq!(powmod_unchecked(ctx.g(), v, p), a);
            }
        }
    }
}
