use crate::arith::is_prime;

const SEGMENT: u64 = 1 << 18;
const SIEVE_LIMIT: u64 = 1 << 32;

/// Primes in `[lo, hi]`, ascending. Segmented sieve below `2^32`,
/// Miller-Rabin above.
pub fn primes_in(lo: u64, hi: u64) -> PrimeRange {
    let lo = lo.max(2);
    let sieve_hi = hi.min(SIEVE_LIMIT - 1);
    let base = if lo <= sieve_hi {
        small_primes(isqrt(sieve_hi))
    } else {
        Vec::new()
    };
    PrimeRange {
        next: lo,
        hi,
        base,
        buf: Vec::new(),
        pos: 0,
    }
}

pub struct PrimeRange {
    next: u64,
    hi: u64,
    base: Vec<u64>,
    buf: Vec<u64>,
    pos: usize,
}

impl PrimeRange {
    fn refill(&mut self) -> bool {
        self.buf.clear();
        self.pos = 0;
        while self.buf.is_empty() {
            if self.next > self.hi || self.next == 0 {
                return false;
            }
            let start = self.next;
            if start < SIEVE_LIMIT {
                let end = (start.saturating_add(SEGMENT - 1))
                    .min(self.hi)
                    .min(SIEVE_LIMIT - 1);
                sieve_segment(start, end, &self.base, &mut self.buf);
                self.next = end + 1;
            } else {
                let end = start.saturating_add(SEGMENT - 1).min(self.hi);
                self.buf.extend((start..=end).filter(|&n| is_prime(n)));
                self.next = end.wrapping_add(1);
            }
        }
        true
    }
}

impl Iterator for PrimeRange {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buf.len() && !self.refill() {
            return None;
        }
        let p = self.buf[self.pos];
        self.pos += 1;
        Some(p)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
}

fn sieve_segment(lo: u64, hi: u64, base: &[u64], out: &mut Vec<u64>) {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &q in base {
        if q * q > hi {
            break;
        }
        let first = (q * q).max(lo.div_ceil(q) * q);
        for m in (first..=hi).step_by(q as usize) {
            composite[(m - lo) as usize] = true;
        }
    }
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|&(_, &c)| !c)
            .map(|(i, _)| lo + i as u64)
            .filter(|&n| n >= 2),
    );
}
