use super::modular::{gcd, mulmod_unchecked, powmod_unchecked};

/// Witnesses making Miller-Rabin exact for every `n < 3.3 * 10^24`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod_unchecked(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_unchecked(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `n = prod q^e` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// All divisors, ascending. The length is `tau(n)`.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(q, e) in &self.factors {
            let len = divs.len();
            let mut qk = 1u64;
            for _ in 0..e {
                qk *= q;
                for i in 0..len {
                    divs.push(divs[i] * qk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.n, |acc, &(q, _)| acc / q * (q - 1))
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }
}

pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize expects n >= 1");
    let mut rest = n;
    let mut primes = Vec::new();

    let mut q = 2u64;
    while q < TRIAL_LIMIT && q * q <= rest {
        while rest % q == 0 {
            primes.push(q);
            rest /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split(rest, &mut primes);
    }

    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { n, factors }
}

/// Splits `n` (no prime factors below the trial limit unless `n` is
/// itself prime) into primes.
fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let f = rho(n);
    split(f, out);
    split(n / f, out);
}

/// Pollard-Brent rho. The increment runs through 1, 2, 3, ... until a
/// proper factor appears, so the result is deterministic.
fn rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    const BATCH: u64 = 128;
    let step =
        |v: u64, c: u64| ((mulmod_unchecked(v, v, n) as u128 + c as u128) % n as u128) as u64;
    for c in 1..n {
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let (mut q, mut g, mut r) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y, c);
                    q = mulmod_unchecked(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // the batched product hit zero, redo the last batch one step at a time
            loop {
                ys = step(ys, c);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho found no factor of composite {n}")
}

/// Euler phi, Moebius mu and divisor count from one factorization.
pub fn multiplicative_invariants(n: u64) -> (u64, i8, u64) {
    let f = factorize(n);
    (f.totient(), f.mobius(), f.tau())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_small_cases() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(!is_prime(3215031751));
        assert!(!trial_is_prime(3215031751));
        assert!(is_prime(u64::MAX - 58));
        assert!(is_prime((1 << 61) - 1));
        // strong pseudoprime to bases 2..37
        assert!(!is_prime(3825123056546413051));
    }

    #[test]
    fn primality_matches_trial_division() {
        let mut sieve = vec![true; 1_000_001];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= 1_000_000 {
            if sieve[i] {
                for j in (i * i..=1_000_000).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        for (n, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expect, "n = {n}");
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(6).factors(), &[(2, 1), (3, 1)]);
        assert!(factorize(1).factors().is_empty());
        assert_eq!(
            factorize(600851475143).factors(),
            &[(71, 1), (839, 1), (1471, 1), (6857, 1)]
        );
    }

    #[test]
    fn factor_large_semiprimes() {
        // products of two primes above the trial-division limit
        let cases = [
            (1_000_003u64, 1_000_033u64),
            (4_294_967_291, 4_294_967_279),
            (2_147_483_647, 3),
        ];
        for (a, b) in cases {
            let f = factorize(a * b);
            let mut expect = vec![(a.min(b), 1), (a.max(b), 1)];
            expect.dedup();
            assert_eq!(f.factors(), expect.as_slice());
        }
        let f = factorize(u64::MAX);
        assert_eq!(
            f.factors(),
            &[
                (3, 1),
                (5, 1),
                (17, 1),
                (257, 1),
                (641, 1),
                (65537, 1),
                (6700417, 1)
            ]
        );
        let p = u64::MAX - 58;
        assert_eq!(factorize(p).factors(), &[(p, 1)]);
        assert_eq!(
            factorize(1_000_003 * 1_000_003).factors(),
            &[(1_000_003, 2)]
        );
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(factorize(6).divisors(), vec![1, 2, 3, 6]);
        assert_eq!(factorize(1).divisors(), vec![1]);
        assert_eq!(factorize(12).divisors().len(), 6);
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(multiplicative_invariants(1), (1, 1, 1));
        assert_eq!(multiplicative_invariants(6), (2, 1, 4));
        assert_eq!(multiplicative_invariants(12), (4, 0, 6));
        assert_eq!(multiplicative_invariants(30), (8, -1, 8));
    }

    #[test]
    fn totient_sums_over_divisors() {
        for n in 1..=2000u64 {
            let f = factorize(n);
            let divs = f.divisors();
            assert_eq!(divs.len() as u64, f.tau());
            let sum: u64 = divs.iter().map(|&d| factorize(d).totient()).sum();
            assert_eq!(sum, n);
            let product: u64 = f.factors().iter().map(|&(q, e)| q.pow(e)).product();
            assert_eq!(product, n);
        }
    }
}
