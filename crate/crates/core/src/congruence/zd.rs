//! Counting `N(p;a)` through inverse parameters.
//!
//! With `t = ord a` and `T = (p - 1)/t`, pick a primitive root `g` with
//! `a = g^T`. A solution with `gcd(x, p - 1) = d` is `x = dy`, and with
//! `yz = 1 (mod D)` it satisfies `ind_g(dy) = (D/t) z (mod D)`. Each unit
//! `z mod D` lifts to `M_d` units mod `p - 1`, so
//! `N(p;a) = sum_{d | T} #Z_d / M_d`.

use crate::arith::{factorize, gcd, mod_inverse, powmod_unchecked, PrimeContext};
use crate::{Error, Result};

/// Number of `k = 1..d` with `z + kD` a unit modulo `p - 1`, for the unit
/// `z` of `Z_D`.
pub fn m_d_direct(p: u64, d: u64, z: u64) -> Result<u64> {
    let n = p - 1;
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { t: d, n });
    }
    let big_d = n / d;
    Ok((1..=d).filter(|&k| gcd(z + k * big_d, n) == 1).count() as u64)
}

/// `d * phi(m) / m` where `m` is the product of the primes dividing `d`
/// but not `D`.
pub fn m_d_closed_form(p: u64, d: u64) -> Result<u64> {
    let n = p - 1;
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { t: d, n });
    }
    let big_d = n / d;
    let (m, phi_m) = factorize(d)
        .primes()
        .filter(|q| big_d % q != 0)
        .fold((1u64, 1u64), |(m, phi), q| (m * q, phi * (q - 1)));
    Ok(d / m * phi_m)
}

/// `M_d`, computed directly (with `z = 1`) and by closed form; the two must
/// agree.
pub fn m_d_count(p: u64, d: u64) -> Result<u64> {
    let direct = m_d_direct(p, d, 1)?;
    let closed = m_d_closed_form(p, d)?;
    if direct != closed {
        return Err(Error::MdMismatch {
            p,
            d,
            direct,
            closed,
        });
    }
    Ok(direct)
}

/// Per-divisor contribution to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZdTerm {
    pub d: u64,
    pub size_z: u64,
    pub m_d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZdReport {
    pub p: u64,
    pub a: u64,
    pub t: u64,
    /// The primitive root with `a = g^T`.
    pub g: u64,
    pub terms: Vec<ZdTerm>,
    pub count: u64,
}

/// Smallest `u >= 1` coprime to `p - 1` with `u T = ind a (mod p - 1)`;
/// then `g = g0^u` is a primitive root with `a = g^T`.
fn root_exponent(ctx: &PrimeContext, a: u64, t: u64) -> Result<u64> {
    let n = ctx.p() - 1;
    let big_t = n / t;
    let v = ctx.ind(a)?;
    let fail = Error::InconsistentRoot {
        p: ctx.p(),
        a,
        big_t,
    };
    if v % big_t != 0 {
        return Err(fail);
    }
    let w = v / big_t;
    let start = match w % t {
        0 => t,
        r => r,
    };
    (start..=n.max(1))
        .step_by(t as usize)
        .find(|&u| gcd(u, n) == 1)
        .ok_or(fail)
}

/// Evaluates `sum_{d | T} #Z_d / M_d`, which equals `N(p;a)`.
pub fn zd_identity_count(ctx: &PrimeContext, a: u64) -> Result<ZdReport> {
    let p = ctx.p();
    let n = p - 1;
    let a = a % p;
    let t = ctx.mult_order(a)?;
    let big_t = n / t;

    let u = root_exponent(ctx, a, t)?;
    let g = powmod_unchecked(ctx.g(), u, p);
    if powmod_unchecked(g, big_t, p) != a {
        return Err(Error::InconsistentRoot { p, a, big_t });
    }
    // ind_g = ind_g0 * u^-1 (mod p - 1)
    let u_inv = mod_inverse(u, n).ok_or(Error::InconsistentRoot { p, a, big_t })?;
    let ind_g = |b: u64| -> Result<u64> {
        Ok((ctx.ind(b)? as u128 * u_inv as u128 % n.max(1) as u128) as u64)
    };

    let units: Vec<u64> = (1..=n).filter(|&z| gcd(z, n) == 1).collect();
    let mut terms = Vec::new();
    let mut count = 0;
    for d in factorize(big_t).divisors() {
        let big_d = n / d;
        let step = big_d / t;
        // membership depends on z mod D only
        let mut member = vec![false; big_d as usize];
        for r in 0..big_d {
            if gcd(r, big_d) != 1 {
                continue;
            }
            let y = if big_d == 1 {
                1
            } else {
                mod_inverse(r, big_d).expect("r is a unit mod D")
            };
            let lhs = ind_g(d * y)? % big_d;
            let rhs = (step as u128 * r as u128 % big_d as u128) as u64;
            member[r as usize] = lhs == rhs;
        }
        let size_z = units
            .iter()
            .filter(|&&z| member[(z % big_d) as usize])
            .count() as u64;
        let m_d = m_d_count(p, d)?;
        if size_z % m_d != 0 {
            return Err(Error::NonExactDivision {
                p,
                a,
                d,
                zd: size_z,
                md: m_d,
            });
        }
        count += size_z / m_d;
        terms.push(ZdTerm { d, size_z, m_d });
    }
    Ok(ZdReport {
        p,
        a,
        t,
        g,
        terms,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use crate::congruence::n_count;

    #[test]
    fn m_d_examples() {
        assert_eq!(m_d_count(7, 1).unwrap(), 1);
        assert_eq!(m_d_count(7, 2).unwrap(), 1);
        assert_eq!(m_d_count(7, 6).unwrap(), 2);
        assert_eq!(m_d_count(7, 4), Err(Error::NotDivisor { t: 4, n: 6 }));
    }

    #[test]
    fn m_d_independent_of_z() {
        for p in (3..400u64).filter(|&n| is_prime(n)) {
            for d in factorize(p - 1).divisors() {
                let big_d = (p - 1) / d;
                let expect = m_d_closed_form(p, d).unwrap();
                for z in (1..=big_d).filter(|&z| gcd(z, big_d) == 1) {
                    assert_eq!(
                        m_d_direct(p, d, z).unwrap(),
                        expect,
                        "p = {p}, d = {d}, z = {z}"
                    );
                }
            }
        }
    }

    #[test]
    fn zd_examples() {
        let ctx = PrimeContext::new(7).unwrap();
        assert_eq!(zd_identity_count(&ctx, 4).unwrap().count, 2);
        assert_eq!(zd_identity_count(&ctx, 6).unwrap().count, 1);
        let r = zd_identity_count(&ctx, 4).unwrap();
        assert_eq!(powmod_unchecked(r.g, 2, 7), 4);
        assert!(matches!(
            zd_identity_count(&ctx, 0),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn zd_matches_n_count() {
        for p in (2..120u64).filter(|&n| is_prime(n)) {
            let ctx = PrimeContext::new(p).unwrap();
            for a in 1..p {
                let r = zd_identity_count(&ctx, a).unwrap();
                assert_eq!(r.count, n_count(p, a).unwrap(), "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let mut ctx = PrimeContext::new(11).unwrap();
        let honest = ctx.ind(3).unwrap();
        ctx.corrupt_index(3, ((honest + 1) % 10) as u32);
        let failed = (1..11u64).any(|a| match zd_identity_count(&ctx, a) {
            Ok(r) => r.count != n_count(11, a).unwrap(),
            Err(_) => true,
        });
        assert!(failed);
    }
}
