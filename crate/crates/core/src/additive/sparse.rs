use crate::arith::{gcd, is_prime, mulmod_unchecked, normalize, powmod_unchecked};
use crate::{Error, Result};

/// Exact root count of `sum c_i X^(k_i)` over `X` in `F_q^*` together with
/// the gcd statistic `Delta` that governs the root bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolyReport {
    pub q: u64,
    /// Merged terms: coefficients in `1..q`, distinct exponents in `0..q-1`.
    pub terms: Vec<(u64, u64)>,
    pub roots: u64,
    pub delta: u64,
    /// `2 q^(1 - 1/(n-1)) Delta^(1/(n-1))`.
    pub main_term: f64,
    /// `q^(1 - 2/(n-1)) Delta^(2/(n-1))`, the shape of the error term.
    pub slack: f64,
    /// `roots <= main_term + slack`; informational only.
    pub within_bound: bool,
}

/// Reduces coefficients mod `q` and exponents mod `q - 1`, merging equal
/// exponents. Zero input coefficients are rejected.
fn normalize_terms(q: u64, terms: &[(i64, i64)]) -> Result<Vec<(u64, u64)>> {
    if terms.len() < 2 {
        return Err(Error::TooFewTerms);
    }
    let order = q - 1;
    let mut merged: Vec<(u64, u64)> = Vec::with_capacity(terms.len());
    for &(c, k) in terms {
        let c_red = normalize(c, q);
        if c_red == 0 {
            return Err(Error::ZeroCoefficient { coefficient: c, q });
        }
        let k_red = normalize(k, order);
        match merged.iter_mut().find(|(_, e)| *e == k_red) {
            Some((acc, _)) => *acc = (*acc + c_red) % q,
            None => merged.push((c_red, k_red)),
        }
    }
    merged.retain(|&(c, _)| c != 0);
    if merged.len() < 2 {
        return Err(Error::DegenerateSparse { q });
    }
    merged.sort_unstable_by_key(|&(_, k)| k);
    Ok(merged)
}

/// `min_i max_{j != i} gcd(k_j - k_i, q - 1)`, differences taken in
/// `0..q-1` and `gcd(0, q - 1) = q - 1`.
fn delta(q: u64, terms: &[(u64, u64)]) -> u64 {
    let order = q - 1;
    terms
        .iter()
        .map(|&(_, ki)| {
            terms
                .iter()
                .filter(|&&(_, kj)| kj != ki)
                .map(|&(_, kj)| gcd((kj + order - ki) % order, order))
                .max()
                .unwrap_or(order)
        })
        .min()
        .unwrap_or(order)
}

pub fn sparse_roots(q: u64, terms: &[(i64, i64)]) -> Result<SparsePolyReport> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let terms = normalize_terms(q, terms)?;
    let roots = (1..q)
        .filter(|&x| {
            terms.iter().fold(0u64, |acc, &(c, k)| {
                (acc + mulmod_unchecked(c, powmod_unchecked(x, k, q), q)) % q
            }) == 0
        })
        .count() as u64;
    let delta = delta(q, &terms);
    let n1 = (terms.len() - 1) as f64;
    let (qf, df) = (q as f64, delta as f64);
    let main_term = 2.0 * qf.powf(1.0 - 1.0 / n1) * df.powf(1.0 / n1);
    let slack = qf.powf(1.0 - 2.0 / n1) * df.powf(2.0 / n1);
    Ok(SparsePolyReport {
        q,
        roots,
        delta,
        main_term,
        slack,
        within_bound: roots as f64 <= main_term + slack,
        terms,
    })
}

/// Parses `c1:k1,c2:k2,...`.
pub fn parse_terms(spec: &str) -> Result<Vec<(i64, i64)>> {
    let bad = || Error::BadTerms(spec.to_string());
    spec.split(',')
        .map(|t| {
            let (c, k) = t.split_once(':').ok_or_else(bad)?;
            Ok((
                c.trim().parse().map_err(|_| bad())?,
                k.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}
