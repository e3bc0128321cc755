//! Set arithmetic in `Z_p` and sparse-polynomial root counts.

mod sparse;

pub use sparse::{parse_terms, sparse_roots, SparsePolyReport};

use crate::arith::{is_prime, mulmod_unchecked, normalize, powmod_unchecked};
use crate::{Error, Result};

/// A nonempty sorted set of units of `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    p: u64,
    elements: Vec<u64>,
}

impl ResidueSet {
    /// Reduces every value mod `p`, rejecting zeros; duplicates collapse.
    pub fn new(p: u64, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        if p == 0 {
            return Err(Error::NotPrime(0));
        }
        let signed = values.into_iter().map(|v| (v % p) as i64);
        Self::from_signed(p, signed)
    }

    pub fn from_signed(p: u64, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut elements = Vec::new();
        for v in values {
            let r = normalize(v, p);
            if r == 0 {
                return Err(Error::ZeroResidue { value: v, p });
            }
            elements.push(r);
        }
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ResidueSet { p, elements })
    }

    /// `{lo, lo + 1, ..., hi}`, reduced mod `p`.
    pub fn interval(p: u64, lo: i64, hi: i64) -> Result<Self> {
        Self::from_signed(p, lo..=hi)
    }

    /// `{g^0, g^1, ..., g^(len - 1)}`.
    pub fn geometric(p: u64, g: u64, len: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::new(p, (0..len).map(|k| powmod_unchecked(g, k, p)))
    }

    /// Parses `1,2,4`, `interval:lo..hi` or `geom:g,len`.
    pub fn parse(p: u64, spec: &str) -> Result<Self> {
        let bad = || Error::BadSetSpec(spec.to_string());
        if let Some(rest) = spec.strip_prefix("interval:") {
            let (lo, hi) = rest.split_once("..").ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(Error::EmptySet);
            }
            Self::interval(p, lo, hi)
        } else if let Some(rest) = spec.strip_prefix("geom:") {
            let (g, len) = rest.split_once(',').ok_or_else(bad)?;
            let g: u64 = g.trim().parse().map_err(|_| bad())?;
            let len: u64 = len.trim().parse().map_err(|_| bad())?;
            Self::geometric(p, g, len)
        } else {
            let values = spec
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Self::from_signed(p, values)
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `cA` for a unit `c`.
    pub fn dilate(&self, c: u64) -> Result<Self> {
        Self::new(
            self.p,
            self.elements
                .iter()
                .map(|&a| mulmod_unchecked(a, c % self.p, self.p)),
        )
    }
}

fn pairwise(set: &ResidueSet, op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    let p = set.p as usize;
    let mut hit = vec![false; p];
    let elems = &set.elements;
    for (i, &a) in elems.iter().enumerate() {
        // both operations are commutative
        for &b in &elems[i..] {
            hit[op(a, b) as usize] = true;
        }
    }
    hit.iter()
        .enumerate()
        .filter_map(|(r, &h)| h.then_some(r as u64))
        .collect()
}

/// `A + A` in `Z_p`, sorted; may contain 0.
pub fn sumset(set: &ResidueSet) -> Vec<u64> {
    let p = set.p;
    pairwise(set, |a, b| (a + b) % p)
}

/// `A * A` in `Z_p`, sorted.
pub fn productset(set: &ResidueSet) -> Vec<u64> {
    let p = set.p;
    pairwise(set, |a, b| mulmod_unchecked(a, b, p))
}

/// Both sides of the sum-product inequality
/// `#(A+A) * #(A*A) >> min(p #A, (#A)^4 / p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaraevReport {
    pub size_a: u64,
    pub size_sumset: u64,
    pub size_prodset: u64,
    pub lhs: u64,
    pub rhs: f64,
    pub ratio: f64,
}

pub fn garaev_report(set: &ResidueSet) -> GaraevReport {
    let size_a = set.len() as u64;
    let size_sumset = sumset(set).len() as u64;
    let size_prodset = productset(set).len() as u64;
    let lhs = size_sumset * size_prodset;
    let (p, n) = (set.p as f64, size_a as f64);
    let rhs = (p * n).min(n.powi(4) / p);
    GaraevReport {
        size_a,
        size_sumset,
        size_prodset,
        lhs,
        rhs,
        ratio: lhs as f64 / rhs,
    }
}
