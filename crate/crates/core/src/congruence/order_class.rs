//! Order classes: the solutions of `x^(tx) = 1 (mod p)` aggregate `N(p;a)`
//! over all `a` whose order divides `t`. Splitting them by `d = gcd(x, T)`
//! with `T = (p - 1)/t` and writing `x = dy` gives the sets `Y_d`, whose
//! residues `W_d` have small sumsets (`y <= D`) and small product sets
//! (all products are `T_d`-th powers up to `d^2`).

use crate::additive::{productset, sumset, ResidueSet};
use crate::arith::{gcd, powmod_unchecked, PrimeContext};
use crate::{Error, Result};

/// Per-divisor data for one order class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdClassRecord {
    pub d: u64,
    /// `T_d = T / d`.
    pub t_d: u64,
    /// `D = (p - 1) / d`.
    pub big_d: u64,
    pub size_y: u64,
    pub size_w: u64,
    pub size_sumset: u64,
    pub size_prodset: u64,
}

impl GcdClassRecord {
    /// Every constant-free bound the record must satisfy for order class `t`.
    pub fn violations(&self, t: u64) -> Vec<String> {
        let mut out = Vec::new();
        if self.size_y != self.size_w {
            out.push(format!("#Y_d = {} != #W_d = {}", self.size_y, self.size_w));
        }
        if self.size_sumset > 2 * self.big_d {
            out.push(format!(
                "#(W+W) = {} > 2D = {}",
                self.size_sumset,
                2 * self.big_d
            ));
        }
        if self.size_prodset > self.d * t {
            out.push(format!(
                "#(W*W) = {} > dt = {}",
                self.size_prodset,
                self.d * t
            ));
        }
        let cap = (self.d * t).min(self.big_d);
        if self.size_y > cap {
            out.push(format!("#Y_d = {} > min(dt, D) = {}", self.size_y, cap));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderClassReport {
    pub p: u64,
    pub t: u64,
    pub direct_count: u64,
    pub records: Vec<GcdClassRecord>,
}

impl OrderClassReport {
    pub fn decomposed_total(&self) -> u64 {
        self.records.iter().map(|r| r.size_y).sum()
    }
}

fn check_divides(t: u64, n: u64) -> Result<()> {
    if t == 0 || n % t != 0 {
        return Err(Error::NotDivisor { t, n });
    }
    Ok(())
}

/// Number of `1 <= x <= p - 1` with `x^(tx) = 1 (mod p)`.
pub fn order_class_direct(ctx: &PrimeContext, t: u64) -> Result<u64> {
    let p = ctx.p();
    let n = p - 1;
    check_divides(t, n)?;
    let count = (1..p)
        .filter(|&x| {
            let e = (t as u128 * x as u128 % n.max(1) as u128) as u64;
            ctx.power_of_self(x, e) == 1
        })
        .count();
    Ok(count as u64)
}

/// The set `Y_d` for order class `t`: `1 <= y <= D`, `gcd(y, T_d) = 1`,
/// `ind(dy) = 0 (mod T_d)`.
pub fn y_set(ctx: &PrimeContext, t: u64, d: u64) -> Result<Vec<u64>> {
    let n = ctx.p() - 1;
    check_divides(t, n)?;
    let big_t = n / t;
    check_divides(d, big_t)?;
    let t_d = big_t / d;
    let big_d = n / d;
    let mut ys = Vec::new();
    for y in 1..=big_d {
        if gcd(y, t_d) != 1 {
            continue;
        }
        if ctx.ind(d * y)? % t_d == 0 {
            ys.push(y);
        }
    }
    Ok(ys)
}

fn record(ctx: &PrimeContext, t: u64, d: u64) -> Result<GcdClassRecord> {
    let p = ctx.p();
    let n = p - 1;
    let big_t = n / t;
    let ys = y_set(ctx, t, d)?;
    let (size_w, size_sumset, size_prodset) = if ys.is_empty() {
        (0, 0, 0)
    } else {
        let w = ResidueSet::new(p, ys.iter().copied())?;
        (
            w.len() as u64,
            sumset(&w).len() as u64,
            productset(&w).len() as u64,
        )
    };
    Ok(GcdClassRecord {
        d,
        t_d: big_t / d,
        big_d: n / d,
        size_y: ys.len() as u64,
        size_w,
        size_sumset,
        size_prodset,
    })
}

/// Decomposes order class `t` over the divisors `d` of `T = (p - 1)/t`.
pub fn order_class_decompose(ctx: &PrimeContext, t: u64) -> Result<OrderClassReport> {
    let p = ctx.p();
    let n = p - 1;
    check_divides(t, n)?;
    let big_t = n / t;
    let records = crate::arith::factorize(big_t)
        .divisors()
        .into_iter()
        .map(|d| record(ctx, t, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderClassReport {
        p,
        t,
        direct_count: order_class_direct(ctx, t)?,
        records,
    })
}

/// `#Y_d` against the envelope `min(dt, D, sqrt(pt/d) + sqrt(td))`.
///
/// The square-root term stands in for a bound that only holds up to a
/// `p^o(1)` factor, so `ratio` is a diagnostic. `hard_cap = min(dt, D)`
/// is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound3Report {
    pub size_y: u64,
    pub hard_cap: u64,
    pub envelope: f64,
    pub ratio: f64,
}

pub fn bound3_monitor(ctx: &PrimeContext, t: u64, d: u64) -> Result<Bound3Report> {
    let p = ctx.p();
    let n = p - 1;
    let size_y = y_set(ctx, t, d)?.len() as u64;
    let big_d = n / d;
    let hard_cap = (d * t).min(big_d);
    let (pf, tf, df) = (p as f64, t as f64, d as f64);
    let sqrt_term = (pf * tf / df).sqrt() + (tf * df).sqrt();
    let envelope = (hard_cap as f64).min(sqrt_term);
    Ok(Bound3Report {
        size_y,
        hard_cap,
        envelope,
        ratio: size_y as f64 / envelope,
    })
}

/// `x^(tx) = 1` directly with `powmod`, independent of the context tables.
pub fn order_class_direct_powmod(p: u64, t: u64) -> Result<u64> {
    let n = p - 1;
    check_divides(t, n)?;
    Ok((1..p)
        .filter(|&x| powmod_unchecked(x, (t as u128 * x as u128 % n.max(1) as u128) as u64, p) == 1)
        .count() as u64)
}
