//! The exact-identity suite. Every check here is unconditional: a single
//! failure means an arithmetic bug, never a statistical fluke.

use std::fmt;

use rayon::prelude::*;

use super::sieve::primes_in;
use crate::arith::PrimeContext;
use crate::congruence::{
    crocker_floor, histogram, histogram_direct, lift_solution, m_d_count, order_class_decompose,
    symmetric_count_pairs, zd_identity_count,
};
use crate::Result;

/// Primes up to this bound get the quadratic pair oracle for `M(p)`.
pub const PAIR_LIMIT: u64 = 300;
/// Primes up to this bound get the full order-class decomposition.
pub const DECOMPOSE_LIMIT: u64 = 500;
/// Primes up to this bound get the `Z_d` identity for every unit `a`.
pub const ZD_LIMIT: u64 = 300;

/// Witnesses kept per identity; the failure count is always exact.
const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `sum_a N(p;a) = p - 1`, with the table histogram matching direct counts.
    SumT,
    /// `M(p)` from the histogram equals the pair count.
    NAndT,
    /// Order-class decomposition total equals the direct count.
    Basic,
    /// `#Y_d = #W_d`, `#(W+W) <= 2D`, `#(W*W) <= dt`, `#Y_d <= min(dt, D)`.
    SetBounds,
    /// `sum_d #Z_d / M_d = N(p;a)` with exact division.
    ZBasic,
    /// Direct `M_d` equals `d phi(m)/m`.
    Md,
    /// At least `floor(sqrt((p-1)/2))` distinct values.
    Crocker,
    /// The explicit lifted solution verifies.
    Lift,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::SumT,
        Identity::NAndT,
        Identity::Basic,
        Identity::SetBounds,
        Identity::ZBasic,
        Identity::Md,
        Identity::Crocker,
        Identity::Lift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::SumT => "sum_t",
            Identity::NAndT => "n_and_t",
            Identity::Basic => "basic",
            Identity::SetBounds => "sumset_prodset",
            Identity::ZBasic => "zbasic",
            Identity::Md => "m_d",
            Identity::Crocker => "crocker",
            Identity::Lift => "lift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub identity: Identity,
    pub cases: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl CheckTally {
    fn new(identity: Identity) -> Self {
        CheckTally {
            identity,
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    fn merge(&mut self, other: CheckTally) {
        self.cases += other.cases;
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub p_limit: u64,
    pub primes: u64,
    pub checks: Vec<CheckTally>,
}

impl VerifyReport {
    fn empty(p_limit: u64) -> Self {
        VerifyReport {
            p_limit,
            primes: 0,
            checks: Identity::ALL.iter().map(|&i| CheckTally::new(i)).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn get(&self, identity: Identity) -> &CheckTally {
        self.checks
            .iter()
            .find(|c| c.identity == identity)
            .expect("every identity has a tally")
    }

    fn tally(&mut self, identity: Identity) -> &mut CheckTally {
        self.checks
            .iter_mut()
            .find(|c| c.identity == identity)
            .expect("every identity has a tally")
    }

    fn absorb(&mut self, other: VerifyReport) {
        self.primes += other.primes;
        for c in other.checks {
            self.tally(c.identity).merge(c);
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity suite over {} primes <= {}",
            self.primes, self.p_limit
        )?;
        for c in &self.checks {
            let status = if c.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<15} cases={} failures={}",
                c.identity.name(),
                c.cases,
                c.failures
            )?;
            for w in &c.witnesses {
                writeln!(f, "     witness: {w}")?;
            }
        }
        Ok(())
    }
}

/// Runs every identity that applies at this prime against the given
/// context. Direct counts are recomputed without the context's tables, so
/// a corrupted context shows up as failures.
pub fn verify_prime(ctx: &PrimeContext) -> Result<VerifyReport> {
    let p = ctx.p();
    let mut report = VerifyReport::empty(p);
    report.primes = 1;

    let direct = histogram_direct(p)?;
    let tabled = histogram(ctx)?;

    report
        .tally(Identity::SumT)
        .check(direct.total() == p - 1 && tabled == direct, || {
            format!(
                "p = {p}: direct total {}, table total {}",
                direct.total(),
                tabled.total()
            )
        });

    if p <= PAIR_LIMIT {
        let pairs = symmetric_count_pairs(p)?;
        let squares = direct.sum_of_squares();
        report.tally(Identity::NAndT).check(pairs == squares, || {
            format!("p = {p}: pairs {pairs}, sum of squares {squares}")
        });
    }

    if p <= DECOMPOSE_LIMIT {
        for t in ctx.pm1_factors().divisors() {
            let r = order_class_decompose(ctx, t)?;
            let total = r.decomposed_total();
            report
                .tally(Identity::Basic)
                .check(total == r.direct_count, || {
                    format!(
                        "p = {p}, t = {t}: sum #Y_d = {total}, direct {}",
                        r.direct_count
                    )
                });
            for rec in &r.records {
                let v = rec.violations(t);
                report.tally(Identity::SetBounds).check(v.is_empty(), || {
                    format!("p = {p}, t = {t}, d = {}: {}", rec.d, v.join("; "))
                });
            }
        }
    }

    if p <= ZD_LIMIT {
        for a in 1..p {
            let expect = direct.get(a);
            let tally = report.tally(Identity::ZBasic);
            match zd_identity_count(ctx, a) {
                Ok(r) => tally.check(r.count == expect, || {
                    format!(
                        "p = {p}, a = {a}: identity gives {}, N(p;a) = {expect}",
                        r.count
                    )
                }),
                Err(e) => {
                    tally.cases += 1;
                    tally.fail(format!("p = {p}, a = {a}: {e}"));
                }
            }
        }
    }

    for d in ctx.pm1_factors().divisors() {
        let tally = report.tally(Identity::Md);
        tally.cases += 1;
        if let Err(e) = m_d_count(p, d) {
            tally.fail(format!("p = {p}, d = {d}: {e}"));
        }
    }

    let distinct = direct.distinct();
    let floor = crocker_floor(p);
    report
        .tally(Identity::Crocker)
        .check(distinct >= floor, || {
            format!("p = {p}: {distinct} distinct values < {floor}")
        });

    for a in 1..p {
        let tally = report.tally(Identity::Lift);
        match lift_solution(ctx, a) {
            Ok(r) => tally.check(r.verified, || {
                format!("p = {p}, a = {a}: x = {} fails", r.x)
            }),
            Err(e) => {
                tally.cases += 1;
                tally.fail(format!("p = {p}, a = {a}: {e}"));
            }
        }
    }

    Ok(report)
}

/// Runs [`verify_prime`] over every prime `<= p_limit` on `workers` threads.
pub fn verify(p_limit: u64, workers: usize) -> Result<VerifyReport> {
    let primes: Vec<u64> = primes_in(2, p_limit).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| crate::Error::Config(e.to_string()))?;
    let parts = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| verify_prime(&PrimeContext::new(p)?))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut report = VerifyReport::empty(p_limit);
    for part in parts {
        report.absorb(part);
    }
    Ok(report)
}
