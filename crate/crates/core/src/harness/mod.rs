//! Prime ranges, parallel CSV scans and the identity suite.

mod scan;
mod sieve;
mod verify;

pub use scan::{
    compute_records, effective_exponent, evaluate, scan, write_records, ExperimentRecord, Metric,
    ScanConfig, ScanSummary, CSV_HEADER,
};
pub use sieve::{primes_in, PrimeRange};
pub use verify::{
    verify, verify_prime, CheckTally, Identity, VerifyReport, DECOMPOSE_LIMIT, PAIR_LIMIT, ZD_LIMIT,
};
