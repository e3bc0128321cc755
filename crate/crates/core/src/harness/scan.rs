use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::sieve::primes_in;
use crate::arith::{PrimeContext, DEFAULT_TABLE_THRESHOLD};
use crate::congruence::{fixed_points, histogram, n_count_ctx, order_class_direct};
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 5] = ["p", "metric", "value", "eff_exp", "elapsed_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// `N(p;1)`
    N1,
    /// `M(p)`
    M,
    Fixed,
    Crocker,
    /// `max_a N(p;a)`
    MaxN,
    /// solutions of `x^(tx) = 1`
    OrderClass,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::N1 => "n1",
            Metric::M => "m",
            Metric::Fixed => "fixed",
            Metric::Crocker => "crocker",
            Metric::MaxN => "max_n",
            Metric::OrderClass => "orderclass",
        }
    }

    /// The exponent the asymptotic upper bounds give for this metric, if
    /// there is a single one (lower bound for `crocker`).
    pub fn reference_exponent(self) -> Option<(f64, &'static str)> {
        match self {
            Metric::N1 => Some((1.0 / 3.0, "1/3")),
            Metric::M => Some((48.0 / 25.0, "48/25")),
            Metric::Fixed => Some((1.0 / 3.0, "1/3")),
            Metric::MaxN => Some((12.0 / 13.0, "12/13")),
            Metric::Crocker => Some((0.5, "1/2 (lower bound)")),
            Metric::OrderClass => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "n1" => Metric::N1,
            "m" => Metric::M,
            "fixed" => Metric::Fixed,
            "crocker" => Metric::Crocker,
            "max_n" => Metric::MaxN,
            "orderclass" => Metric::OrderClass,
            other => return Err(Error::Config(format!("unknown metric `{other}`"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub metric: Metric,
    pub t: Option<u64>,
    pub workers: usize,
    pub output: PathBuf,
    pub table_threshold: u64,
}

impl ScanConfig {
    pub fn new(metric: Metric, p_min: u64, p_max: u64, output: impl Into<PathBuf>) -> Self {
        ScanConfig {
            p_min,
            p_max,
            metric,
            t: None,
            workers: 1,
            output: output.into(),
            table_threshold: DEFAULT_TABLE_THRESHOLD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_min > self.p_max {
            return Err(Error::Config(format!(
                "pmin {} > pmax {}",
                self.p_min, self.p_max
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        match (self.metric, self.t) {
            (Metric::OrderClass, None) => Err(Error::Config("metric orderclass needs --t".into())),
            (Metric::OrderClass, Some(0)) => Err(Error::Config("t must be >= 1".into())),
            (Metric::OrderClass, Some(_)) => Ok(()),
            (m, Some(_)) => Err(Error::Config(format!(
                "--t is only valid with orderclass, not {m}"
            ))),
            (_, None) => Ok(()),
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub p: u64,
    pub metric: Metric,
    pub value: u64,
    pub eff_exp: f64,
    pub elapsed_ms: u64,
}

/// `ln(max(value, 1)) / ln(p)`.
pub fn effective_exponent(value: u64, p: u64) -> f64 {
    (value.max(1) as f64).ln() / (p as f64).ln()
}

/// Evaluates the metric at one prime. `None` when `orderclass` does not
/// apply because `t` does not divide `p - 1`.
pub fn evaluate(ctx: &PrimeContext, metric: Metric, t: Option<u64>) -> Result<Option<u64>> {
    let p = ctx.p();
    Ok(Some(match metric {
        Metric::N1 => n_count_ctx(ctx, 1),
        Metric::M => histogram(ctx)?.sum_of_squares(),
        Metric::Fixed => fixed_points(ctx),
        Metric::Crocker => histogram(ctx)?.distinct(),
        Metric::MaxN => histogram(ctx)?.max(),
        Metric::OrderClass => {
            let t = t.ok_or_else(|| Error::Config("metric orderclass needs --t".into()))?;
            if (p - 1) % t != 0 {
                return Ok(None);
            }
            order_class_direct(ctx, t)?
        }
    }))
}

fn record_for(p: u64, cfg: &ScanConfig) -> Result<Option<ExperimentRecord>> {
    let start = Instant::now();
    let ctx = PrimeContext::with_threshold(p, cfg.table_threshold)?;
    let Some(value) = evaluate(&ctx, cfg.metric, cfg.t)? else {
        return Ok(None);
    };
    Ok(Some(ExperimentRecord {
        p,
        metric: cfg.metric,
        value,
        eff_exp: effective_exponent(value, p),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }))
}

/// Computes every row, in ascending `p`, on a pool of `cfg.workers` threads.
pub fn compute_records(cfg: &ScanConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let primes: Vec<u64> = primes_in(cfg.p_min, cfg.p_max).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let rows = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| record_for(p, cfg))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_records<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.p.to_string(),
            r.metric.name().to_string(),
            r.value.to_string(),
            format!("{:.6}", r.eff_exp),
            r.elapsed_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub metric: Metric,
    pub rows: usize,
    /// `(p, eff_exp)` of the row with the largest effective exponent.
    pub max_eff_exp: Option<(u64, f64)>,
}

impl ScanSummary {
    pub fn from_records(metric: Metric, records: &[ExperimentRecord]) -> Self {
        let max_eff_exp =
            records
                .iter()
                .map(|r| (r.p, r.eff_exp))
                .fold(None, |best: Option<(u64, f64)>, cur| match best {
                    Some(b) if b.1 >= cur.1 => Some(b),
                    _ => Some(cur),
                });
        ScanSummary {
            metric,
            rows: records.len(),
            max_eff_exp,
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "metric {}: {} rows", self.metric, self.rows)?;
        if let Some((p, e)) = self.max_eff_exp {
            write!(f, ", max eff_exp {e:.6} at p = {p}")?;
        }
        if let Some((value, label)) = self.metric.reference_exponent() {
            write!(f, ", reference exponent {label} = {value:.6}")?;
        }
        Ok(())
    }
}

/// Runs the scan and writes the CSV to `cfg.output`.
pub fn scan(cfg: &ScanConfig) -> Result<ScanSummary> {
    let records = compute_records(cfg)?;
    let file = std::fs::File::create(&cfg.output)?;
    write_records(std::io::BufWriter::new(file), &records)?;
    Ok(ScanSummary::from_records(cfg.metric, &records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(metric: Metric, lo: u64, hi: u64) -> Vec<ExperimentRecord> {
        compute_records(&ScanConfig::new(metric, lo, hi, "unused")).unwrap()
    }

    #[test]
    fn single_rows() {
        let r = &rows(Metric::N1, 7, 7)[0];
        assert_eq!((r.p, r.value), (7, 2));
        assert!((r.eff_exp - 2f64.ln() / 7f64.ln()).abs() < 1e-12);
        assert_eq!(format!("{:.6}", r.eff_exp), "0.356207");

        let r = &rows(Metric::M, 5, 5)[0];
        assert_eq!(r.value, 6);
        assert_eq!(format!("{:.6}", r.eff_exp), "1.113283");

        let r = &rows(Metric::Crocker, 2, 2)[0];
        assert_eq!((r.value, r.eff_exp), (1, 0.0));
    }

    #[test]
    fn orderclass_skips_non_divisors() {
        let mut cfg = ScanConfig::new(Metric::OrderClass, 2, 30, "unused");
        cfg.t = Some(4);
        let got: Vec<u64> = compute_records(&cfg).unwrap().iter().map(|r| r.p).collect();
        assert_eq!(got, vec![5, 13, 17, 29]);
    }

    #[test]
    fn config_errors() {
        let mut cfg = ScanConfig::new(Metric::OrderClass, 2, 30, "unused");
        assert!(cfg.validate().is_err());
        cfg.metric = Metric::N1;
        cfg.t = Some(2);
        assert!(cfg.validate().is_err());
        cfg.t = None;
        cfg.workers = 0;
        assert!(cfg.validate().is_err());
        let cfg = ScanConfig::new(Metric::N1, 30, 2, "unused");
        assert!(cfg.validate().is_err());
        assert!("bogus".parse::<Metric>().is_err());
        assert_eq!("max_n".parse::<Metric>().unwrap(), Metric::MaxN);
    }

    #[test]
    fn csv_format() {
        let recs = vec![ExperimentRecord {
            p: 7,
            metric: Metric::N1,
            value: 2,
            eff_exp: effective_exponent(2, 7),
            elapsed_ms: 0,
        }];
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "p,metric,value,eff_exp,elapsed_ms\n7,n1,2,0.356207,0\n"
        );
    }

    #[test]
    fn exponent_bounds() {
        for r in rows(Metric::M, 2, 400) {
            assert!(r.eff_exp >= 0.0 && r.eff_exp <= 2.0);
        }
        for r in rows(Metric::MaxN, 2, 400) {
            assert!(r.eff_exp >= 0.0 && r.eff_exp <= 1.0);
            assert_eq!(r.eff_exp == 0.0, r.value <= 1);
        }
    }
}
