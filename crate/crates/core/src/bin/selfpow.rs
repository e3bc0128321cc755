use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use selfpow::additive::{garaev_report, parse_terms, sparse_roots, ResidueSet};
use selfpow::arith::{PrimeContext, DEFAULT_TABLE_THRESHOLD};
use selfpow::congruence::{
    crocker_distinct, crocker_floor, fixed_points, histogram, lift_solution, n_count,
    order_class_decompose, order_class_direct, symmetric_count, symmetric_count_pairs,
    zd_identity_count,
};
use selfpow::harness::{scan, verify, Metric, ScanConfig};
use selfpow::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "selfpow",
    version,
    about = "Solution counts of x^x = a (mod p)"
)]
struct Cli {
    /// Tabulate discrete logs for primes up to this bound.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_THRESHOLD)]
    table_threshold: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// N(p;a)
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// N(p;a) for every a, one line per residue
    Hist {
        #[arg(long)]
        p: u64,
    },
    /// M(p)
    Sym {
        #[arg(long)]
        p: u64,
        /// Also run the pair-enumeration oracle (p <= 500)
        #[arg(long)]
        oracle: bool,
    },
    /// Solutions of x^(tx) = 1
    Orderclass {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        decompose: bool,
    },
    /// Solutions of x^(x-1) = 1
    Fixed {
        #[arg(long)]
        p: u64,
    },
    /// Distinct values of x^x mod p
    Crocker {
        #[arg(long)]
        p: u64,
    },
    /// Explicit solution mod p(p-1)
    Lift {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// N(p;a) through the Z_d / M_d identity
    Zd {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Sumset / product set sizes against min(p|A|, |A|^4/p)
    Garaev {
        #[arg(long)]
        p: u64,
        /// `1,2,4`, `interval:lo..hi` or `geom:g,len`
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Roots of a sparse polynomial over F_q^*
    Sparse {
        #[arg(long)]
        q: u64,
        /// `c1:k1,c2:k2,...`
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
    },
    /// Evaluate a metric over a prime range into a CSV file
    Scan {
        #[arg(long)]
        metric: Metric,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run the exact-identity suite over all primes <= plimit
    Verify {
        #[arg(long)]
        plimit: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InconsistentRoot { .. }
                | Error::NonExactDivision { .. }
                | Error::MdMismatch { .. }
                | Error::DlogFailed { .. } => EXIT_VERIFY_FAILED,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn unit(p: u64, a: i64) -> selfpow::Result<u64> {
    let r = selfpow::arith::normalize(a, p);
    if r == 0 {
        return Err(Error::NotUnit {
            a: a.unsigned_abs(),
            p,
        });
    }
    Ok(r)
}

fn run(cli: Cli) -> selfpow::Result<u8> {
    let ctx = |p: u64| PrimeContext::with_threshold(p, cli.table_threshold);
    match cli.command {
        Command::Count { p, a } => {
            let a = selfpow::arith::normalize(a, p.max(1));
            println!("{}", n_count(p, a)?);
        }
        Command::Hist { p } => {
            let h = histogram(&ctx(p)?)?;
            println!("a,count");
            for (i, c) in h.counts().iter().enumerate() {
                println!("{},{c}", i + 1);
            }
            eprintln!("total {} (p - 1 = {})", h.total(), p - 1);
        }
        Command::Sym { p, oracle } => {
            let m = symmetric_count(&ctx(p)?)?;
            println!("{m}");
            if oracle {
                let pairs = symmetric_count_pairs(p)?;
                println!(
                    "oracle {pairs} {}",
                    if pairs == m { "agrees" } else { "DISAGREES" }
                );
                if pairs != m {
                    return Ok(EXIT_VERIFY_FAILED);
                }
            }
        }
        Command::Orderclass { p, t, decompose } => {
            let c = ctx(p)?;
            if decompose {
                let r = order_class_decompose(&c, t)?;
                println!("d,T_d,D,size_y,size_w,size_sumset,size_prodset");
                for rec in &r.records {
                    println!(
                        "{},{},{},{},{},{},{}",
                        rec.d,
                        rec.t_d,
                        rec.big_d,
                        rec.size_y,
                        rec.size_w,
                        rec.size_sumset,
                        rec.size_prodset
                    );
                }
                println!(
                    "direct {} decomposed {}",
                    r.direct_count,
                    r.decomposed_total()
                );
                if r.direct_count != r.decomposed_total() {
                    return Ok(EXIT_VERIFY_FAILED);
                }
            } else {
                println!("{}", order_class_direct(&c, t)?);
            }
        }
        Command::Fixed { p } => println!("{}", fixed_points(&ctx(p)?)),
        Command::Crocker { p } => {
            let distinct = crocker_distinct(&ctx(p)?)?;
            println!("{distinct}");
            eprintln!("floor(sqrt((p-1)/2)) = {}", crocker_floor(p));
        }
        Command::Lift { p, a } => {
            let r = lift_solution(&ctx(p)?, unit(p, a)?)?;
            println!(
                "x = {} (mod {}), verified = {}",
                r.x,
                p as u128 * (p - 1) as u128,
                r.verified
            );
            if !r.verified {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Zd { p, a } => {
            let c = ctx(p)?;
            let a = unit(p, a)?;
            let r = zd_identity_count(&c, a)?;
            println!("d,size_z,m_d");
            for term in &r.terms {
                println!("{},{},{}", term.d, term.size_z, term.m_d);
            }
            let direct = n_count(p, a)?;
            println!(
                "identity {} direct {} (ord a = {}, g = {})",
                r.count, direct, r.t, r.g
            );
            if r.count != direct {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Garaev { p, set } => {
            let r = garaev_report(&ResidueSet::parse(p, &set)?);
            println!(
                "|A| = {}, |A+A| = {}, |A*A| = {}, lhs = {}, rhs = {:.6}, ratio = {:.6}",
                r.size_a, r.size_sumset, r.size_prodset, r.lhs, r.rhs, r.ratio
            );
        }
        Command::Sparse { q, terms } => {
            let r = sparse_roots(q, &parse_terms(&terms)?)?;
            println!(
                "Q = {}, delta = {}, main term = {:.6}, slack = {:.6}, within bound = {}",
                r.roots, r.delta, r.main_term, r.slack, r.within_bound
            );
        }
        Command::Scan {
            metric,
            pmin,
            pmax,
            t,
            out,
            workers,
        } => {
            let cfg = ScanConfig {
                p_min: pmin,
                p_max: pmax,
                metric,
                t,
                workers,
                output: out,
                table_threshold: cli.table_threshold,
            };
            let summary = scan(&cfg)?;
            eprintln!("{summary}");
        }
        Command::Verify { plimit, workers } => {
            if plimit < 3 {
                return Err(Error::Config("plimit must be >= 3".into()));
            }
            let report = verify(plimit, workers)?;
            print!("{report}");
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(0)
}
