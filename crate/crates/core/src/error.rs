use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue {a} is not a unit modulo {p}")]
    NotUnit { a: u64, p: u64 },
    #[error("{t} does not divide {n}")]
    NotDivisor { t: u64, n: u64 },
    #[error("histogram mode is capped at p <= {cap}, got p = {p}")]
    HistogramTooLarge { p: u64, cap: u64 },
    #[error("pair-enumeration oracle is capped at p <= {cap}, got p = {p}")]
    OracleTooLarge { p: u64, cap: u64 },
    #[error("residue set must be nonempty")]
    EmptySet,
    #[error("residue {value} is zero modulo {p}")]
    ZeroResidue { value: i64, p: u64 },
    #[error("sparse polynomial needs at least two terms")]
    TooFewTerms,
    #[error("coefficient {coefficient} vanishes modulo {q}")]
    ZeroCoefficient { coefficient: i64, q: u64 },
    #[error("sparse polynomial collapses to fewer than two terms modulo {q}")]
    DegenerateSparse { q: u64 },
    #[error("discrete logarithm of {a} modulo {p} not found")]
    DlogFailed { a: u64, p: u64 },
    #[error("no primitive root g with {a} = g^{big_t} (mod {p})")]
    InconsistentRoot { p: u64, a: u64, big_t: u64 },
    #[error("#Z_d = {zd} not divisible by M_d = {md} (p = {p}, a = {a}, d = {d})")]
    NonExactDivision {
        p: u64,
        a: u64,
        d: u64,
        zd: u64,
        md: u64,
    },
    #[error("M_d mismatch for p = {p}, d = {d}: direct {direct}, closed form {closed}")]
    MdMismatch {
        p: u64,
        d: u64,
        direct: u64,
        closed: u64,
    },
    #[error("bad set spec `{0}`")]
    BadSetSpec(String),
    #[error("bad term list `{0}`")]
    BadTerms(String),
    #[error("invalid scan config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
