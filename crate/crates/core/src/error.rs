use std::io;

use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: invalid input (bad arguments, malformed
/// files, failed preconditions) and resource limits (memory, sieve budget,
/// integer capacity). [`Error::is_capacity`] tells them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: lower bound {lo} exceeds upper bound {hi}")]
    InvertedRange { lo: u64, hi: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a valid even gap")]
    InvalidGap(u64),

    #[error("malformed constellation {0:?}: expected a comma list of positive even integers")]
    MalformedConstellation(String),

    #[error("modulus overflows 128 bits while multiplying by {0}")]
    ModulusOverflow(u64),

    #[error("gap of size {0} does not fit in 16 bits")]
    GapOverflow(u64),

    #[error("cycle of {needed} gaps exceeds the in-memory limit of {limit}; use stream mode")]
    CapacityExceeded { needed: u128, limit: u128 },

    #[error("sieve bound {bound} exceeds the configured budget of {budget}")]
    BudgetExceeded { bound: u64, budget: u64 },

    #[error("sieve needs about {needed} bytes, above the memory budget of {budget}")]
    MemoryBudget { needed: u64, budget: u64 },

    #[error("model misuse: eigenvalue p - J - 1 = {p} - {max_len} - 1 is not positive")]
    ModelDomain { p: u64, max_len: usize },

    #[error("cache file: {0}")]
    Cache(CacheError),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Problems found while decoding a cycle cache file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CacheError {
    #[error("bad magic bytes {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0}")]
    Version(u8),
    #[error("truncated payload")]
    Truncated,
    #[error("{0} trailing bytes after the gap payload")]
    TrailingBytes(u64),
    #[error("factor list is not a strictly ascending list of primes")]
    BadFactors,
    #[error("gap count {found} does not match phi(N) = {expected}")]
    CountMismatch { expected: u128, found: u64 },
}

impl From<CacheError> for Error {
    fn from(e: CacheError) -> Self {
        Error::Cache(e)
    }
}

impl Error {
    /// True for memory, budget and integer-capacity failures.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::ModulusOverflow(_)
                | Error::GapOverflow(_)
                | Error::CapacityExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::MemoryBudget { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
