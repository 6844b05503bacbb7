//! Gaps among the generators of Z mod N and their evolution under the
//! sieve of Eratosthenes.

pub mod census;
pub mod cycle;
pub mod dynsys;
pub mod error;
pub mod polignac;
pub mod primal;
pub mod report;
pub mod survival;

pub use error::{CacheError, Error, Result};
