//! The population model: exact iteration of the one-step matrices, their
//! Pascal eigenstructure, asymptotic ratios, eigenvalue products and the
//! polynomial approximation used to compare two gaps.

mod matrix;
mod poly;
mod products;

pub use matrix::{
    eigendecompose, model_matrix, pascal_upper, pascal_upper_inverse, Matrix, SystemMatrices,
};
pub use poly::{crossover, polynomial_approx, Crossover, Polynomial};
pub use products::{
    eigenvalue_products, eigenvalue_products_with, log_eigenvalue_products, prime_for_a2,
    ProductOptions, DEFAULT_PRIME_BUDGET,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::census::{Census, Constellation};
use crate::error::{Error, Result};
use crate::primal::{distinct_prime_factors, is_prime, next_prime, primes_in};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Raw counts n_{s,j}(p#).
    Raw,
    /// Counts divided by phi_{j1+1}(p#).
    Normalized,
}

/// Populations of a target and its driving terms of lengths `j1..=J` at
/// stage p#.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationVector {
    j1: usize,
    prime: u64,
    basis: Basis,
    entries: Vec<BigRational>,
}

impl PopulationVector {
    pub fn new(j1: usize, prime: u64, basis: Basis, entries: Vec<BigRational>) -> Result<Self> {
        if j1 == 0 {
            return Err(Error::InvalidArgument("base length must be at least 1".into()));
        }
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty population vector".into()));
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::InvalidArgument("populations must be nonnegative".into()));
        }
        Ok(PopulationVector {
            j1,
            prime,
            basis,
            entries,
        })
    }

    /// Raw integer counts for lengths `j1, j1 + 1, ...`.
    pub fn raw<I, T>(j1: usize, prime: u64, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let entries = counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(j1, prime, Basis::Raw, entries)
    }

    pub fn normalized(j1: usize, prime: u64, entries: Vec<BigRational>) -> Result<Self> {
        Self::new(j1, prime, Basis::Normalized, entries)
    }

    /// Raw counts from a census on a primorial cycle.
    pub fn from_census(census: &Census) -> Result<Self> {
        let m = &census.modulus;
        if !m.is_primorial() {
            return Err(Error::InvalidArgument(format!(
                "population vectors need a primorial cycle, got N = {m}"
            )));
        }
        let p = m.largest_factor().unwrap_or(2);
        Self::raw(census.j1(), p, census.counts().iter().copied())
    }

    pub fn j1(&self) -> usize {
        self.j1
    }

    pub fn max_len(&self) -> usize {
        self.j1 + self.entries.len() - 1
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Entry for length `j` (zero outside `j1..=J`).
    pub fn get(&self, j: usize) -> BigRational {
        j.checked_sub(self.j1)
            .and_then(|k| self.entries.get(k).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// phi_{j1+1}(p#): the divisor between the raw and normalized bases.
    pub fn reference(&self) -> BigInt {
        reference(self.j1, self.prime)
    }

    pub fn to_normalized(&self) -> Self {
        match self.basis {
            Basis::Normalized => self.clone(),
            Basis::Raw => {
                let d = BigRational::from_integer(self.reference());
                self.rebased(Basis::Normalized, |e| e / &d)
            }
        }
    }

    pub fn to_raw(&self) -> Self {
        match self.basis {
            Basis::Raw => self.clone(),
            Basis::Normalized => {
                let d = BigRational::from_integer(self.reference());
                self.rebased(Basis::Raw, |e| e * &d)
            }
        }
    }

    /// Pad with zeros up to length `max_len`.
    pub fn padded(&self, max_len: usize) -> Self {
        let mut v = self.clone();
        let want = max_len.saturating_sub(self.j1) + 1;
        if want > v.entries.len() {
            v.entries.resize(want, BigRational::zero());
        }
        v
    }

    fn rebased(&self, basis: Basis, f: impl Fn(&BigRational) -> BigRational) -> Self {
        PopulationVector {
            j1: self.j1,
            prime: self.prime,
            basis,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

fn reference(j1: usize, p: u64) -> BigInt {
    let i = j1 as u64 + 1;
    primes_in(2, p)
        .unwrap_or_default()
        .into_iter()
        .filter(|&q| q > i)
        .fold(BigInt::one(), |acc, q| acc * BigInt::from(q - i))
}

/// One sieve stage: multiply by the model matrix at prime `p`.
pub fn step(v: &PopulationVector, p: u64) -> Result<PopulationVector> {
    if p <= v.prime {
        return Err(Error::InvalidArgument(format!(
            "step prime {p} must exceed the current stage {}",
            v.prime
        )));
    }
    let m = model_matrix(p, v.j1, v.max_len(), v.basis)?;
    Ok(PopulationVector {
        j1: v.j1,
        prime: p,
        basis: v.basis,
        entries: m.apply(&v.entries),
    })
}

/// Apply [`step`] at every prime in `(v.prime, pk]`, ascending.
pub fn iterate(v: &PopulationVector, pk: u64) -> Result<PopulationVector> {
    if pk <= v.prime {
        return Err(Error::InvalidArgument(format!(
            "target prime {pk} must exceed the starting stage {}",
            v.prime
        )));
    }
    let mut cur = v.clone();
    for p in primes_in(v.prime + 1, pk)? {
        cur = step(&cur, p)?;
    }
    Ok(cur)
}

/// Limit of the normalized population: the sum of the normalized entries.
pub fn asymptotic_ratio(v: &PopulationVector) -> BigRational {
    v.to_normalized()
        .entries
        .iter()
        .fold(BigRational::zero(), |acc, e| acc + e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    /// `|s| < 2 p1`: the recursion holds for every later stage.
    Full,
    /// Every interval sum of `s` has all its prime factors at most p0, so
    /// the asymptotic weight is still exact.
    AsymptoticOnly,
    Invalid,
}

/// Which results of the model apply to `s` started from `p0#`.
pub fn validity(s: &Constellation, p0: u64) -> Validity {
    if s.sum() < 2 * next_prime(p0) {
        return Validity::Full;
    }
    let small = |x: u64| distinct_prime_factors(x).into_iter().all(|q| q <= p0);
    if s.interval_sums().into_iter().all(small) {
        Validity::AsymptoticOnly
    } else {
        Validity::Invalid
    }
}
