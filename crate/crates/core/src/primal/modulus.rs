use std::fmt;

use super::sieve::{is_prime, primes_in};
use crate::error::{Error, Result};

/// A product of distinct primes, stored with its ascending factor list.
///
/// The value is held in 128 bits, which covers every primorial up to 101#.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquarefreeModulus {
    factors: Vec<u64>,
    value: u128,
}

impl SquarefreeModulus {
    /// The empty product, N = 1.
    pub fn one() -> Self {
        SquarefreeModulus {
            factors: Vec::new(),
            value: 1,
        }
    }

    pub fn from_factors(factors: Vec<u64>) -> Result<Self> {
        let mut value: u128 = 1;
        for (i, &q) in factors.iter().enumerate() {
            if !is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            if i > 0 && factors[i - 1] >= q {
                return Err(Error::InvalidArgument(format!(
                    "factors must be strictly ascending: {factors:?}"
                )));
            }
            value = value
                .checked_mul(q as u128)
                .ok_or(Error::ModulusOverflow(q))?;
        }
        Ok(SquarefreeModulus { factors, value })
    }

    /// Factor a squarefree integer by trial division.
    pub fn from_value(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let factors = distinct_prime_factors(n);
        let m = Self::from_factors(factors)?;
        if m.value != n as u128 {
            return Err(Error::InvalidArgument(format!("{n} is not squarefree")));
        }
        Ok(m)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn largest_factor(&self) -> Option<u64> {
        self.factors.last().copied()
    }

    pub fn contains(&self, q: u64) -> bool {
        self.factors.binary_search(&q).is_ok()
    }

    /// Multiply in one more prime (no-op when it is already a factor).
    pub fn with_factor(&self, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if self.contains(q) {
            return Ok(self.clone());
        }
        let mut factors = self.factors.clone();
        let at = factors.partition_point(|&f| f < q);
        factors.insert(at, q);
        Self::from_factors(factors)
    }

    /// True when the factors are exactly the primes up to the largest one.
    pub fn is_primorial(&self) -> bool {
        match self.largest_factor() {
            None => false,
            Some(p) => primes_in(2, p).map(|ps| ps == self.factors).unwrap_or(false),
        }
    }

    /// Euler's totient.
    pub fn totient(&self) -> u128 {
        phi_i(1, self)
    }
}

impl fmt::Display for SquarefreeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The primorial p#: product of all primes up to and including `p`.
pub fn primorial(p: u64) -> Result<SquarefreeModulus> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    SquarefreeModulus::from_factors(primes_in(2, p)?)
}

/// Generalized totient: product of `(q - i)` over the prime factors `q > i`.
pub fn phi_i(i: u64, modulus: &SquarefreeModulus) -> u128 {
    modulus
        .factors
        .iter()
        .filter(|&&q| q > i)
        .map(|&q| (q - i) as u128)
        .product()
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Radical Q of an even gap g (product of its distinct prime factors).
/// The largest factor of the result is q-bar.
pub fn radical_of_even(g: u64) -> Result<SquarefreeModulus> {
    if g < 2 || !g.is_multiple_of(2) {
        return Err(Error::InvalidGap(g));
    }
    SquarefreeModulus::from_factors(distinct_prime_factors(g))
}
