//! Eigenvalue products `a_j^k = prod_{p0 < p <= pk} (p - j - 1) / (p - 2)`.
//!
//! Each factor is `1 - (j - 1)/(p - 2)`, so the product is accumulated as a
//! sum of `ln_1p` terms with compensated summation inside each sieve block
//! and a fixed pairwise reduction across blocks.

use crate::error::{Error, Result};
use crate::primal::{is_prime, SieveConfig};

/// Default ceiling on the largest prime visited.
pub const DEFAULT_PRIME_BUDGET: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductOptions {
    pub sieve: SieveConfig,
    pub budget: u64,
}

impl Default for ProductOptions {
    fn default() -> Self {
        ProductOptions {
            sieve: SieveConfig::default(),
            budget: DEFAULT_PRIME_BUDGET,
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Sum {
    hi: f64,
    lo: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.hi + x;
        if self.hi.abs() >= x.abs() {
            self.lo += (self.hi - t) + x;
        } else {
            self.lo += (x - t) + self.hi;
        }
        self.hi = t;
    }

    fn merge(mut self, other: Sum) -> Sum {
        self.add(other.hi);
        self.add(other.lo);
        self
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn check(p0: u64, pk: u64, jmax: usize, opts: &ProductOptions) -> Result<()> {
    if !is_prime(p0) {
        return Err(Error::NotPrime(p0));
    }
    if jmax < 2 {
        return Err(Error::InvalidArgument(format!("jmax must be at least 2, got {jmax}")));
    }
    if p0 < jmax as u64 + 1 {
        return Err(Error::ModelDomain { p: p0, max_len: jmax });
    }
    if pk < p0 {
        return Err(Error::InvertedRange { lo: p0, hi: pk });
    }
    if pk > opts.budget {
        return Err(Error::BudgetExceeded {
            bound: pk,
            budget: opts.budget,
        });
    }
    Ok(())
}

/// `ln a_j^k` for `j = 2..=jmax`.
pub fn log_eigenvalue_products(
    p0: u64,
    pk: u64,
    jmax: usize,
    opts: &ProductOptions,
) -> Result<Vec<f64>> {
    check(p0, pk, jmax, opts)?;
    let width = jmax - 1;
    if pk == p0 {
        return Ok(vec![0.0; width]);
    }
    let blocks = opts.sieve.par_map_blocks(p0 + 1, pk, |primes| {
        let mut sums = vec![Sum::default(); width];
        for &p in primes {
            let d = (p - 2) as f64;
            for (k, s) in sums.iter_mut().enumerate() {
                s.add((-((k + 1) as f64) / d).ln_1p());
            }
        }
        sums
    })?;
    Ok(pairwise(blocks, width).into_iter().map(Sum::value).collect())
}

/// Combine per-block partial sums by a balanced tree in block order, so the
/// result does not depend on thread scheduling.
fn pairwise(mut level: Vec<Vec<Sum>>, width: usize) -> Vec<Sum> {
    if level.is_empty() {
        return vec![Sum::default(); width];
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()),
                None => next.push(a),
            }
        }
        level = next;
    }
    level.pop().unwrap_or_default()
}

/// `a_j^k` for `j = 2..=jmax` with default options.
pub fn eigenvalue_products(p0: u64, pk: u64, jmax: usize) -> Result<Vec<f64>> {
    eigenvalue_products_with(p0, pk, jmax, &ProductOptions::default())
}

pub fn eigenvalue_products_with(
    p0: u64,
    pk: u64,
    jmax: usize,
    opts: &ProductOptions,
) -> Result<Vec<f64>> {
    Ok(log_eigenvalue_products(p0, pk, jmax, opts)?
        .into_iter()
        .map(f64::exp)
        .collect())
}

/// First prime `p > p0` at which `a_2^k` drops to `target` or below.
pub fn prime_for_a2(p0: u64, target: f64, opts: &ProductOptions) -> Result<u64> {
    check(p0, p0, 2, opts)?;
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target a_2 must lie in (0, 1), got {target}"
        )));
    }
    let goal = target.ln();
    let mut acc = Sum::default();
    for p in opts.sieve.stream(p0 + 1, opts.budget)? {
        acc.add((-1.0 / (p - 2) as f64).ln_1p());
        if acc.value() <= goal {
            return Ok(p);
        }
    }
    Err(Error::BudgetExceeded {
        bound: opts.budget,
        budget: opts.budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_factor() {
        let a = eigenvalue_products(13, 17, 3).unwrap();
        assert!((a[0] - 14.0 / 15.0).abs() < 1e-15);
        assert!((a[1] - 13.0 / 15.0).abs() < 1e-15);
        assert_eq!(eigenvalue_products(13, 13, 2).unwrap(), vec![1.0]);
    }

    #[test]
    fn block_size_does_not_matter() {
        let small = ProductOptions {
            sieve: SieveConfig::with_block_size(64),
            ..Default::default()
        };
        let a = eigenvalue_products_with(13, 200_000, 4, &small).unwrap();
        let b = eigenvalue_products(13, 200_000, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-13 * y, "{x} vs {y}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            eigenvalue_products(5, 100, 5),
            Err(Error::ModelDomain { .. })
        ));
        assert!(matches!(
            eigenvalue_products(13, 7, 2),
            Err(Error::InvertedRange { .. })
        ));
        let tight = ProductOptions {
            budget: 1000,
            ..Default::default()
        };
        assert!(matches!(
            eigenvalue_products_with(13, 5000, 2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(prime_for_a2(13, 0.01, &tight).unwrap_err().is_capacity());
    }

    #[test]
    fn inversion() {
        let opts = ProductOptions::default();
        // a_2 from 5# is 4/5 at 7 and 32/45 at 11
        assert_eq!(prime_for_a2(5, 0.75, &opts).unwrap(), 11);
        assert_eq!(prime_for_a2(5, 0.79, &opts).unwrap(), 11);
        assert_eq!(prime_for_a2(5, 0.81, &opts).unwrap(), 7);
    }
}
