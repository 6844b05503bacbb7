//! Segmented sieve of Eratosthenes over odd candidates.
//!
//! Base primes up to `isqrt(b)` are sieved once; the range `[a, b]` is then
//! processed in blocks of `block_size` odd candidates, so memory stays at
//! `O(sqrt(b) + block_size)` while streaming and `O(sqrt(b) + (b - a))` when
//! the primes are collected.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest upper bound accepted by the sieve.
pub const MAX_BOUND: u64 = i64::MAX as u64;

pub const DEFAULT_BLOCK_SIZE: usize = 1 << 20;
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

/// Tunables for the segmented sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Odd candidates per block.
    pub block_size: usize,
    /// Rough ceiling, in bytes, on what one sieve run may allocate.
    pub memory_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Ascending primes in `[a, b]` with the default configuration.
pub fn primes_in(a: u64, b: u64) -> Result<Vec<u64>> {
    SieveConfig::default().primes_in(a, b)
}

impl SieveConfig {
    pub fn with_block_size(block_size: usize) -> Self {
        SieveConfig {
            block_size: block_size.max(64),
            ..Default::default()
        }
    }

    fn check(&self, a: u64, b: u64, collect: bool) -> Result<()> {
        if a < 2 {
            return Err(Error::InvalidArgument(format!(
                "prime range must start at 2 or above, got {a}"
            )));
        }
        if a > b {
            return Err(Error::InvertedRange { lo: a, hi: b });
        }
        if b > MAX_BOUND {
            return Err(Error::BudgetExceeded {
                bound: b,
                budget: MAX_BOUND,
            });
        }
        let root = b.isqrt();
        // odd-only base sieve bytes plus the base primes themselves
        let mut needed = root / 2 + 8 * approx_prime_count(root) + self.block_size as u64;
        if collect {
            needed = needed.saturating_add(8 * approx_prime_count_between(a, b));
        }
        if needed > self.memory_budget {
            return Err(Error::MemoryBudget {
                needed,
                budget: self.memory_budget,
            });
        }
        Ok(())
    }

    /// Ascending primes in `[a, b]`.
    pub fn primes_in(&self, a: u64, b: u64) -> Result<Vec<u64>> {
        self.check(a, b, true)?;
        let mut out = Vec::new();
        let base = base_primes(b.isqrt());
        let mut buf = Vec::new();
        for (lo, hi) in self.block_bounds(a, b) {
            sieve_block(&base, lo, hi, &mut buf);
            out.extend_from_slice(&buf);
        }
        Ok(out)
    }

    /// Lazily stream the primes in `[a, b]` one block at a time.
    pub fn stream(&self, a: u64, b: u64) -> Result<PrimeStream> {
        self.check(a, b, false)?;
        let base = base_primes(b.isqrt());
        Ok(PrimeStream {
            base,
            blocks: self.block_bounds(a, b),
            next_block: 0,
            buf: Vec::new(),
            pos: 0,
        })
    }

    /// Sieve `[a, b]` block by block in parallel, mapping each block's primes
    /// through `f`. Results come back in ascending block order.
    pub fn par_map_blocks<T, F>(&self, a: u64, b: u64, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[u64]) -> T + Sync,
    {
        self.check(a, b, false)?;
        let base = base_primes(b.isqrt());
        let blocks = self.block_bounds(a, b);
        Ok(blocks
            .par_iter()
            .map_init(Vec::new, |buf, &(lo, hi)| {
                sieve_block(&base, lo, hi, buf);
                f(buf)
            })
            .collect())
    }

    fn block_bounds(&self, a: u64, b: u64) -> Vec<(u64, u64)> {
        let span = 2 * self.block_size as u64;
        let mut out = Vec::new();
        let mut lo = a;
        loop {
            let hi = lo.saturating_add(span - 1).min(b);
            out.push((lo, hi));
            if hi >= b {
                break;
            }
            lo = hi + 1;
        }
        out
    }
}

/// Iterator over the primes of a range, produced by [`SieveConfig::stream`].
#[derive(Debug)]
pub struct PrimeStream {
    base: Vec<u64>,
    blocks: Vec<(u64, u64)>,
    next_block: usize,
    buf: Vec<u64>,
    pos: usize,
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.pos == self.buf.len() {
            let &(lo, hi) = self.blocks.get(self.next_block)?;
            self.next_block += 1;
            sieve_block(&self.base, lo, hi, &mut self.buf);
            self.pos = 0;
        }
        let p = self.buf[self.pos];
        self.pos += 1;
        Some(p)
    }
}

fn approx_prime_count(x: u64) -> u64 {
    if x < 17 {
        return 7;
    }
    let xf = x as f64;
    (1.3 * xf / xf.ln()) as u64
}

fn approx_prime_count_between(a: u64, b: u64) -> u64 {
    let width = (b - a) as f64 + 1.0;
    let ln = (b.max(3) as f64).ln().max(1.0);
    (1.3 * width / ln) as u64 + 16
}

/// Odd primes up to `limit` plus 2.
pub(crate) fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = (limit as usize - 1) / 2; // odd numbers 3..=limit
    let mut composite = vec![false; n + 1];
    let mut primes = vec![2];
    for i in 1..=n {
        if composite[i] {
            continue;
        }
        let p = 2 * i + 1;
        primes.push(p as u64);
        let mut j = p * p / 2;
        while j <= n {
            composite[j] = true;
            j += p;
        }
    }
    primes
}

/// Primes in `[lo, hi]` given base primes covering `isqrt(hi)`.
fn sieve_block(base: &[u64], lo: u64, hi: u64, out: &mut Vec<u64>) {
    out.clear();
    if lo <= 2 && hi >= 2 {
        out.push(2);
    }
    let first = if lo.is_multiple_of(2) { lo + 1 } else { lo }.max(3);
    if first > hi {
        return;
    }
    let count = ((hi - first) / 2 + 1) as usize;
    let mut composite = vec![false; count];
    for &p in base.iter().skip(1) {
        let sq = p * p;
        if sq > hi {
            break;
        }
        let mut start = if sq >= first {
            sq
        } else {
            let m = first.div_ceil(p) * p;
            if m % 2 == 0 {
                m + p
            } else {
                m
            }
        };
        if start > hi {
            continue;
        }
        start = (start - first) / 2;
        let mut j = start as usize;
        let step = p as usize;
        while j < count {
            composite[j] = true;
            j += step;
        }
    }
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| first + 2 * i as u64),
    );
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Largest prime strictly below `n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..n).rev().find(|&c| is_prime(c))
}
