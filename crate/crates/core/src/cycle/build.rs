use std::io::Write;

use super::cache::CacheHeader;
use super::GapCycle;
use crate::error::{Error, Result};
use crate::primal::{is_prime, primorial, primes_in, SquarefreeModulus};

/// Default ceiling on gaps held in memory (512 MiB of u16).
pub const DEFAULT_IN_MEMORY_GAPS: u128 = 1 << 28;

/// Largest modulus the brute-force oracle will scan.
pub const ORACLE_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_in_memory: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_in_memory: DEFAULT_IN_MEMORY_GAPS,
        }
    }
}

/// Result of [`extend_cycle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub cycle: GapCycle,
    /// Number of candidates removed as multiples of the new prime.
    pub closures: u64,
}

/// Emit the gaps of G(qN) from G(N) into `sink`.
///
/// When q divides N the result is q concatenated copies. Otherwise the q
/// copies are walked while tracking the running candidate value mod q; a
/// candidate that is a multiple of q is closed by merging the gap that ends
/// on it into the next one. Candidate 1 and the final candidate qN + 1 are
/// never multiples of q, so no merge wraps past the end. Returns the number
/// of closures.
pub fn extend_into<F>(base: &GapCycle, q: u64, mut sink: F) -> Result<u64>
where
    F: FnMut(u16) -> Result<()>,
{
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if base.modulus().contains(q) {
        for _ in 0..q {
            for &g in base.gaps() {
                sink(g)?;
            }
        }
        return Ok(0);
    }
    let q32 = q as u32;
    let mut residue: u32 = 1 % q32;
    let mut pending: u32 = 0;
    let mut closures = 0u64;
    for _ in 0..q {
        for &g in base.gaps() {
            pending += g as u32;
            residue = (residue + g as u32) % q32;
            if residue == 0 {
                closures += 1;
                continue;
            }
            if pending > u16::MAX as u32 {
                return Err(Error::GapOverflow(pending as u64));
            }
            sink(pending as u16)?;
            pending = 0;
        }
    }
    debug_assert_eq!(pending, 0);
    Ok(closures)
}

fn extended_len(base: &GapCycle, q: u64) -> u128 {
    let copies = if base.modulus().contains(q) { q } else { q - 1 };
    base.len() as u128 * copies as u128
}

/// Build G(qN) from G(N) in memory.
pub fn extend_cycle(base: &GapCycle, q: u64) -> Result<Extension> {
    extend_cycle_with(base, q, BuildOptions::default())
}

fn extend_cycle_with(base: &GapCycle, q: u64, opts: BuildOptions) -> Result<Extension> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let modulus = base.modulus().with_factor(q)?;
    let needed = extended_len(base, q);
    if needed > opts.max_in_memory {
        return Err(Error::CapacityExceeded {
            needed,
            limit: opts.max_in_memory,
        });
    }
    let mut gaps = Vec::with_capacity(needed as usize);
    let closures = extend_into(base, q, |g| {
        gaps.push(g);
        Ok(())
    })?;
    Ok(Extension {
        cycle: GapCycle::from_parts(modulus, gaps),
        closures,
    })
}

/// Build G(N) for any squarefree N by adding one prime factor at a time,
/// starting from G(1).
pub fn build_cycle(modulus: &SquarefreeModulus) -> Result<GapCycle> {
    build_cycle_with(modulus, BuildOptions::default())
}

pub(crate) fn build_cycle_with(modulus: &SquarefreeModulus, opts: BuildOptions) -> Result<GapCycle> {
    let mut cycle = GapCycle::trivial();
    for &q in modulus.factors() {
        cycle = extend_cycle_with(&cycle, q, opts)?.cycle;
    }
    Ok(cycle)
}

/// Build G(p#) by the stage recursion from G(2#) = [2].
pub fn build_primorial_cycle(p: u64) -> Result<GapCycle> {
    build_primorial_cycle_with(p, BuildOptions::default())
}

pub fn build_primorial_cycle_with(p: u64, opts: BuildOptions) -> Result<GapCycle> {
    build_cycle_with(&primorial(p)?, opts)
}

/// Build G(p#) and write it straight to `out` in cache format. Only the
/// previous stage G(p_prev#) is held in memory. Returns the number of gaps.
pub fn stream_primorial_cycle<W: Write>(p: u64, out: W) -> Result<u64> {
    let modulus = primorial(p)?;
    let prev: Vec<u64> = primes_in(2, p)?.into_iter().filter(|&q| q < p).collect();
    let prev_modulus = SquarefreeModulus::from_factors(prev)?;
    let base = build_cycle(&prev_modulus)?;
    let header = CacheHeader {
        modulus: modulus.clone(),
        gap_count: modulus.totient() as u64,
    };
    let mut out = std::io::BufWriter::with_capacity(1 << 20, out);
    header.write_to(&mut out)?;
    let mut written = 0u64;
    extend_into(&base, p, |g| {
        written += 1;
        out.write_all(&g.to_le_bytes())?;
        Ok(())
    })?;
    out.flush()?;
    debug_assert_eq!(written, header.gap_count);
    Ok(written)
}

/// Independent construction by direct scan of `[2, N + 1]`, keeping the
/// integers with no prime factor in common with N.
pub fn oracle_cycle(modulus: &SquarefreeModulus) -> Result<GapCycle> {
    let n = modulus.value();
    if n > ORACLE_LIMIT {
        return Err(Error::CapacityExceeded {
            needed: n,
            limit: ORACLE_LIMIT,
        });
    }
    let n = n as u64;
    let factors = modulus.factors();
    let mut gaps = Vec::new();
    let mut last = 1u64;
    for x in 2..=n + 1 {
        if factors.iter().all(|&q| x % q != 0) {
            let g = x - last;
            gaps.push(u16::try_from(g).map_err(|_| Error::GapOverflow(g))?);
            last = x;
        }
    }
    Ok(GapCycle::from_parts(modulus.clone(), gaps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primorials() {
        assert_eq!(build_primorial_cycle(2).unwrap().gaps(), &[2]);
        assert_eq!(build_primorial_cycle(3).unwrap().gaps(), &[4, 2]);
        assert_eq!(
            build_primorial_cycle(5).unwrap().gaps(),
            &[6, 4, 2, 4, 2, 4, 6, 2]
        );
        let g7 = build_primorial_cycle(7).unwrap();
        assert_eq!(g7.len(), 48);
        assert_eq!(g7.sum(), 210);
    }

    #[test]
    fn extend_six_by_five() {
        let g6 = build_primorial_cycle(3).unwrap();
        let ext = extend_cycle(&g6, 5).unwrap();
        assert_eq!(ext.cycle.gaps(), &[6, 4, 2, 4, 2, 4, 6, 2]);
        assert_eq!(ext.closures, 2);
        assert_eq!(ext.cycle.modulus().value(), 30);
    }

    #[test]
    fn extend_by_existing_factor_concatenates() {
        let g6 = build_primorial_cycle(3).unwrap();
        let ext = extend_cycle(&g6, 2).unwrap();
        assert_eq!(ext.cycle.gaps(), &[4, 2, 4, 2]);
        assert_eq!(ext.closures, 0);
        // the modulus is still squarefree 6, so this is no longer G(N)
        assert_eq!(ext.cycle.modulus().value(), 6);
        assert!(matches!(extend_cycle(&g6, 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn extend_ten_by_three_matches_oracle() {
        let m10 = SquarefreeModulus::from_value(10).unwrap();
        let g10 = oracle_cycle(&m10).unwrap();
        assert_eq!(g10.gaps(), &[2, 4, 2, 2]);
        let g30 = extend_cycle(&g10, 3).unwrap().cycle;
        let oracle = oracle_cycle(&SquarefreeModulus::from_value(30).unwrap()).unwrap();
        assert_eq!(g30, oracle);
    }

    #[test]
    fn oracle_small_cases() {
        let o = |n| oracle_cycle(&SquarefreeModulus::from_value(n).unwrap()).unwrap();
        assert_eq!(o(30).gaps(), &[6, 4, 2, 4, 2, 4, 6, 2]);
        assert_eq!(o(6).gaps(), &[4, 2]);
        assert_eq!(o(2).gaps(), &[2]);
        assert_eq!(o(1).gaps(), &[1]);
        assert_eq!(o(15).gaps(), &[1, 2, 3, 1, 3, 2, 1, 2]);
        let too_big = primorial(23).unwrap();
        assert!(oracle_cycle(&too_big).unwrap_err().is_capacity());
    }

    #[test]
    fn capacity_is_enforced() {
        let opts = BuildOptions { max_in_memory: 100 };
        let err = build_primorial_cycle_with(11, opts).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { needed: 480, .. }));
    }
}
