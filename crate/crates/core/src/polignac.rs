//! Closed-form asymptotic ratios for single gaps and for repetitions
//! `g, g, ..., g`.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::census::{check_gap, driving_terms_for_gap};
use crate::cycle::GapCycle;
use crate::error::{Error, Result};
use crate::primal::{next_prime, phi_i, primes_in, radical_of_even, SquarefreeModulus};
use crate::report::{csv_writer, decimal, ratio};

fn odd_factor_ratio(q: &SquarefreeModulus, up_to: u64) -> BigRational {
    q.factors()
        .iter()
        .filter(|&&f| f > 2 && f <= up_to)
        .fold(BigRational::one(), |acc, &f| {
            acc * BigRational::new(BigInt::from(f - 1), BigInt::from(f - 2))
        })
}

/// `prod_{q | g, q odd} (q - 1)/(q - 2)`: the limit of the gap's population
/// relative to the gap 2.
pub fn hl_ratio(g: u64) -> Result<BigRational> {
    Ok(odd_factor_ratio(&radical_of_even(g)?, u64::MAX))
}

/// The same product restricted to prime factors `q <= p`: the summed ratios
/// of `g` and its driving terms at stage p#.
pub fn partial_ratio(g: u64, p: u64) -> Result<BigRational> {
    Ok(odd_factor_ratio(&radical_of_even(g)?, p))
}

/// Total number of driving terms of `g` in G(qbar#), where qbar is the
/// largest prime factor of `g`: `phi(Q) * prod_{p < qbar, p not | Q} (p - 2)`.
pub fn seeded_total(g: u64) -> Result<u128> {
    let q = radical_of_even(g)?;
    let qbar = q.largest_factor().unwrap_or(2);
    let mut total = q.totient();
    for p in primes_in(2, qbar)? {
        if p < qbar && !q.contains(p) {
            total = total
                .checked_mul((p - 2) as u128)
                .ok_or(Error::ModulusOverflow(p))?;
        }
    }
    Ok(total)
}

/// Summary of one even gap's asymptotics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapAsymptotics {
    pub g: u64,
    pub q: SquarefreeModulus,
    pub qbar: u64,
    pub w_infinity: BigRational,
}

impl GapAsymptotics {
    pub fn new(g: u64) -> Result<Self> {
        let q = radical_of_even(g)?;
        Ok(GapAsymptotics {
            g,
            qbar: q.largest_factor().unwrap_or(2),
            w_infinity: odd_factor_ratio(&q, u64::MAX),
            q,
        })
    }

    pub fn partial(&self, p: u64) -> BigRational {
        odd_factor_ratio(&self.q, p)
    }
}

/// Feasibility and weight of the repetition `g, ..., g` of length `j1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepetitionWeight {
    pub g: u64,
    pub j1: usize,
    /// Largest prime `p_k` with `p_k# | g`.
    pub pk: u64,
    pub feasible: bool,
    /// `phi_1(Q) / phi_{j1+1}(Q)` when feasible.
    pub w_infinity: Option<BigRational>,
}

pub fn repetition_weight(g: u64, j1: usize) -> Result<RepetitionWeight> {
    check_gap(g)?;
    if j1 == 0 {
        return Err(Error::InvalidArgument("repetition length must be at least 1".into()));
    }
    let q = radical_of_even(g)?;
    let mut pk = 2;
    while g.is_multiple_of(next_prime(pk)) {
        pk = next_prime(pk);
    }
    let feasible = (j1 as u64) < next_prime(pk) - 1;
    let w_infinity = feasible.then(|| {
        BigRational::new(
            BigInt::from(phi_i(1, &q)),
            BigInt::from(phi_i(j1 as u64 + 1, &q)),
        )
    });
    Ok(RepetitionWeight {
        g,
        j1,
        pk,
        feasible,
        w_infinity,
    })
}

/// The divisibility form of feasibility: `g` is a multiple of every prime up
/// to `j1 + 1`.
pub fn divisible_by_small_primes(g: u64, j1: usize) -> bool {
    primes_in(2, (j1 as u64 + 1).max(2))
        .unwrap_or_default()
        .into_iter()
        .all(|p| g.is_multiple_of(p))
}

/// Summed census ratios on a primorial cycle against [`partial_ratio`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crosscheck {
    pub g: u64,
    pub p: u64,
    pub census_ratio: BigRational,
    pub partial_ratio: BigRational,
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        self.census_ratio == self.partial_ratio
    }
}

pub fn census_crosscheck(g: u64, cycle: &GapCycle) -> Result<Crosscheck> {
    let m = cycle.modulus();
    if !m.is_primorial() {
        return Err(Error::InvalidArgument(format!(
            "cross-check needs a primorial cycle, got N = {m}"
        )));
    }
    let p = m.largest_factor().unwrap_or(2);
    let census = driving_terms_for_gap(cycle, g)?;
    let census_ratio = BigRational::new(
        BigInt::from(census.total()),
        BigInt::from(census.reference()),
    );
    Ok(Crosscheck {
        g,
        p,
        census_ratio,
        partial_ratio: partial_ratio(g, p)?,
    })
}

/// CSV rows `g,qbar,w_partial,w_infinity,feasible` for the given gaps; the
/// partial column is taken at `at_prime` (or equals `w_infinity` if absent).
pub fn write_asymptotics_csv<W: Write>(
    w: W,
    gaps: &[u64],
    at_prime: Option<u64>,
    metadata: &[String],
) -> Result<()> {
    let mut out = csv_writer(w, metadata)?;
    out.write_record(["g", "qbar", "w_partial", "w_infinity", "feasible"])?;
    for &g in gaps {
        let a = GapAsymptotics::new(g)?;
        let partial = at_prime.map(|p| a.partial(p)).unwrap_or_else(|| a.w_infinity.clone());
        out.write_record([
            g.to_string(),
            a.qbar.to_string(),
            decimal(&partial, 4),
            ratio(&a.w_infinity),
            "true".to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
