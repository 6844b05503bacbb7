//! How gaps of a cycle survive further sieving: uniform-density estimates
//! against real prime gaps, and exact attrition inside one fixed cycle.

mod attrition;

pub use attrition::{attrition, attrition_histograms, AttritionStep, AttritionTrace, Histogram};

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::census::{count_constellation, Constellation};
use crate::cycle::{extend_cycle, GapCycle};
use crate::error::{Error, Result};
use crate::primal::{next_prime, primes_in, primorial, SieveConfig};
use crate::report::{csv_writer, to_f64};

/// Default ceiling on the upper end of a ground-truth interval.
pub const DEFAULT_SIEVE_BUDGET: u64 = 10_000_000_000;

/// `(p^2 - p) / N * n` where `p` is the smallest prime not dividing N and
/// `n` the number of occurrences of `target` in G(N).
pub fn naive_estimate(cycle: &GapCycle, target: &Constellation) -> BigRational {
    let p = cycle.next_prime();
    let n = count_constellation(cycle, target);
    BigRational::new(
        BigInt::from(p * p - p) * BigInt::from(n),
        BigInt::from(cycle.modulus().value()),
    )
}

/// Occurrences of `pattern` as consecutive differences of primes, with every
/// prime of the run inside `[a, b]`. The pattern must be a list of positive
/// even gaps, or the lone gap `[1]` (which only the pair 2, 3 realizes).
pub fn actual_gap_count(a: u64, b: u64, pattern: &[u64], budget: u64) -> Result<u64> {
    let odd_ok = pattern == [1];
    if !odd_ok {
        Constellation::new(pattern.to_vec())?;
    }
    if b > budget {
        return Err(Error::BudgetExceeded { bound: b, budget });
    }
    if a > b {
        return Err(Error::InvertedRange { lo: a, hi: b });
    }
    let k = pattern.len();
    let mut window: Vec<u64> = Vec::with_capacity(k + 1);
    let mut count = 0;
    for p in SieveConfig::default().stream(a.max(2), b)? {
        if window.len() == k + 1 {
            window.remove(0);
        }
        window.push(p);
        if window.len() == k + 1 && window.windows(2).zip(pattern).all(|(w, &g)| w[1] - w[0] == g) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveEstimateRow {
    pub pk: u64,
    pub p_next: u64,
    pub target: Constellation,
    pub population: u64,
    pub estimate: BigRational,
    pub actual: u64,
}

impl NaiveEstimateRow {
    pub fn interval(&self) -> (u64, u64) {
        (self.p_next, self.p_next * self.p_next)
    }

    /// `(estimate - actual) / actual`, absent when nothing was observed.
    pub fn rel_error(&self) -> Option<f64> {
        (self.actual > 0).then(|| {
            let e = &self.estimate - BigRational::from_integer(self.actual.into());
            to_f64(&(e / BigRational::from_integer(self.actual.into())))
        })
    }
}

/// Naive estimates against actual counts for every prime `p_k` in
/// `[pmin, pmax]` and every target.
pub fn error_report(
    pmin: u64,
    pmax: u64,
    targets: &[Constellation],
    budget: u64,
) -> Result<Vec<NaiveEstimateRow>> {
    if pmin > pmax {
        return Err(Error::InvertedRange { lo: pmin, hi: pmax });
    }
    let stages = primes_in(pmin.max(2), pmax)?;
    let mut rows = Vec::new();
    if targets.is_empty() {
        return Ok(rows);
    }
    let mut cycle: Option<GapCycle> = None;
    for pk in stages {
        let next = match cycle.take() {
            Some(c) => extend_cycle(&c, pk)?.cycle,
            None => crate::cycle::build_cycle(&primorial(pk)?)?,
        };
        let p_next = next_prime(pk);
        for t in targets {
            rows.push(NaiveEstimateRow {
                pk,
                p_next,
                target: t.clone(),
                population: count_constellation(&next, t),
                estimate: naive_estimate(&next, t),
                actual: actual_gap_count(p_next, p_next * p_next, t.gaps(), budget)?,
            });
        }
        cycle = Some(next);
    }
    Ok(rows)
}

/// CSV: `p_k,p_next,interval_lo,interval_hi,target,population,estimate,actual,rel_error`.
pub fn write_error_report<W: Write>(
    w: W,
    rows: &[NaiveEstimateRow],
    metadata: &[String],
) -> Result<()> {
    let mut out = csv_writer(w, metadata)?;
    out.write_record([
        "p_k",
        "p_next",
        "interval_lo",
        "interval_hi",
        "target",
        "population",
        "estimate",
        "actual",
        "rel_error",
    ])?;
    for r in rows {
        let (lo, hi) = r.interval();
        out.write_record([
            r.pk.to_string(),
            r.p_next.to_string(),
            lo.to_string(),
            hi.to_string(),
            r.target.to_string(),
            r.population.to_string(),
            format!("{:.6}", to_f64(&r.estimate)),
            r.actual.to_string(),
            r.rel_error().map(|e| format!("{e:.6}")).unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
