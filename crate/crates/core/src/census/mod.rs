//! Exact cyclic counts of gaps, constellations and their driving terms.
//!
//! A driving term for a constellation `s = (s_1, ..., s_j1)` is a run of
//! consecutive gaps whose running sums pass exactly through the boundaries
//! `s_1, s_1 + s_2, ..., |s|`. Windows are taken cyclically and may be
//! longer than the cycle itself.

mod constellation;
mod table;

pub use constellation::Constellation;
pub use table::{census_table, CensusRow, CensusTable};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cycle::GapCycle;
use crate::error::{Error, Result};
use crate::primal::{phi_i, SquarefreeModulus};

/// Start positions per parallel work unit.
const CHUNK: usize = 1 << 15;

/// Counts of driving terms by length for one target on one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub target: Constellation,
    pub modulus: SquarefreeModulus,
    /// `counts[k]` is the number of driving terms of length `j1 + k`.
    counts: Vec<u64>,
}

impl Census {
    pub fn j1(&self) -> usize {
        self.target.len()
    }

    /// Longest length with a nonzero count (or `j1` when nothing was found).
    pub fn max_len(&self) -> usize {
        self.j1() + self.counts.len() - 1
    }

    pub fn count(&self, j: usize) -> u64 {
        j.checked_sub(self.j1())
            .and_then(|k| self.counts.get(k).copied())
            .unwrap_or(0)
    }

    /// Counts for lengths `j1..=J`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// The normalizing population phi_{j1+1}(N); for single gaps this is the
    /// number of gaps of size 2 in G(N) when N is a primorial.
    pub fn reference(&self) -> u128 {
        phi_i(self.j1() as u64 + 1, &self.modulus)
    }

    /// Counts divided by [`Census::reference`].
    pub fn normalized(&self) -> Vec<BigRational> {
        let d = BigInt::from(self.reference());
        self.counts
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), d.clone()))
            .collect()
    }

    fn from_raw(target: Constellation, modulus: SquarefreeModulus, mut raw: Vec<u64>) -> Self {
        let j1 = target.len();
        let last = raw.iter().rposition(|&c| c != 0).unwrap_or(0).max(j1);
        raw.truncate(last + 1);
        raw.resize(last + 1, 0);
        Census {
            target,
            modulus,
            counts: raw.split_off(j1),
        }
    }
}

/// Number of gaps equal to `g` over one pass of the cycle.
pub fn count_gap(cycle: &GapCycle, g: u64) -> u64 {
    cycle.gaps().iter().filter(|&&x| x as u64 == g).count() as u64
}

/// Number of cyclic start positions at which the next `j1` gaps equal `s`.
pub fn count_constellation(cycle: &GapCycle, s: &Constellation) -> u64 {
    let gaps = cycle.gaps();
    let n = gaps.len();
    let pattern = s.gaps();
    (0..n)
        .filter(|&i| {
            pattern
                .iter()
                .enumerate()
                .all(|(k, &x)| gaps[(i + k) % n] as u64 == x)
        })
        .count() as u64
}

/// Driving terms of every length for the single gap `g`.
pub fn driving_terms_for_gap(cycle: &GapCycle, g: u64) -> Result<Census> {
    let s = Constellation::gap(g)?;
    Ok(driving_terms_for_constellation(cycle, &s))
}

/// Driving terms of every length for `s`, scanning chunks of start
/// positions in parallel.
pub fn driving_terms_for_constellation(cycle: &GapCycle, s: &Constellation) -> Census {
    let n = cycle.len();
    let raw = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| scan(cycle.gaps(), s, c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .reduce(Vec::new, add_counts);
    Census::from_raw(s.clone(), cycle.modulus().clone(), raw)
}

/// Single-threaded reference for [`driving_terms_for_constellation`].
pub fn driving_terms_sequential(cycle: &GapCycle, s: &Constellation) -> Census {
    let raw = scan(cycle.gaps(), s, 0, cycle.len());
    Census::from_raw(s.clone(), cycle.modulus().clone(), raw)
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Two-pointer scan over start positions `[from, to)`. Returns raw counts
/// indexed by window length.
fn scan(gaps: &[u16], s: &Constellation, from: usize, to: usize) -> Vec<u64> {
    let n = gaps.len();
    let mut counts = Vec::new();
    if from >= to || n == 0 {
        return counts;
    }
    let target = s.sum();
    let bounds = s.boundaries();
    let at = |k: usize| gaps[k % n] as u64;
    // window is [i, end) with running sum `sum`
    let mut end = from;
    let mut sum = 0u64;
    for i in from..to {
        while sum < target {
            sum += at(end);
            end += 1;
        }
        if sum == target && hits_boundaries(i, end, &bounds, at) {
            let len = end - i;
            if counts.len() <= len {
                counts.resize(len + 1, 0);
            }
            counts[len] += 1;
        }
        sum -= at(i);
    }
    counts
}

fn hits_boundaries(start: usize, end: usize, bounds: &[u64], at: impl Fn(usize) -> u64) -> bool {
    if bounds.len() == 1 {
        return true;
    }
    let mut acc = 0u64;
    let mut b = 0;
    for k in start..end {
        acc += at(k);
        if acc == bounds[b] {
            b += 1;
        } else if acc > bounds[b] {
            return false;
        }
    }
    b == bounds.len()
}

/// Validate that `g` is a usable even gap.
pub(crate) fn check_gap(g: u64) -> Result<()> {
    if g < 2 || !g.is_multiple_of(2) {
        return Err(Error::InvalidGap(g));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::build_primorial_cycle;

    fn cons(text: &str) -> Constellation {
        text.parse().unwrap()
    }

    #[test]
    fn gap_populations() {
        assert_eq!(count_gap(&build_primorial_cycle(5).unwrap(), 2), 3);
        assert_eq!(count_gap(&build_primorial_cycle(7).unwrap(), 6), 14);
        assert_eq!(count_gap(&build_primorial_cycle(11).unwrap(), 2), 135);
    }

    #[test]
    fn gap_eight_in_g30_wraps() {
        let g = build_primorial_cycle(5).unwrap();
        let c = driving_terms_for_gap(&g, 8).unwrap();
        assert_eq!(c.counts(), &[0, 2, 1]);
        assert_eq!(c.max_len(), 3);
        assert_eq!(driving_terms_for_gap(&g, 10).unwrap().total(), 4);
    }

    #[test]
    fn windows_longer_than_the_cycle() {
        let g = build_primorial_cycle(2).unwrap();
        let c = driving_terms_for_gap(&g, 6).unwrap();
        assert_eq!(c.counts(), &[0, 0, 1]);
        let g6 = build_primorial_cycle(3).unwrap();
        assert_eq!(driving_terms_for_gap(&g6, 6).unwrap().counts(), &[0, 2]);
    }

    #[test]
    fn constellations_in_small_cycles() {
        let g5 = build_primorial_cycle(5).unwrap();
        assert_eq!(count_constellation(&g5, &cons("4,2,4")), 2);
        assert_eq!(count_constellation(&g5, &cons("2,4")), 2);
        assert_eq!(count_constellation(&g5, &cons("6,6")), 0);
        let g7 = build_primorial_cycle(7).unwrap();
        let c = driving_terms_for_constellation(&g7, &cons("2,10,2"));
        assert_eq!(c.counts(), &[2, 6]);
        let g11 = build_primorial_cycle(11).unwrap();
        let c = driving_terms_for_constellation(&g11, &cons("12,12"));
        assert_eq!(c.counts(), &[0, 2, 20, 48, 58]);
    }

    #[test]
    fn empty_census_is_tight() {
        let g5 = build_primorial_cycle(5).unwrap();
        let c = driving_terms_for_constellation(&g5, &cons("2,2"));
        assert_eq!(c.max_len(), 2);
        assert_eq!(c.counts(), &[0]);
        let c = driving_terms_for_constellation(&g5, &cons("6,6"));
        assert_eq!(c.counts(), &[0, 2, 2]);
    }

    #[test]
    fn parallel_equals_sequential() {
        let g = build_primorial_cycle(13).unwrap();
        for text in ["2", "30", "2,10,2", "6,6", "4,2,4,2,4"] {
            let s = cons(text);
            assert_eq!(
                driving_terms_for_constellation(&g, &s),
                driving_terms_sequential(&g, &s)
            );
        }
    }

    #[test]
    fn rejects_odd_gaps() {
        let g = build_primorial_cycle(5).unwrap();
        assert!(matches!(driving_terms_for_gap(&g, 7), Err(Error::InvalidGap(7))));
    }
}
