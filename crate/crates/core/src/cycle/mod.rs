//! Cycles of gaps G(N) among the generators of Z mod N.
//!
//! A cycle starts at generator 1; gap `j` runs from generator `gamma_{j-1}`
//! to `gamma_j = 1 + g_1 + ... + g_j`, and the final gap lands on `N + 1`,
//! which is 1 again modulo N.

mod build;
mod cache;
mod verify;

pub use build::{
    build_cycle, build_primorial_cycle, extend_cycle, extend_into, oracle_cycle,
    stream_primorial_cycle, BuildOptions, Extension, DEFAULT_IN_MEMORY_GAPS, ORACLE_LIMIT,
};
pub use cache::{read_cache, read_cache_from, write_cache, write_cache_to, CacheHeader, CacheReader};
pub use verify::{verify_cycle, Check, CheckKind, VerifyReport};

use crate::primal::SquarefreeModulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCycle {
    modulus: SquarefreeModulus,
    gaps: Vec<u16>,
}

impl GapCycle {
    /// Wrap an existing gap list. No invariants are checked here; see
    /// [`verify_cycle`].
    pub fn from_parts(modulus: SquarefreeModulus, gaps: Vec<u16>) -> Self {
        GapCycle { modulus, gaps }
    }

    /// G(1): the lone generator 1, one gap of size 1.
    pub fn trivial() -> Self {
        GapCycle {
            modulus: SquarefreeModulus::one(),
            gaps: vec![1],
        }
    }

    pub fn modulus(&self) -> &SquarefreeModulus {
        &self.modulus
    }

    pub fn gaps(&self) -> &[u16] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.gaps.iter().map(|&g| g as u128).sum()
    }

    /// The generators gamma_1, ..., gamma_phi; the last one is N + 1.
    pub fn generators(&self) -> impl Iterator<Item = u128> + '_ {
        self.gaps.iter().scan(1u128, |acc, &g| {
            *acc += g as u128;
            Some(*acc)
        })
    }

    /// First gap plus one: the smallest prime not dividing N.
    pub fn next_prime(&self) -> u64 {
        self.gaps[0] as u64 + 1
    }

    /// Compact rendering: single-digit gaps run together, commas set off
    /// gaps of two or more digits (`10,2424...42,10,2`).
    pub fn compact(&self) -> String {
        compact_gaps(&self.gaps)
    }

    pub fn into_gaps(self) -> Vec<u16> {
        self.gaps
    }
}

/// See [`GapCycle::compact`].
pub fn compact_gaps(gaps: &[u16]) -> String {
    let mut out = String::with_capacity(gaps.len() * 2);
    let mut prev_wide = false;
    for (i, &g) in gaps.iter().enumerate() {
        let wide = g >= 10;
        if i > 0 && (wide || prev_wide) {
            out.push(',');
        }
        out.push_str(&g.to_string());
        prev_wide = wide;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_form() {
        assert_eq!(compact_gaps(&[6, 4, 2, 4, 2, 4, 6, 2]), "64242462");
        assert_eq!(compact_gaps(&[10, 2, 4, 2, 10, 2]), "10,242,10,2");
        assert_eq!(compact_gaps(&[2, 14, 12, 4]), "2,14,12,4");
        assert_eq!(compact_gaps(&[]), "");
    }

    #[test]
    fn generators_of_g30() {
        let g = GapCycle::from_parts(
            SquarefreeModulus::from_value(30).unwrap(),
            vec![6, 4, 2, 4, 2, 4, 6, 2],
        );
        let gens: Vec<u128> = g.generators().collect();
        assert_eq!(gens, vec![7, 11, 13, 17, 19, 23, 29, 31]);
        assert_eq!(g.next_prime(), 7);
        assert_eq!(g.sum(), 30);
    }
}
