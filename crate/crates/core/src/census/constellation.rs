use std::fmt;
use std::str::FromStr;

use crate::cycle::compact_gaps;
use crate::error::{Error, Result};

/// A nonempty run of positive even gaps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constellation {
    gaps: Vec<u64>,
}

impl Constellation {
    pub fn new(gaps: Vec<u64>) -> Result<Self> {
        if gaps.is_empty() || gaps.iter().any(|&g| g == 0 || g % 2 != 0) {
            let text = gaps.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            return Err(Error::MalformedConstellation(text));
        }
        Ok(Constellation { gaps })
    }

    /// The length-one constellation `[g]`.
    pub fn gap(g: u64) -> Result<Self> {
        super::check_gap(g)?;
        Ok(Constellation { gaps: vec![g] })
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> u64 {
        self.gaps.iter().sum()
    }

    /// Running sums `s_1, s_1 + s_2, ..., |s|`.
    pub fn boundaries(&self) -> Vec<u64> {
        self.gaps
            .iter()
            .scan(0, |acc, &g| {
                *acc += g;
                Some(*acc)
            })
            .collect()
    }

    /// Sums of every contiguous sub-run `s_i + ... + s_j`.
    pub fn interval_sums(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 0..self.gaps.len() {
            let mut acc = 0;
            for &g in &self.gaps[i..] {
                acc += g;
                out.push(acc);
            }
        }
        out
    }

    pub fn reversed(&self) -> Self {
        let mut gaps = self.gaps.clone();
        gaps.reverse();
        Constellation { gaps }
    }

    /// Compact digit form, e.g. `2,10,2` or `424`.
    pub fn compact(&self) -> String {
        let narrow: Option<Vec<u16>> = self.gaps.iter().map(|&g| u16::try_from(g).ok()).collect();
        match narrow {
            Some(v) => compact_gaps(&v),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Constellation {
    type Err = Error;

    /// Parse a comma list such as `2,10,2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedConstellation(s.to_string());
        let gaps = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Constellation::new(gaps).map_err(|_| bad())
    }
}
