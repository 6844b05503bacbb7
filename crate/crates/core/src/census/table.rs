use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{driving_terms_for_gap, Census};
use crate::cycle::GapCycle;
use crate::error::Result;
use crate::report::{csv_writer, ratio};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub census: Census,
    /// Counts for lengths `1..=max_len` (zero padded).
    pub counts: Vec<u64>,
    /// Nonzero counts beyond `max_len` were dropped.
    pub truncated: bool,
}

impl CensusRow {
    pub fn gap(&self) -> u64 {
        self.census.target.sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub max_len: usize,
    pub rows: Vec<CensusRow>,
}

/// Driving-term counts of lengths `1..=max_len` for each gap in `gaps`.
pub fn census_table(cycle: &GapCycle, gaps: &[u64], max_len: usize) -> Result<CensusTable> {
    let rows = gaps
        .iter()
        .map(|&g| {
            let census = driving_terms_for_gap(cycle, g)?;
            let counts: Vec<u64> = (1..=max_len).map(|j| census.count(j)).collect();
            let truncated = (max_len + 1..=census.max_len()).any(|j| census.count(j) != 0);
            Ok(CensusRow {
                census,
                counts,
                truncated,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CensusTable { max_len, rows })
}

impl CensusTable {
    /// Long-format CSV: `target,j,count,normalized_ratio`.
    pub fn write_csv<W: Write>(&self, w: W, metadata: &[String]) -> Result<()> {
        let mut out = csv_writer(w, metadata)?;
        out.write_record(["target", "j", "count", "normalized_ratio"])?;
        for row in &self.rows {
            let reference = BigInt::from(row.census.reference());
            for (k, &c) in row.counts.iter().enumerate() {
                let r = BigRational::new(BigInt::from(c), reference.clone());
                out.write_record([
                    row.gap().to_string(),
                    (k + 1).to_string(),
                    c.to_string(),
                    ratio(&r),
                ])?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::build_primorial_cycle;

    #[test]
    fn truncation_flag() {
        let g = build_primorial_cycle(5).unwrap();
        let t = census_table(&g, &[8, 2], 2).unwrap();
        assert_eq!(t.rows[0].counts, vec![0, 2]);
        assert!(t.rows[0].truncated);
        assert_eq!(t.rows[1].counts, vec![3, 0]);
        assert!(!t.rows[1].truncated);
    }

    #[test]
    fn csv_rows() {
        let g = build_primorial_cycle(5).unwrap();
        let t = census_table(&g, &[6], 2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "target,j,count,normalized_ratio\n6,1,2,2/3\n6,2,4,4/3\n"
        );
    }
}
