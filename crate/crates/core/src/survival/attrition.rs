//! Attrition of a fixed cycle G(p_k#): keep sieving by the primes q with
//! q^2 < p_k#, never copying the cycle, until only 1 and the primes in
//! (p_k, p_k#] remain as candidates.
//!
//! Candidates live in a circular doubly linked list (candidate 1 doubles as
//! p_k# + 1). For each q the composites `q * m` with `m >= q` are located by
//! binary search over the original candidate values and unlinked, and the
//! gap histogram is patched around each removal.

use std::collections::BTreeMap;
use std::io::Write;

use crate::cycle::{GapCycle, DEFAULT_IN_MEMORY_GAPS};
use crate::error::{Error, Result};
use crate::primal::primes_in;
use crate::report::csv_writer;

/// Gap value to population.
pub type Histogram = BTreeMap<u64, u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttritionStep {
    pub q: u64,
    pub closures: u64,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttritionTrace {
    /// Largest prime factor of the starting modulus.
    pub pk: u64,
    pub modulus: u128,
    pub initial: Histogram,
    pub steps: Vec<AttritionStep>,
    /// Surviving candidates in cycle order, starting with 1.
    pub survivors: Vec<u64>,
    /// Gaps between consecutive survivors; the last one closes back to 1.
    pub gaps: Vec<u64>,
}

impl AttritionTrace {
    /// The largest sieving prime P (P^2 < N).
    pub fn last_prime(&self) -> Option<u64> {
        self.steps.last().map(|s| s.q)
    }

    pub fn final_histogram(&self) -> &Histogram {
        self.steps.last().map(|s| &s.histogram).unwrap_or(&self.initial)
    }

    /// First sieving prime after which gap `g` is present, if it was not
    /// there to begin with.
    pub fn first_created(&self, g: u64) -> Option<u64> {
        if self.initial.get(&g).copied().unwrap_or(0) > 0 {
            return None;
        }
        self.steps
            .iter()
            .find(|s| s.histogram.get(&g).copied().unwrap_or(0) > 0)
            .map(|s| s.q)
    }

    pub fn max_gap(&self) -> u64 {
        self.gaps.iter().copied().max().unwrap_or(0)
    }
}

pub fn attrition(cycle: &GapCycle) -> Result<AttritionTrace> {
    let m = cycle.modulus();
    if !m.is_primorial() {
        return Err(Error::InvalidArgument(format!(
            "attrition starts from a primorial cycle, got N = {m}"
        )));
    }
    let len = cycle.len();
    if len as u128 > DEFAULT_IN_MEMORY_GAPS || len >= u32::MAX as usize {
        return Err(Error::CapacityExceeded {
            needed: len as u128,
            limit: DEFAULT_IN_MEMORY_GAPS,
        });
    }
    let n = u64::try_from(m.value()).map_err(|_| Error::CapacityExceeded {
        needed: m.value(),
        limit: u64::MAX as u128,
    })?;
    let pk = m.largest_factor().unwrap_or(2);

    // values[0] = 1; values[i] = gamma_i for i < len (gamma_len = N + 1 is 1 again)
    let mut values = Vec::with_capacity(len);
    values.push(1u64);
    values.extend(cycle.generators().take(len - 1).map(|g| g as u64));
    let mut next: Vec<u32> = (1..=len as u32).collect();
    next[len - 1] = 0;
    let mut prev: Vec<u32> = (0..len as u32).map(|i| if i == 0 { len as u32 - 1 } else { i - 1 }).collect();
    let mut alive = vec![true; len];

    let dist = |a: usize, b: usize, values: &[u64]| {
        if b == 0 {
            n + 1 - values[a]
        } else {
            values[b] - values[a]
        }
    };

    let mut hist = Histogram::new();
    for &g in cycle.gaps() {
        *hist.entry(g as u64).or_default() += 1;
    }
    let initial = hist.clone();

    let root = n.isqrt();
    let sieving: Vec<u64> = if root > pk {
        primes_in(pk + 1, root)?
            .into_iter()
            .filter(|&q| q * q < n)
            .collect()
    } else {
        Vec::new()
    };

    let mut steps = Vec::with_capacity(sieving.len());
    for &q in &sieving {
        let mut closures = 0;
        let start = values.partition_point(|&v| v < q);
        for j in start..len {
            let Some(target) = values[j].checked_mul(q).filter(|&t| t <= n) else {
                break;
            };
            let Ok(x) = values.binary_search(&target) else {
                continue;
            };
            if !alive[x] {
                continue;
            }
            let (a, b) = (prev[x] as usize, next[x] as usize);
            for d in [dist(a, x, &values), dist(x, b, &values)] {
                let e = hist.get_mut(&d).expect("gap present in histogram");
                *e -= 1;
                if *e == 0 {
                    hist.remove(&d);
                }
            }
            *hist.entry(dist(a, b, &values)).or_default() += 1;
            next[a] = b as u32;
            prev[b] = a as u32;
            alive[x] = false;
            closures += 1;
        }
        steps.push(AttritionStep {
            q,
            closures,
            histogram: hist.clone(),
        });
    }

    let mut survivors = Vec::new();
    let mut gaps = Vec::new();
    let mut i = 0usize;
    loop {
        survivors.push(values[i]);
        let j = next[i] as usize;
        gaps.push(dist(i, j, &values));
        if j == 0 {
            break;
        }
        i = j;
    }
    Ok(AttritionTrace {
        pk,
        modulus: m.value(),
        initial,
        steps,
        survivors,
        gaps,
    })
}

/// Long-format CSV `prime,gap,count,normalized`: one block per sieving
/// prime, preceded by the starting histogram labelled with p_k. The
/// normalized column divides by that row's population of the gap 2.
pub fn attrition_histograms<W: Write>(
    trace: &AttritionTrace,
    w: W,
    metadata: &[String],
) -> Result<()> {
    let mut out = csv_writer(w, metadata)?;
    out.write_record(["prime", "gap", "count", "normalized"])?;
    let blocks = std::iter::once((trace.pk, &trace.initial))
        .chain(trace.steps.iter().map(|s| (s.q, &s.histogram)));
    for (q, h) in blocks {
        let twos = h.get(&2).copied().unwrap_or(0);
        for (&g, &c) in h {
            let norm = if twos > 0 {
                format!("{:.6}", c as f64 / twos as f64)
            } else {
                String::new()
            };
            out.write_record([q.to_string(), g.to_string(), c.to_string(), norm])?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::build_primorial_cycle;
    use crate::primal::is_prime;

    #[test]
    fn g30_keeps_everything() {
        // 5^2 < 30 but 7^2 > 30: no sieving primes above 5
        let t = attrition(&build_primorial_cycle(5).unwrap()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.gaps, vec![6, 4, 2, 4, 2, 4, 6, 2]);
        assert_eq!(t.survivors, vec![1, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn g210_survivors_are_primes() {
        let t = attrition(&build_primorial_cycle(7).unwrap()).unwrap();
        assert_eq!(t.steps.iter().map(|s| s.q).collect::<Vec<_>>(), vec![11, 13]);
        assert_eq!(t.survivors[0], 1);
        assert!(t.survivors[1..].iter().all(|&v| is_prime(v)));
        assert_eq!(t.survivors.len(), 43);
        assert_eq!(t.gaps.iter().sum::<u64>(), 210);
        // 121, 143, 187, 209 then 169
        assert_eq!(t.steps[0].closures, 4);
        assert_eq!(t.steps[1].closures, 1);
        for s in &t.steps {
            let total: u64 = s.histogram.iter().map(|(g, c)| g * c).sum();
            assert_eq!(total, 210);
        }
    }

    #[test]
    fn histogram_csv_starts_at_pk() {
        let t = attrition(&build_primorial_cycle(7).unwrap()).unwrap();
        let mut buf = Vec::new();
        attrition_histograms(&t, &mut buf, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("prime,gap,count,normalized"));
        assert_eq!(lines.next(), Some("7,2,15,1.000000"));
    }

    #[test]
    fn rejects_non_primorials() {
        let m = crate::primal::SquarefreeModulus::from_value(15).unwrap();
        let g = crate::cycle::build_cycle(&m).unwrap();
        assert!(attrition(&g).is_err());
    }
}
