use std::fmt;

use super::{compact_gaps, GapCycle};
use crate::primal::{next_prime, prev_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Number of gaps equals phi(N).
    Count,
    /// Gaps sum to N.
    Sum,
    /// Final gap is 2 (N > 2).
    LastGap,
    /// g_j = g_{phi - j} for 1 <= j < phi.
    Palindrome,
    /// Every generator before the last is coprime to N and the last is N + 1.
    Generators,
    /// Primorials from 5# on: at least two gaps of size twice the second
    /// largest factor.
    TwicePrevPrime,
    /// Primorials from 5# on: the run 2^j..8,4,2,4,2,4,8..2^j centred on the
    /// gap from N/2 - 2 to N/2 + 2, with j minimal such that 2^(j+1)
    /// exceeds the next prime.
    CentralRun,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Count => "count",
            CheckKind::Sum => "sum",
            CheckKind::LastGap => "last-gap",
            CheckKind::Palindrome => "palindrome",
            CheckKind::Generators => "generators",
            CheckKind::TwicePrevPrime => "twice-prev-prime",
            CheckKind::CentralRun => "central-run",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    fn push(&mut self, kind: CheckKind, passed: bool, detail: String) {
        self.checks.push(Check {
            kind,
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {:<17} {}", c.kind.to_string(), c.detail)?;
        }
        Ok(())
    }
}

/// Run the structural checks on a cycle. Every failed check is reported
/// separately; nothing short-circuits.
pub fn verify_cycle(cycle: &GapCycle) -> VerifyReport {
    let mut report = VerifyReport::default();
    let n = cycle.modulus().value();
    let phi = cycle.modulus().totient();
    let gaps = cycle.gaps();
    let len = gaps.len();

    report.push(
        CheckKind::Count,
        len as u128 == phi,
        format!("{len} gaps, phi(N) = {phi}"),
    );
    let sum = cycle.sum();
    report.push(CheckKind::Sum, sum == n, format!("sum {sum}, N = {n}"));

    if n > 2 {
        let last = gaps.last().copied();
        report.push(
            CheckKind::LastGap,
            last == Some(2),
            match last {
                Some(g) => format!("last gap {g}"),
                None => "no gaps".to_string(),
            },
        );
    }

    let mismatch = (1..len).find(|&j| gaps[j - 1] != gaps[len - j - 1]);
    report.push(
        CheckKind::Palindrome,
        mismatch.is_none(),
        match mismatch {
            None => "symmetric".into(),
            Some(j) => format!("g_{j} = {} but g_{} = {}", gaps[j - 1], len - j, gaps[len - j - 1]),
        },
    );

    let factors = cycle.modulus().factors();
    let mut bad = None;
    let mut last_gen = 1u128;
    for (j, gamma) in cycle.generators().enumerate() {
        last_gen = gamma;
        if j + 1 < len && factors.iter().any(|&q| gamma % q as u128 == 0) {
            bad = Some(gamma);
            break;
        }
    }
    let ends_right = bad.is_some() || last_gen == n + 1;
    report.push(
        CheckKind::Generators,
        bad.is_none() && ends_right,
        match bad {
            Some(g) => format!("generator {g} shares a factor with N"),
            None if !ends_right => format!("last generator {last_gen}, expected {}", n + 1),
            None => "all coprime".into(),
        },
    );

    if let Some(p) = cycle.modulus().largest_factor() {
        if p >= 5 && cycle.modulus().is_primorial() {
            primorial_checks(cycle, p, &mut report);
        }
    }
    report
}

fn primorial_checks(cycle: &GapCycle, p: u64, report: &mut VerifyReport) {
    let gaps = cycle.gaps();
    let prev = prev_prime(p).unwrap_or(2);
    let target = 2 * prev;
    let seen = gaps.iter().filter(|&&g| g as u64 == target).count();
    report.push(
        CheckKind::TwicePrevPrime,
        seen >= 2,
        format!("{seen} gaps of size {target}"),
    );

    let next = next_prime(p);
    let mut j = 1u32;
    while (1u64 << (j + 1)) <= next {
        j += 1;
    }
    let mut expected: Vec<u16> = (2..=j).rev().map(|i| 1u16 << i).collect();
    expected.extend_from_slice(&[2, 4, 2]);
    expected.extend((2..=j).map(|i| 1u16 << i));

    let half = cycle.modulus().value() / 2;
    let centre = cycle
        .generators()
        .position(|gamma| gamma == half + 2)
        .filter(|&i| gaps[i] == 4);
    let reach = expected.len() / 2 ;
    let found = centre.and_then(|c| {
        (c >= reach && c + reach < gaps.len()).then(|| &gaps[c - reach..=c + reach])
    });
    let passed = found == Some(&expected[..]);
    let detail = match found {
        Some(run) if passed => format!("{} around N/2", compact_gaps(run)),
        Some(run) => format!(
            "expected {} around N/2, found {}",
            compact_gaps(&expected),
            compact_gaps(run)
        ),
        None => format!("no run {} around N/2", compact_gaps(&expected)),
    };
    report.push(CheckKind::CentralRun, passed, detail);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::build_primorial_cycle;
    use crate::primal::SquarefreeModulus;

    #[test]
    fn primorials_pass() {
        for p in [2, 3, 5, 7, 11, 13] {
            let r = verify_cycle(&build_primorial_cycle(p).unwrap());
            assert!(r.all_passed(), "p = {p}\n{r}");
        }
        let r = verify_cycle(&build_primorial_cycle(5).unwrap());
        assert!(r.get(CheckKind::CentralRun).unwrap().detail.starts_with("42424 "));
        let r = verify_cycle(&build_primorial_cycle(7).unwrap());
        assert!(r.get(CheckKind::CentralRun).unwrap().detail.starts_with("8424248 "));
    }

    #[test]
    fn perturbation_is_caught() {
        let g = build_primorial_cycle(5).unwrap();
        let mut gaps = g.gaps().to_vec();
        gaps[1] += 2;
        let bad = GapCycle::from_parts(g.modulus().clone(), gaps);
        let r = verify_cycle(&bad);
        assert!(!r.get(CheckKind::Sum).unwrap().passed);
        assert!(!r.get(CheckKind::Palindrome).unwrap().passed);
        assert!(r.get(CheckKind::Count).unwrap().passed);
    }

    #[test]
    fn non_primorial_skips_extra_checks() {
        let m = SquarefreeModulus::from_value(15).unwrap();
        let g = crate::cycle::build_cycle(&m).unwrap();
        let r = verify_cycle(&g);
        assert!(r.all_passed(), "{r}");
        assert!(r.get(CheckKind::CentralRun).is_none());
    }
}
