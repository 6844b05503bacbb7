use std::fmt::Display;

use num_rational::BigRational;

use gapsieve::census::{census_table, driving_terms_for_constellation, Constellation};
use gapsieve::dynsys::{asymptotic_ratio, eigenvalue_products, validity, PopulationVector, Validity};
use gapsieve::report::ratio;
use gapsieve::survival::attrition;

use crate::args::{ReproduceArgs, Table};
use crate::source::primorial_cycle;
use crate::{CliError, CliResult};

/// Driving terms of gaps 2..=32 in G(13#) for lengths 1..=9, and the
/// asymptotic ratio.
const DRIVING_TERMS_13: [(u64, [u64; 9], (i64, i64)); 16] = [
    (2, [1485, 0, 0, 0, 0, 0, 0, 0, 0], (1, 1)),
    (4, [1485, 0, 0, 0, 0, 0, 0, 0, 0], (1, 1)),
    (6, [1690, 1280, 0, 0, 0, 0, 0, 0, 0], (2, 1)),
    (8, [394, 902, 189, 0, 0, 0, 0, 0, 0], (1, 1)),
    (10, [438, 1164, 378, 0, 0, 0, 0, 0, 0], (4, 3)),
    (12, [188, 1276, 1314, 192, 0, 0, 0, 0, 0], (2, 1)),
    (14, [58, 536, 900, 288, 0, 0, 0, 0, 0], (6, 5)),
    (16, [12, 252, 750, 436, 35, 0, 0, 0, 0], (1, 1)),
    (18, [8, 256, 1224, 1272, 210, 0, 0, 0, 0], (2, 1)),
    (20, [0, 24, 348, 960, 600, 48, 0, 0, 0], (4, 3)),
    (22, [2, 48, 312, 784, 504, 0, 0, 0, 0], (10, 9)),
    (24, [0, 20, 258, 928, 1260, 504, 0, 0, 0], (2, 1)),
    (26, [0, 2, 40, 322, 724, 448, 84, 0, 0], (12, 11)),
    (28, [0, 0, 36, 344, 794, 528, 80, 0, 0], (6, 5)),
    (30, [0, 0, 10, 194, 1066, 1784, 816, 90, 0], (8, 3)),
    (32, [0, 0, 0, 12, 200, 558, 523, 172, 20], (1, 1)),
];

const PRODUCTS_PK: u64 = 999_999_999_989;
const PRODUCTS: [f64; 8] = [
    0.10206751799779,
    0.01019996897567,
    0.00099592269918,
    0.00009477093531,
    0.00000876214163,
    0.00000078408120,
    0.00000006757562,
    0.00000000557284,
];
const PRODUCTS_TOL: f64 = 1e-11;

type ConstellationRow = (&'static str, u64, &'static [u64], (i64, i64), bool);

/// Constellation, p0, counts from length |s| on, weight, asymptotic only.
const CONSTELLATIONS: [ConstellationRow; 9] = [
    ("2,4,2", 5, &[1], (1, 1), false),
    ("4,2,4", 5, &[2], (2, 1), false),
    ("2,10,2", 7, &[2, 6], (8, 3), false),
    ("4,2,4,2,4", 7, &[1], (1, 1), false),
    ("2,10,2,10,2", 13, &[52, 44, 48], (144, 35), false),
    ("2,10,2,10,2,4,2,10,2,10,2", 13, &[2, 10, 12], (24, 1), true),
    ("6,6", 5, &[0, 2, 2], (2, 1), false),
    ("12,12", 11, &[0, 2, 20, 48, 58], (2, 1), false),
    ("6,6,6", 7, &[0, 4, 2], (2, 1), false),
];

const ATTRITION_13_GAPS: usize = 3245;
const ATTRITION_13_MAX: u64 = 52;
const ATTRITION_13_MAX_AT: u64 = 73;

/// Survivors of G(7#) once 11 and 13 are struck as well, in display form.
const G7_SURVIVORS: &str =
    "16, 24626424 6 62642 6 46 8 42424, 14, 462, 10, 26 6 4 6 62, 10, 242, 12,";

/// Compact display to gaps: commas set off multi-digit gaps, single even
/// digits run together, spaces are layout.
fn parse_display(text: &str) -> Vec<u64> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let token: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if token.is_empty() {
            continue;
        }
        if token.chars().any(|c| !matches!(c, '2' | '4' | '6' | '8')) {
            out.push(token.parse().expect("numeric display token"));
        } else {
            out.extend(token.chars().filter_map(|c| c.to_digit(10)).map(u64::from));
        }
    }
    out
}

#[derive(Default)]
struct Tally {
    name: &'static str,
    pass: usize,
    fail: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            ..Tally::default()
        }
    }

    fn cell<T: PartialEq + Display>(&mut self, label: impl Display, got: T, want: T) {
        if got == want {
            self.pass += 1;
            println!("PASS {} {label}: {got}", self.name);
        } else {
            self.fail += 1;
            println!("FAIL {} {label}: got {got}, expected {want}", self.name);
        }
    }

    fn finish(self) -> CliResult {
        let total = self.pass + self.fail;
        println!("{}: {}/{total} cells pass", self.name, self.pass);
        if self.fail > 0 {
            return Err(CliError::Mismatch(format!(
                "{}: {} of {total} cells differ",
                self.name, self.fail
            )));
        }
        Ok(())
    }
}

fn q((n, d): (i64, i64)) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn driving_terms() -> CliResult {
    let mut t = Tally::new("table2");
    let cycle = primorial_cycle(13)?;
    let gaps: Vec<u64> = DRIVING_TERMS_13.iter().map(|r| r.0).collect();
    let table = census_table(&cycle, &gaps, 9)?;
    for (row, (g, counts, w)) in table.rows.iter().zip(DRIVING_TERMS_13) {
        for (j, (&got, want)) in row.counts.iter().zip(counts).enumerate() {
            t.cell(format!("g={g} j={}", j + 1), got, want);
        }
        let v = PopulationVector::from_census(&row.census)?;
        t.cell(format!("g={g} w"), ratio(&asymptotic_ratio(&v)), ratio(&q(w)));
    }
    t.finish()
}

fn products(long: bool) -> CliResult {
    if !long {
        return Err(CliError::Usage(
            "table3 sieves every prime up to 10^12 and takes hours; pass --long to run it".into(),
        ));
    }
    let mut t = Tally::new("table3");
    let products = eigenvalue_products(13, PRODUCTS_PK, 9)?;
    for (k, (&got, &want)) in products.iter().zip(&PRODUCTS).enumerate() {
        let close = (got - want).abs() < PRODUCTS_TOL;
        let shown = if close { want } else { got };
        t.cell(format!("a_{}", k + 2), format!("{shown:.14}"), format!("{want:.14}"));
    }
    t.finish()
}

fn constellations() -> CliResult {
    let mut t = Tally::new("table5");
    for (text, p0, counts, w, asymptotic_only) in CONSTELLATIONS {
        let s: Constellation = text.parse()?;
        let census = driving_terms_for_constellation(&primorial_cycle(p0)?, &s);
        let label = format!("[{text}] from {p0}#");
        let got: Vec<String> = census.counts().iter().map(u64::to_string).collect();
        let want: Vec<String> = counts.iter().map(u64::to_string).collect();
        t.cell(format!("{label} counts"), got.join(","), want.join(","));
        let v = PopulationVector::from_census(&census)?;
        t.cell(format!("{label} w"), ratio(&asymptotic_ratio(&v)), ratio(&q(w)));
        let expected = if asymptotic_only { "asymptotic only" } else { "full" };
        let found = match validity(&s, p0) {
            Validity::Full => "full",
            Validity::AsymptoticOnly => "asymptotic only",
            Validity::Invalid => "invalid",
        };
        t.cell(format!("{label} validity"), found, expected);
    }
    t.finish()
}

fn attrition_13() -> CliResult {
    let mut t = Tally::new("fig5");
    let cycle = primorial_cycle(13)?;
    let trace = attrition(&cycle)?;
    t.cell("final gap count", trace.gaps.len(), ATTRITION_13_GAPS);
    t.cell("largest gap", trace.max_gap(), ATTRITION_13_MAX);
    t.cell(
        format!("gap {ATTRITION_13_MAX} first appears at"),
        trace.first_created(ATTRITION_13_MAX).unwrap_or(0),
        ATTRITION_13_MAX_AT,
    );
    let n = cycle.sum() as u64;
    let conserved = trace
        .steps
        .iter()
        .all(|s| s.histogram.iter().map(|(g, c)| g * c).sum::<u64>() == n);
    t.cell("gaps sum to 30030 after every prime", conserved, true);
    t.finish()
}

fn g7_attrition() -> CliResult {
    let mut t = Tally::new("g7-attrition");
    let trace = attrition(&primorial_cycle(7)?)?;
    // the display also strikes the sieving primes themselves
    let struck: Vec<u64> = trace.steps.iter().map(|s| s.q).collect();
    let kept: Vec<u64> = trace
        .survivors
        .iter()
        .copied()
        .filter(|v| !struck.contains(v))
        .chain([trace.modulus as u64 + 1])
        .collect();
    let gaps: Vec<String> = kept.windows(2).map(|w| (w[1] - w[0]).to_string()).collect();
    let want: Vec<String> = parse_display(G7_SURVIVORS).iter().map(u64::to_string).collect();
    t.cell("surviving gaps", gaps.join(","), want.join(","));
    t.finish()
}

pub fn run(a: ReproduceArgs) -> CliResult {
    match a.table {
        Table::Table2 => driving_terms(),
        Table::Table3 => products(a.long),
        Table::Table5 => constellations(),
        Table::Fig5 => attrition_13(),
        Table::G7Attrition => g7_attrition(),
    }
}
