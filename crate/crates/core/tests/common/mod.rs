#![allow(dead_code)]

//! Published reference values shared by the integration suites.

/// The printed G(7#); the spaces are layout only.
pub const G7_PRINTED: &str =
    "10, 2424626424 6 62642 6 46 8 42424 8 64 6 24626 6 4246264242, 10, 2";

pub fn g7_printed() -> String {
    G7_PRINTED.replace(' ', "")
}

/// Driving terms of each even gap 2..=32 in G(13#), lengths 1..=9, together
/// with the asymptotic ratio as (numerator, denominator).
pub const DRIVING_TERMS_13: [(u64, [u64; 9], (i64, i64)); 16] = [
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

/// Displayed asymptotic ratios for g = 74, 76, ..., 132.
pub const ASYMPTOTIC_74_132: [&str; 30] = [
    "1.02857", "1.0588", "2.1818", "1.3333", "1.0256", "2.4", "1.0244", "1.1111", "2.6667",
    "1.0476", "1.0222", "2", "1.2", "1.3333", "2.133", "1.0909", "1.0196", "2", "1.4815", "1.2",
    "2.1176", "1.0370", "1.0175", "2.6667", "1.0169", "1.0345", "2.4", "1", "1.4545", "2.2222",
];

pub type ConstellationRow = (&'static str, u64, &'static [u64], (i64, i64), bool);

/// Constellation, starting prime p0, counts for lengths j1.., asymptotic
/// weight, and whether only the asymptotic result applies.
pub const CONSTELLATIONS: [ConstellationRow; 9] = [
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

/// Eigenvalue products a_2..a_9 from p0 = 13 to pk = 999999999989.
pub const PRODUCTS_AT_1E12: [f64; 8] = [
    0.10206751799779,
    0.01019996897567,
    0.00099592269918,
    0.00009477093531,
    0.00000876214163,
    0.00000078408120,
    0.00000006757562,
    0.00000000557284,
];

/// Surviving gaps of G(7#) after further sieving, as displayed after the
/// closures by 11 and 13 have also been applied to the front of the cycle.
pub const G7_SURVIVORS_DISPLAY: &str =
    "16, 24626424 6 62642 6 46 8 42424, 14, 462, 10, 26 6 4 6 62, 10, 242, 12,";

/// Parse a compact display (commas around multi-digit gaps, single digits
/// run together, spaces ignored).
pub fn parse_display(text: &str) -> Vec<u64> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let token: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if token.is_empty() {
            continue;
        }
        // single-digit gaps are even, so any 0, 1 or odd digit marks one
        // multi-digit gap
        if token.chars().any(|c| !matches!(c, '2' | '4' | '6' | '8')) {
            out.push(token.parse().unwrap());
        } else {
            out.extend(token.chars().map(|c| c.to_digit(10).unwrap() as u64));
        }
    }
    out
}
