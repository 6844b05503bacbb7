//! Shared output helpers: CSV dialect and decimal rendering.

use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Result;

/// Start a CSV stream: each metadata line is written with a `# ` prefix,
/// then the caller writes the mandatory header row. LF line endings.
pub fn csv_writer<W: Write>(mut w: W, metadata: &[String]) -> Result<csv::Writer<W>> {
    for line in metadata {
        writeln!(w, "# {line}")?;
    }
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w))
}

/// Round `r` half away from zero to `places` decimals.
pub fn decimal(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let x = r.abs() * BigRational::from_integer(scale.clone());
    let (n, d): (&BigInt, &BigInt) = (x.numer(), x.denom());
    let mag: BigInt = (n * 2u32 + d).div_floor(&(d * 2u32));
    let neg = r.is_negative() && !mag.is_zero();
    let (int, frac) = mag.div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac.to_string(), width = places));
    }
    out
}

/// `p/q`, or just `p` for integers.
pub fn ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
