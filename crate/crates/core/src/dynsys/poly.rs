use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{pascal_upper, PopulationVector};
use crate::error::{Error, Result};
use crate::report::to_f64;

/// `w(a) = sum_m (-1)^(m+1) c_m a^(m-1)`, the normalized population of the
/// base length written in terms of `a = a_2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    /// `c_1, c_2, ...`
    pub coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn eval(&self, a: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in self.coeffs.iter().enumerate().rev() {
            let term = if m % 2 == 0 { c.clone() } else { -c.clone() };
            acc = acc * a + term;
        }
        acc
    }

    pub fn eval_f64(&self, a: f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.coeffs.iter().enumerate().rev() {
            let c = to_f64(c);
            acc = acc * a + if m % 2 == 0 { c } else { -c };
        }
        acc
    }

    fn minus(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Coefficients `c_m = (L v)_m` of the normalized vector `v`.
pub fn polynomial_approx(v: &PopulationVector) -> Polynomial {
    let v = v.to_normalized();
    let l = pascal_upper(v.entries().len());
    Polynomial {
        coeffs: l.apply(v.entries()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// Smallest sign change of `w_A - w_B` in (0, 1).
    Root(f64),
    None,
}

const GRID: i64 = 1000;
const TOLERANCE: f64 = 1e-6;

/// Value of `a_2^k` below which the ordering of the two populations flips.
///
/// Both vectors must start from the same stage. The difference polynomial is
/// sampled exactly on a grid of rational points and the first sign change is
/// narrowed by bisection.
pub fn crossover(a: &PopulationVector, b: &PopulationVector) -> Result<Crossover> {
    if a.prime() != b.prime() {
        return Err(Error::InvalidArgument(format!(
            "vectors start at different stages ({} and {})",
            a.prime(),
            b.prime()
        )));
    }
    let len = a.max_len().max(b.max_len());
    let diff = polynomial_approx(&a.padded(len)).minus(&polynomial_approx(&b.padded(len)));
    if diff.is_zero() {
        return Ok(Crossover::None);
    }
    let point = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(GRID));
    let mut prev: Option<(BigRational, i32)> = None;
    for k in 0..=GRID {
        let x = point(k);
        let s = sign(&diff.eval(&x));
        if s == 0 {
            if k > 0 && k < GRID {
                return Ok(Crossover::Root(to_f64(&x)));
            }
            continue;
        }
        if let Some((px, ps)) = &prev {
            if *ps != s {
                return Ok(Crossover::Root(bisect(&diff, px.clone(), x, *ps)));
            }
        }
        prev = Some((x, s));
    }
    Ok(Crossover::None)
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn bisect(p: &Polynomial, mut lo: BigRational, mut hi: BigRational, lo_sign: i32) -> f64 {
    let two = BigRational::from_integer(2.into());
    while to_f64(&(&hi - &lo)) > TOLERANCE {
        let mid = (&lo + &hi) / &two;
        match sign(&p.eval(&mid)) {
            0 => return to_f64(&mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    to_f64(&((lo + hi) / two))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::asymptotic_ratio;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn raw(p: u64, c: &[u64]) -> PopulationVector {
        PopulationVector::raw(1, p, c.iter().copied()).unwrap()
    }

    #[test]
    fn coefficients() {
        let e1 = PopulationVector::normalized(1, 5, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        let p = polynomial_approx(&e1);
        assert_eq!(p.coeffs, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let e4 = PopulationVector::normalized(1, 5, vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(polynomial_approx(&e4).coeffs, vec![q(1, 1), q(3, 1), q(3, 1), q(1, 1)]);

        let g6 = raw(5, &[2, 4]);
        let p = polynomial_approx(&g6);
        assert_eq!(p.coeffs[0], q(2, 1));
        assert_eq!(p.eval(&q(0, 1)), asymptotic_ratio(&g6));
        assert_eq!(p.eval(&q(1, 1)), q(2, 3));
        assert!((p.eval_f64(0.5) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn crossovers() {
        let g6 = raw(5, &[2, 4]);
        let g2 = raw(5, &[3]);
        match crossover(&g6, &g2).unwrap() {
            Crossover::Root(r) => assert!((r - 0.75).abs() < 1e-6),
            Crossover::None => panic!("expected a root"),
        }
        assert_eq!(crossover(&g6, &g6).unwrap(), Crossover::None);
        assert!(crossover(&g6, &raw(7, &[15])).is_err());
        // w_2 = 1 and w_4 = 1 never cross
        assert_eq!(crossover(&g2, &raw(5, &[3])).unwrap(), Crossover::None);
    }
}
