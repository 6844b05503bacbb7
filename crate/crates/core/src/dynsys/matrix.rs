use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Basis;
use crate::error::{Error, Result};
use crate::primal::is_prime;

/// Dense square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn diagonal(entries: &[BigRational]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based entry (i, j).
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn scaled(&self, by: &BigRational) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * by).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Binomial coefficients C(r, c) for 0 <= r, c < n.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[0] = BigInt::one();
        for c in 1..=r {
            row[c] = &rows[r - 1][c - 1] + &rows[r - 1][c];
        }
        rows.push(row);
    }
    rows
}

/// Upper-triangular Pascal matrix L with `L[i][j] = C(j, i)` (zero-based).
pub fn pascal_upper(n: usize) -> Matrix {
    let c = pascal(n);
    let mut m = Matrix::zeros(n);
    for (j, row) in c.iter().enumerate() {
        for (i, v) in row.iter().enumerate().take(j + 1) {
            m.set(i, j, BigRational::from_integer(v.clone()));
        }
    }
    m
}

/// Its inverse R with `R[i][j] = (-1)^(i+j) C(j, i)`.
pub fn pascal_upper_inverse(n: usize) -> Matrix {
    let c = pascal(n);
    let mut m = Matrix::zeros(n);
    for (j, row) in c.iter().enumerate() {
        for (i, v) in row.iter().enumerate().take(j + 1) {
            let v = BigRational::from_integer(v.clone());
            m.set(i, j, if (i + j) % 2 == 0 { v } else { -v });
        }
    }
    m
}

/// The model matrix and its Pascal eigenstructure `M = R * Lambda * L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMatrices {
    pub p: u64,
    pub j1: usize,
    pub max_len: usize,
    pub basis: Basis,
    pub m: Matrix,
    pub r: Matrix,
    pub l: Matrix,
    /// Eigenvalues for lengths `j1..=max_len`.
    pub lambda: Vec<BigRational>,
}

impl SystemMatrices {
    pub fn lambda_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.lambda)
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }
}

pub(crate) fn check_domain(p: u64, j1: usize, max_len: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if j1 == 0 || max_len < j1 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= j1 <= J, got j1 = {j1}, J = {max_len}"
        )));
    }
    if p <= max_len as u64 + 1 {
        return Err(Error::ModelDomain { p, max_len });
    }
    Ok(())
}

/// Upper-bidiagonal one-step matrix at prime `p` for lengths `j1..=max_len`:
/// diagonal `p - j - 1`, superdiagonal `j + 1 - j1`. In the normalized basis
/// everything is divided by `p - j1 - 1`.
pub fn model_matrix(p: u64, j1: usize, max_len: usize, basis: Basis) -> Result<Matrix> {
    check_domain(p, j1, max_len)?;
    let d = max_len - j1 + 1;
    let mut m = Matrix::zeros(d);
    for k in 0..d {
        let j = (j1 + k) as u64;
        m.set(k, k, BigRational::from_integer((p - j - 1).into()));
        if k + 1 < d {
            m.set(k, k + 1, BigRational::from_integer((k as u64 + 1).into()));
        }
    }
    Ok(match basis {
        Basis::Raw => m,
        Basis::Normalized => m.scaled(&normalizer(p, j1)),
    })
}

fn normalizer(p: u64, j1: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p - j1 as u64 - 1))
}

/// Build M, R, L and Lambda for prime `p` and lengths `j1..=max_len`.
pub fn eigendecompose(p: u64, j1: usize, max_len: usize, basis: Basis) -> Result<SystemMatrices> {
    let m = model_matrix(p, j1, max_len, basis)?;
    let d = max_len - j1 + 1;
    let scale = match basis {
        Basis::Raw => BigRational::one(),
        Basis::Normalized => normalizer(p, j1),
    };
    let lambda = (j1..=max_len)
        .map(|j| BigRational::from_integer((p - j as u64 - 1).into()) * &scale)
        .collect();
    Ok(SystemMatrices {
        p,
        j1,
        max_len,
        basis,
        m,
        r: pascal_upper_inverse(d),
        l: pascal_upper(d),
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn first_rows() {
        let s = eigendecompose(7, 1, 4, Basis::Raw).unwrap();
        assert_eq!(s.r.row(0), &[int(1), int(-1), int(1), int(-1)]);
        assert_eq!(s.l.row(0), &[int(1), int(1), int(1), int(1)]);
        assert_eq!(s.l.row(1), &[int(0), int(1), int(2), int(3)]);
    }

    #[test]
    fn factorization_is_exact() {
        for basis in [Basis::Raw, Basis::Normalized] {
            let s = eigendecompose(7, 1, 4, basis).unwrap();
            assert_eq!(&s.l * &s.r, Matrix::identity(4));
            assert_eq!(&(&s.r * &s.lambda_matrix()) * &s.l, s.m);
        }
        let s = eigendecompose(23, 3, 9, Basis::Raw).unwrap();
        assert_eq!(&(&s.r * &s.lambda_matrix()) * &s.l, s.m);
        assert_eq!(s.m.get(0, 0), &int(19));
        assert_eq!(s.m.get(0, 1), &int(1));
        assert_eq!(s.m.get(1, 2), &int(2));
    }

    #[test]
    fn large_dimensions_use_big_integers() {
        let s = eigendecompose(211, 1, 70, Basis::Raw).unwrap();
        assert_eq!(&s.l * &s.r, Matrix::identity(70));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            eigendecompose(5, 1, 4, Basis::Raw),
            Err(Error::ModelDomain { p: 5, max_len: 4 })
        ));
        assert!(matches!(eigendecompose(9, 1, 2, Basis::Raw), Err(Error::NotPrime(9))));
        assert!(eigendecompose(7, 3, 2, Basis::Raw).is_err());
    }
}
