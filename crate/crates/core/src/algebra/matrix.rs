//! Fraction-free (Bareiss) Gauss-Jordan elimination over integral domains
//! with exact division, and inverses of matrices over the fraction fields
//! built on top of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{IntPolynomial, RationalFunction};
use crate::error::{Error, Result};

/// An integral domain whose divisions that are known to be exact can be
/// carried out.
pub trait ExactRing: Clone + PartialEq + Send + Sync + Zero + One {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    /// `self / rhs`, `None` if it is not exact.
    fn div_exact_ref(&self, rhs: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn div_exact_ref(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl ExactRing for IntPolynomial {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn div_exact_ref(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

/// Fraction-free Gauss-Jordan on `[a | rhs]`.
///
/// Returns `(x, det)` with `a · x = det · rhs`, where `det = ±det(a)`; every
/// intermediate entry is a minor of `[a | rhs]`, so each division by the previous
/// pivot is exact. `None` if `a` is singular.
pub fn fraction_free_solve<T: ExactRing>(a: &Matrix<T>, rhs: &Matrix<T>) -> Option<(Matrix<T>, T)> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(rhs.len(), n, "right-hand side has the wrong number of rows");
    let m = rhs.first().map_or(0, Vec::len);
    let mut rows: Matrix<T> = a
        .iter()
        .zip(rhs)
        .map(|(l, r)| l.iter().chain(r).cloned().collect())
        .collect();
    let mut prev = T::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot_row);
        let pivot = rows[col].clone();
        let pc = pivot[col].clone();
        rows.par_iter_mut().enumerate().for_each(|(i, row)| {
            if i == col {
                return;
            }
            let factor = std::mem::replace(&mut row[col], T::zero());
            for j in col + 1..n + m {
                let mut v = row[j].mul_ref(&pc);
                if !factor.is_zero() && !pivot[j].is_zero() {
                    v = v.sub_ref(&factor.mul_ref(&pivot[j]));
                }
                row[j] = if v.is_zero() {
                    v
                } else {
                    v.div_exact_ref(&prev)
                        .expect("fraction-free elimination produced an inexact division")
                };
            }
            // Earlier columns of other rows only hold the diagonal; rescale it.
            if i < col {
                row[i] = pc.clone();
            }
        });
        prev = pc;
    }
    let x = rows.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((x, prev))
}

/// `(adj, det)` with `a · adj = det · I`.
pub fn fraction_free_inverse<T: ExactRing>(a: &Matrix<T>) -> Option<(Matrix<T>, T)> {
    fraction_free_solve(a, &identity(a.len()))
}

pub fn identity<T: ExactRing>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<T: ExactRing>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.par_iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = T::zero();
                    for t in 0..inner {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            acc = acc + row[t].mul_ref(&b[t][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn is_scaled_identity<T: ExactRing>(m: &Matrix<T>, c: &T) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v == c } else { v.is_zero() })
    })
}

/// Exact inverse of a square matrix of rational functions.
///
/// Every row is cleared of denominators, the resulting integer-polynomial
/// matrix is inverted fraction-free, and `N · adj(N) = det · I` is checked
/// before the entries are reduced.
pub fn matrix_inverse_exact(m: &Matrix<RationalFunction>) -> Result<Matrix<RationalFunction>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::SizeMismatch {
            left: n,
            right: m.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    let row_dens: Vec<IntPolynomial> = m
        .iter()
        .map(|row| {
            row.iter().fold(IntPolynomial::one(), |acc, f| {
                let g = acc.gcd(f.denom());
                (&acc * f.denom()).div_exact(&g).unwrap()
            })
        })
        .collect();
    let cleared: Matrix<IntPolynomial> = m
        .iter()
        .zip(&row_dens)
        .map(|(row, den)| {
            row.iter()
                .map(|f| &den.div_exact(f.denom()).unwrap() * f.numer())
                .collect()
        })
        .collect();
    let (adj, det) = fraction_free_inverse(&cleared).ok_or(Error::SingularMatrix)?;
    if !is_scaled_identity(&mat_mul(&cleared, &adj), &det) {
        return Err(Error::VerificationFailure(
            "N · adj(N) is not det · I".into(),
        ));
    }
    // M = diag(D)^-1 N  =>  M^-1 = adj(N) diag(D) / det
    let det = RationalFunction::from_poly(det);
    Ok(adj
        .into_par_iter()
        .map(|row| {
            row.into_iter()
                .zip(&row_dens)
                .map(|(x, den)| RationalFunction::new(&x * den, IntPolynomial::one()) / &det)
                .collect()
        })
        .collect())
}

/// Exact inverse of a square rational matrix, by the same row-clearing scheme.
pub fn rational_matrix_inverse(m: &Matrix<BigRational>) -> Result<Matrix<BigRational>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::SizeMismatch { left: n, right: 0 });
    }
    let row_dens: Vec<BigInt> = m
        .iter()
        .map(|row| row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let cleared: Matrix<BigInt> = m
        .iter()
        .zip(&row_dens)
        .map(|(row, den)| row.iter().map(|x| x.numer() * (den / x.denom())).collect())
        .collect();
    let (adj, det) = fraction_free_inverse(&cleared).ok_or(Error::SingularMatrix)?;
    if !is_scaled_identity(&mat_mul(&cleared, &adj), &det) {
        return Err(Error::VerificationFailure(
            "N · adj(N) is not det · I".into(),
        ));
    }
    Ok(adj
        .into_iter()
        .map(|row| {
            row.into_iter()
                .zip(&row_dens)
                .map(|(x, den)| BigRational::new(x * den, det.clone()))
                .collect()
        })
        .collect())
}
