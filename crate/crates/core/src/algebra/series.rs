use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPolynomial, RationalFunction};

/// Truncated expansion `Σ_j c_j d^(-offset-j) + O(d^(-offset-N-1))` of a
/// rational function at `d = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesAtInfinity {
    pub offset: i64,
    pub coeffs: Vec<BigRational>,
}

impl SeriesAtInfinity {
    /// Largest exponent `e` such that the coefficient of `d^(-e)` is known.
    pub fn last_exponent(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `d^(-e)`, or `None` beyond the truncation window.
    pub fn coeff_of(&self, e: i64) -> Option<BigRational> {
        if e > self.last_exponent() {
            return None;
        }
        if e < self.offset {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[(e - self.offset) as usize].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The truncated sum as an exact rational function.
    pub fn truncation(&self) -> RationalFunction {
        let top = self.last_exponent();
        // Σ c_j d^(top - offset - j) / d^top
        let n = self.coeffs.len();
        let ascending: Vec<BigRational> = self.coeffs.iter().rev().cloned().collect();
        debug_assert_eq!(ascending.len(), n);
        let poly = RationalFunction::from_rational_coeffs(&ascending);
        &poly * &RationalFunction::d_pow(-top)
    }
}

/// Exact expansion of `f` in powers of `1/d` with `order + 1` coefficients.
///
/// With `y = 1/d`, `f = y^(deg den - deg num) · Ñ(y) / D̃(y)` where `Ñ`, `D̃`
/// are the reversed coefficient lists; `D̃(0)` is the leading coefficient of
/// the denominator, so the quotient is an ordinary power series.
pub fn expand_at_infinity(f: &RationalFunction, order: usize) -> SeriesAtInfinity {
    let len = order + 1;
    let (Some(dn), Some(dd)) = (f.numer().degree(), f.denom().degree()) else {
        return SeriesAtInfinity {
            offset: 0,
            coeffs: vec![BigRational::zero(); len],
        };
    };
    let rev = |p: &IntPolynomial| -> Vec<BigInt> { p.coeffs().iter().rev().cloned().collect() };
    let num = rev(f.numer());
    let den = rev(f.denom());
    let lead = BigRational::from_integer(den[0].clone());
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = BigRational::from_integer(num.get(j).cloned().unwrap_or_default());
        for (i, c) in coeffs.iter().enumerate() {
            if let Some(b) = den.get(j - i) {
                if !b.is_zero() {
                    acc -= c * BigRational::from_integer(b.clone());
                }
            }
        }
        coeffs.push(if lead.is_one() { acc } else { acc / &lead });
    }
    SeriesAtInfinity {
        offset: dd as i64 - dn as i64,
        coeffs,
    }
}
