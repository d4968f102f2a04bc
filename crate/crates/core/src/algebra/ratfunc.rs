use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;

/// A reduced quotient of integer polynomials in `d`.
///
/// Canonical form: `gcd(num, den) = 1` over the rationals, the integer
/// coefficients of `num` and `den` have no common factor, and `den` has a
/// positive leading coefficient. Structural equality is therefore equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    /// Reduces `num / den`. Panics if `den` is zero.
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn from_poly(num: IntPolynomial) -> Self {
        Self {
            num,
            den: IntPolynomial::one(),
        }
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPolynomial::constant(c.into()))
    }

    pub fn from_rational(c: &BigRational) -> Self {
        Self::new(
            IntPolynomial::constant(c.numer().clone()),
            IntPolynomial::constant(c.denom().clone()),
        )
    }

    /// Builds `Σ c_i d^i` from rational coefficients.
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Self::new(IntPolynomial::new(num), IntPolynomial::constant(lcm))
    }

    /// The variable `d`.
    pub fn d() -> Self {
        Self::from_poly(IntPolynomial::x())
    }

    /// `d^e` for any integer `e`.
    pub fn d_pow(e: i64) -> Self {
        let m = IntPolynomial::monomial(BigInt::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            Self {
                num: IntPolynomial::one(),
                den: m,
            }
        }
    }

    pub fn numer(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        // Powers of a reduced fraction stay reduced up to sign.
        Self::new(self.num.pow(e), self.den.pow(e))
    }

    /// Value at `d`, or `None` at a pole.
    pub fn eval(&self, d: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(d);
        (!den.is_zero()).then(|| self.num.eval(d) / den)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self {
            num: IntPolynomial::zero(),
            den: IntPolynomial::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/e over the reduced common denominator lcm(b, e)
        let g = self.den.gcd(&rhs.den);
        let (b, e) = if g.is_constant() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let num = &(&self.num * &e) + &(&rhs.num * &b);
        RationalFunction::new(num, &self.den * &e)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first so the final reduction works on smaller inputs.
        let cancel = |n: &IntPolynomial, d: &IntPolynomial| {
            let g = n.gcd(d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (a, e) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RationalFunction::new(&a * &c, &b * &e)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;

    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<IntPolynomial> for RationalFunction {
    fn from(p: IntPolynomial) -> Self {
        Self::new(p, IntPolynomial::one())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPolynomial| {
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
            if single {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn reduction_is_canonical() {
        let f = RationalFunction::new(p(&[0, -2]), p(&[0, 0, -4, 0, 4]));
        // -2d / (4d^4 - 4d^2) = -1 / (2d^3 - 2d)
        assert_eq!(f.numer(), &p(&[-1]));
        assert_eq!(f.denom(), &p(&[0, -2, 0, 2]));
        assert_eq!(f.to_string(), "-1/(2d^3 - 2d)");
        let g = RationalFunction::new(p(&[1]), p(&[0, -1, 0, 1])).scale_int(&BigInt::from(-1));
        assert_eq!(g.to_string(), "-1/(d^3 - d)");
    }

    #[test]
    fn field_operations() {
        let d = RationalFunction::d();
        let one = RationalFunction::one();
        let a = &one / &(&(&d * &d) - &one); // 1/(d^2-1)
        let b = &(-&one) / &(&(&d * &d * &d) - &d); // -1/(d^3-d)
                                                    // d*Wg(p,q) + Wg(q,q) = 0 for the k=2 Weingarten values
        assert!((&(&d * &b) + &a).is_zero());
        // d*Wg(q,q) + Wg(p,q) = 1/d
        assert_eq!(&(&d * &a) + &b, RationalFunction::d_pow(-1));
        assert_eq!(&a / &a, one);
        assert_eq!(
            a.eval(&BigRational::from_integer(3.into())),
            Some(BigRational::new(1.into(), 8.into()))
        );
        assert_eq!(a.eval(&BigRational::one()), None);
    }
}
