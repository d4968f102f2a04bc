//! Exact scalar and matrix arithmetic: integer polynomials in `d`, reduced
//! rational functions, expansions at `d = ∞`, fraction-free elimination and
//! the Chebyshev polynomials `Δ_k`.

mod chebyshev;
pub mod matrix;
mod poly;
mod ratfunc;
mod series;

pub use chebyshev::chebyshev_delta;
pub use matrix::{matrix_inverse_exact, rational_matrix_inverse, ExactRing};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::IntPolynomial;
pub use ratfunc::RationalFunction;
pub use series::{expand_at_infinity, SeriesAtInfinity};

use crate::error::{Error, Result};
use num_traits::Zero;

/// Parses `"a/b"` or an integer literal. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("expected an integer or a/b, got {text:?}"));
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
    let value = match text.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            BigRational::new(int(n)?, d)
        }
        None => BigRational::from_integer(int(text)?),
    };
    Ok(value)
}
