//! Jones-Wenzl projections, by the Wenzl recursion and as the normalized
//! dual basis element of the identity diagram.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{chebyshev_delta, RationalFunction};
use crate::diagram::{bilinear_form, generator_u, TLElement};
use crate::error::{Error, Result};
use crate::nc2::{Pairing, DEFAULT_ENUMERATION_CAP};
use crate::oracle::{dual_basis_element, weingarten_row, DEFAULT_SYMBOLIC_CAP};

/// `q_1 = 1`, `q_{k+1} = ι(q_k) - (Δ_{k-1}/Δ_k) ι(q_k) u_k ι(q_k)`.
pub fn jw_wenzl_recursion(k: usize) -> Result<TLElement> {
    if k == 0 {
        return Err(Error::ZeroSize);
    }
    if k > DEFAULT_ENUMERATION_CAP {
        return Err(Error::SizeLimitExceeded {
            k,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let mut q = TLElement::identity(1);
    for j in 1..k {
        let lifted = q.add_right_strand();
        let u = TLElement::basis(&generator_u(j, j + 1)?);
        let ratio = RationalFunction::new(chebyshev_delta(j - 1), chebyshev_delta(j));
        let sandwich = lifted.mul(&u)?.mul(&lifted)?;
        q = lifted.sub(&sandwich.scale(&ratio))?;
    }
    Ok(q)
}

/// `q_k = Σ_q (Wg_d(1, q) / Wg_d(1, 1)) D_q`.
pub fn jw_via_weingarten(k: usize) -> Result<TLElement> {
    if k == 0 {
        return Err(Error::ZeroSize);
    }
    if k > DEFAULT_SYMBOLIC_CAP {
        return Err(Error::SizeLimitExceeded {
            k,
            cap: DEFAULT_SYMBOLIC_CAP,
        });
    }
    let one = Pairing::identity(k);
    let row = weingarten_row(&one)?;
    let norm = row
        .iter()
        .find(|(q, _)| *q == one)
        .map(|(_, w)| w.clone())
        .expect("identity is in the basis");
    let norm = norm
        .inv()
        .ok_or_else(|| Error::VerificationFailure("Wg(1, 1) vanishes identically".into()))?;
    TLElement::from_terms(k, row.into_iter().map(|(q, w)| (q, &w * &norm)))
}

/// Outcome of one identity in a [`JwReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JwReport {
    pub k: usize,
    pub checks: Vec<Check>,
}

/// Verifies, as exact identities: `q² = q`; `u_i q = q u_i = 0`; recursion
/// equals the Weingarten construction; `q = D̂_1 / ⟨D̂_1, D̂_1⟩` with
/// `⟨D̂_1, D̂_1⟩ = Wg(1, 1)`. Fails with the first violated identity.
pub fn verify_jw(k: usize) -> Result<JwReport> {
    let q = jw_wenzl_recursion(k)?;
    verify_candidate(&q)
}

/// [`verify_jw`] for an arbitrary candidate projection of half-size `k`.
pub fn verify_candidate(q: &TLElement) -> Result<JwReport> {
    let k = q.k();
    let mut checks = Vec::new();
    let mut record = |name: String, passed: bool| -> Result<()> {
        if !passed {
            return Err(Error::VerificationFailure(format!("k={k}: {name}")));
        }
        checks.push(Check { name, passed });
        Ok(())
    };

    record("idempotent: q^2 = q".into(), q.mul(q)? == *q)?;
    for i in 1..k {
        let u = TLElement::basis(&generator_u(i, k)?);
        record(format!("u_{i} q = 0"), u.mul(q)?.is_zero())?;
        record(format!("q u_{i} = 0"), q.mul(&u)?.is_zero())?;
    }
    let via_wg = jw_via_weingarten(k)?;
    record("recursion = Weingarten ratios".into(), via_wg == *q)?;

    let one = Pairing::identity(k);
    let dual = dual_basis_element(&one)?;
    let norm = bilinear_form(&dual, &dual)?;
    let wg11 = dual.coeff(&one);
    record("<D^_1, D^_1> = Wg(1, 1)".into(), norm == wg11)?;
    let normalized = if norm.is_zero() {
        TLElement::zero(k)
    } else {
        dual.scale(&norm.inv().unwrap())
    };
    record("q = D^_1 / <D^_1, D^_1>".into(), normalized == *q)?;
    record(
        "coefficient of D_1 is 1".into(),
        q.coeff(&one) == RationalFunction::one(),
    )?;
    Ok(JwReport { k, checks })
}
