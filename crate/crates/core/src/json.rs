//! JSON forms of the engine's values. Integers are written as decimal
//! strings so that no consumer loses precision.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{IntPolynomial, RationalFunction};
use crate::diagram::TLElement;
use crate::error::{Error, Result};
use crate::nc2::{parse_pairing, Pairing};

pub(crate) mod decimal_strings {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Ascending coefficient list.
pub fn poly_to_json(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

pub fn poly_from_json(coeffs: &[String]) -> Result<IntPolynomial> {
    coeffs
        .iter()
        .map(|c| {
            c.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntPolynomial::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(f: &RationalFunction) -> Self {
        Self {
            num: poly_to_json(f.numer()),
            den: poly_to_json(f.denom()),
        }
    }
}

impl RationalFunctionJson {
    pub fn to_rational_function(&self) -> Result<RationalFunction> {
        let den = poly_from_json(&self.den)?;
        if num_traits::Zero::is_zero(&den) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(RationalFunction::new(poly_from_json(&self.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub pairing: String,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// `{"k": .., "terms": [{"pairing": .., "num": [..], "den": [..]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TlElementJson {
    pub k: usize,
    pub terms: Vec<TermJson>,
}

impl From<&TLElement> for TlElementJson {
    fn from(x: &TLElement) -> Self {
        Self {
            k: x.k(),
            terms: x
                .terms()
                .map(|(p, c)| TermJson {
                    pairing: p.to_string(),
                    num: poly_to_json(c.numer()),
                    den: poly_to_json(c.denom()),
                })
                .collect(),
        }
    }
}

impl TlElementJson {
    pub fn to_element(&self) -> Result<TLElement> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let p: Pairing = parse_pairing(&t.pairing)?;
                let c = RationalFunctionJson {
                    num: t.num.clone(),
                    den: t.den.clone(),
                }
                .to_rational_function()?;
                Ok((p, c))
            })
            .collect::<Result<Vec<_>>>()?;
        TLElement::from_terms(self.k, terms)
    }
}

/// `{"k": .., "ordering": [..], "entries": [[coeffs..]..]}` for a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramJson {
    pub k: usize,
    pub ordering: Vec<String>,
    pub entries: Vec<Vec<Vec<String>>>,
}

impl GramJson {
    pub fn new(k: usize, ordering: &[Pairing], entries: &[Vec<IntPolynomial>]) -> Self {
        Self {
            k,
            ordering: ordering.iter().map(Pairing::to_string).collect(),
            entries: entries
                .iter()
                .map(|row| row.iter().map(poly_to_json).collect())
                .collect(),
        }
    }
}
