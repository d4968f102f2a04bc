//! Weingarten matrices by exact inversion of the Gram matrix, the dual
//! diagram basis, and Haar moments of the free orthogonal quantum group in
//! the kernel-refinement form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{fraction_free_solve, Matrix};
use crate::algebra::{
    matrix_inverse_exact, rational_matrix_inverse, IntPolynomial, RationalFunction,
};
use crate::diagram::{gram_matrix_capped, TLElement};
use crate::error::{Error, Result};
use crate::json::RationalFunctionJson;
use crate::nc2::{enumerate_nc2_capped, Pairing, DEFAULT_ENUMERATION_CAP};

pub const DEFAULT_SYMBOLIC_CAP: usize = 5;
pub const DEFAULT_NUMERIC_CAP: usize = 6;

/// Largest half-sizes the oracle accepts in each mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub symbolic: usize,
    pub numeric: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            symbolic: DEFAULT_SYMBOLIC_CAP,
            numeric: DEFAULT_NUMERIC_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeingartenEntries {
    Symbolic(Matrix<RationalFunction>),
    Numeric {
        d: BigRational,
        entries: Matrix<BigRational>,
    },
}

/// `Wg = G^{-1}` indexed by the canonical ordering of `NC_2(2k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeingartenMatrix {
    pub k: usize,
    pub ordering: Vec<Pairing>,
    pub entries: WeingartenEntries,
}

impl WeingartenMatrix {
    pub fn index_of(&self, p: &Pairing) -> Option<usize> {
        self.ordering.binary_search(p).ok()
    }

    pub fn symbolic(&self) -> Option<&Matrix<RationalFunction>> {
        match &self.entries {
            WeingartenEntries::Symbolic(m) => Some(m),
            WeingartenEntries::Numeric { .. } => None,
        }
    }

    pub fn numeric(&self) -> Option<&Matrix<BigRational>> {
        match &self.entries {
            WeingartenEntries::Numeric { entries, .. } => Some(entries),
            WeingartenEntries::Symbolic(_) => None,
        }
    }

    /// Symbolic entry `Wg_d(p, q)`.
    pub fn entry(&self, p: &Pairing, q: &Pairing) -> Option<&RationalFunction> {
        let (i, j) = (self.index_of(p)?, self.index_of(q)?);
        self.symbolic().map(|m| &m[i][j])
    }

    /// Numeric entry `Wg_d(p, q)`.
    pub fn value(&self, p: &Pairing, q: &Pairing) -> Option<&BigRational> {
        let (i, j) = (self.index_of(p)?, self.index_of(q)?);
        self.numeric().map(|m| &m[i][j])
    }

    pub fn is_symmetric(&self) -> bool {
        fn sym<T: PartialEq>(m: &Matrix<T>) -> bool {
            (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
        }
        match &self.entries {
            WeingartenEntries::Symbolic(m) => sym(m),
            WeingartenEntries::Numeric { entries, .. } => sym(entries),
        }
    }

    /// Checks `G · Wg = I` entry by entry in exact arithmetic.
    pub fn gram_product_is_identity(&self) -> bool {
        let n = self.ordering.len();
        let joins: Vec<Vec<usize>> = self
            .ordering
            .iter()
            .map(|p| {
                self.ordering
                    .iter()
                    .map(|q| crate::nc2::join_block_count(p, q).unwrap())
                    .collect()
            })
            .collect();
        match &self.entries {
            WeingartenEntries::Symbolic(wg) => {
                let powers: Vec<RationalFunction> = (0..=self.k)
                    .map(|e| RationalFunction::d_pow(e as i64))
                    .collect();
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let sum = (0..n).fold(RationalFunction::zero(), |acc, t| {
                            &acc + &(&powers[joins[i][t]] * &wg[t][j])
                        });
                        sum == if i == j {
                            RationalFunction::one()
                        } else {
                            RationalFunction::zero()
                        }
                    })
                })
            }
            WeingartenEntries::Numeric { d, entries } => {
                // With d = a/b, b^k G has entries a^j b^(k-j). Scaling column j of Wg
                // by the lcm of its denominators keeps the whole check in integers.
                let (a, b) = (d.numer(), d.denom());
                let scaled_g: Vec<BigInt> = (0..=self.k)
                    .map(|e| num_traits::pow(a.clone(), e) * num_traits::pow(b.clone(), self.k - e))
                    .collect();
                let bk = num_traits::pow(b.clone(), self.k);
                (0..n).all(|j| {
                    let lcm = (0..n).fold(BigInt::one(), |acc, t| acc.lcm(entries[t][j].denom()));
                    let col: Vec<BigInt> = (0..n)
                        .map(|t| entries[t][j].numer() * (&lcm / entries[t][j].denom()))
                        .collect();
                    (0..n).all(|i| {
                        let sum = (0..n).fold(BigInt::zero(), |acc, t| {
                            acc + &scaled_g[joins[i][t]] * &col[t]
                        });
                        if i == j {
                            sum == &bk * &lcm
                        } else {
                            sum.is_zero()
                        }
                    })
                })
            }
        }
    }

    pub fn to_json(&self) -> WeingartenJson {
        let (mode, d, entries) = match &self.entries {
            WeingartenEntries::Symbolic(m) => (
                "symbolic",
                None,
                m.iter()
                    .map(|row| row.iter().map(|f| EntryJson::Symbolic(f.into())).collect())
                    .collect(),
            ),
            WeingartenEntries::Numeric { d, entries } => (
                "numeric",
                Some(d.to_string()),
                entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| EntryJson::Numeric(x.to_string()))
                            .collect()
                    })
                    .collect(),
            ),
        };
        WeingartenJson {
            k: self.k,
            mode: mode.into(),
            d,
            ordering: self.ordering.iter().map(Pairing::to_string).collect(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Symbolic(RationalFunctionJson),
    Numeric(String),
}

/// `{"k", "mode", "d"?, "ordering", "entries"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeingartenJson {
    pub k: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    pub ordering: Vec<String>,
    pub entries: Vec<Vec<EntryJson>>,
}

fn symbolic_cache() -> &'static Mutex<HashMap<usize, Arc<WeingartenMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<WeingartenMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn weingarten_exact(k: usize, mode: Mode) -> Result<WeingartenMatrix> {
    weingarten_exact_capped(k, mode, OracleCaps::default())
}

pub fn weingarten_exact_capped(k: usize, mode: Mode, caps: OracleCaps) -> Result<WeingartenMatrix> {
    match mode {
        Mode::Symbolic => {
            if k > caps.symbolic {
                return Err(Error::SizeLimitExceeded {
                    k,
                    cap: caps.symbolic,
                });
            }
            Ok((*symbolic_shared(k)?).clone())
        }
        Mode::Numeric(d) => {
            if k > caps.numeric {
                return Err(Error::SizeLimitExceeded {
                    k,
                    cap: caps.numeric,
                });
            }
            numeric_weingarten(k, d)
        }
    }
}

/// The symbolic matrix, computed once per `k` and shared afterwards.
pub fn symbolic_shared(k: usize) -> Result<Arc<WeingartenMatrix>> {
    if let Some(m) = symbolic_cache().lock().unwrap().get(&k) {
        return Ok(m.clone());
    }
    let (ordering, gram) = gram_matrix_capped(k, DEFAULT_ENUMERATION_CAP)?;
    let gram: Matrix<RationalFunction> = gram
        .into_iter()
        .map(|row| row.into_iter().map(RationalFunction::from_poly).collect())
        .collect();
    let entries = matrix_inverse_exact(&gram)?;
    let m = Arc::new(WeingartenMatrix {
        k,
        ordering,
        entries: WeingartenEntries::Symbolic(entries),
    });
    symbolic_cache().lock().unwrap().insert(k, m.clone());
    Ok(m)
}

fn numeric_weingarten(k: usize, d: BigRational) -> Result<WeingartenMatrix> {
    let ordering = enumerate_nc2_capped(k, DEFAULT_ENUMERATION_CAP)?;
    let powers: Vec<BigRational> = (0..=k).map(|e| num_traits::pow(d.clone(), e)).collect();
    let gram: Matrix<BigRational> = ordering
        .iter()
        .map(|p| {
            ordering
                .iter()
                .map(|q| powers[crate::nc2::join_block_count(p, q).unwrap()].clone())
                .collect()
        })
        .collect();
    let entries = rational_matrix_inverse(&gram).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularGram {
            k,
            d: d.to_string(),
        },
        other => other,
    })?;
    Ok(WeingartenMatrix {
        k,
        ordering,
        entries: WeingartenEntries::Numeric { d, entries },
    })
}

/// Row `Wg_d(p, ·)` alone, from one fraction-free solve `G x = e_p`
/// (the Gram matrix is symmetric, so the column is the row).
pub fn weingarten_row(p: &Pairing) -> Result<Vec<(Pairing, RationalFunction)>> {
    let k = p.k();
    if k > DEFAULT_SYMBOLIC_CAP {
        return Err(Error::SizeLimitExceeded {
            k,
            cap: DEFAULT_SYMBOLIC_CAP,
        });
    }
    if let Some(m) = symbolic_cache().lock().unwrap().get(&k) {
        let i = m.index_of(p).expect("pairing of the right size");
        let row = &m.symbolic().unwrap()[i];
        return Ok(m
            .ordering
            .iter()
            .cloned()
            .zip(row.iter().cloned())
            .collect());
    }
    let (ordering, gram) = gram_matrix_capped(k, DEFAULT_ENUMERATION_CAP)?;
    let target = ordering
        .binary_search(p)
        .expect("pairing of the right size");
    let rhs: Matrix<IntPolynomial> = (0..ordering.len())
        .map(|i| {
            vec![if i == target {
                IntPolynomial::one()
            } else {
                IntPolynomial::zero()
            }]
        })
        .collect();
    let (x, det) = fraction_free_solve(&gram, &rhs).ok_or(Error::SingularMatrix)?;
    // Check G x = det e_p before trusting the solution.
    for (i, row) in gram.iter().enumerate() {
        let sum = row
            .iter()
            .zip(&x)
            .fold(IntPolynomial::zero(), |acc, (g, xi)| &acc + &(g * &xi[0]));
        let expect = if i == target {
            det.clone()
        } else {
            IntPolynomial::zero()
        };
        if sum != expect {
            return Err(Error::VerificationFailure(format!(
                "Gram solve for {p} failed at row {i}"
            )));
        }
    }
    Ok(ordering
        .into_iter()
        .zip(x)
        .map(|(q, mut xi)| (q, RationalFunction::new(xi.remove(0), det.clone())))
        .collect())
}

/// `D̂_p = Σ_q Wg_d(p, q) D_q`.
pub fn dual_basis_element(p: &Pairing) -> Result<TLElement> {
    TLElement::from_terms(p.k(), weingarten_row(p)?)
}

fn refines_kernel(p: &Pairing, index: &[usize]) -> bool {
    p.blocks()
        .iter()
        .all(|&(a, b)| index[a - 1] == index[b - 1])
}

/// `μ(u_{i(1)j(1)} ... u_{i(l)j(l)})` for `F = 1` or `F = F_ρ` with all indices
/// in the identity block: the sum of `Wg_d(p, q)` over `p ≤ ker j`, `q ≤ ker i`.
pub fn haar_moment(i: &[usize], j: &[usize], d: &BigRational) -> Result<BigRational> {
    if i.len() != j.len() {
        return Err(Error::SizeMismatch {
            left: i.len(),
            right: j.len(),
        });
    }
    if let Some(&bad) = i.iter().chain(j).find(|&&x| x == 0) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            max: usize::MAX,
        });
    }
    let l = i.len();
    if l % 2 == 1 || l == 0 {
        return Ok(if l == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        });
    }
    let wg = weingarten_exact(l / 2, Mode::Numeric(d.clone()))?;
    let ps: Vec<usize> = (0..wg.ordering.len())
        .filter(|&a| refines_kernel(&wg.ordering[a], j))
        .collect();
    let qs: Vec<usize> = (0..wg.ordering.len())
        .filter(|&b| refines_kernel(&wg.ordering[b], i))
        .collect();
    let m = wg.numeric().unwrap();
    Ok(ps
        .iter()
        .flat_map(|&a| qs.iter().map(move |&b| &m[a][b]))
        .sum())
}
