//! The diagram algebra `TL_k(d)`.
//!
//! Boundary points are labelled clockwise: `1..k` left to right along the top
//! edge and `2k..k+1` left to right along the bottom, so the point below top
//! point `i` is `2k+1-i` and the identity diagram is
//! `{1,2k}{2,2k-1}...{k,k+1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{IntPolynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::nc2::{
    check_same_size, enumerate_nc2_capped, join_block_count, Pairing, DEFAULT_ENUMERATION_CAP,
};
use crate::union_find::UnionFind;

/// `D_p · D_q = d^loops · D_r`, stacking `D_q` on top of `D_p`.
pub fn diagram_multiply(p: &Pairing, q: &Pairing) -> Result<(usize, Pairing)> {
    check_same_size(p, q)?;
    let k = p.k();
    let n = 2 * k;
    // Nodes 0..n are the points of q, n..2n the points of p.
    let mut uf = UnionFind::new(2 * n);
    for (i, &j) in q.raw().iter().enumerate() {
        uf.union(i, j);
    }
    for (i, &j) in p.raw().iter().enumerate() {
        uf.union(n + i, n + j);
    }
    // Column c: bottom point of q (label 2k-c, 0-based) meets top point c of p.
    for c in 0..k {
        uf.union(n - 1 - c, n + c);
    }
    // Free ends: top of q (labels 0..k) and bottom of p (labels k..2k), keeping their labels.
    let free: Vec<usize> = (0..k).chain(n + k..2 * n).collect();
    let mut first_end: BTreeMap<usize, usize> = BTreeMap::new();
    let mut partner = vec![usize::MAX; n];
    for node in free {
        let label = if node < n { node } else { node - n };
        let root = uf.find(node);
        if let Some(other) = first_end.remove(&root) {
            partner[label] = other;
            partner[other] = label;
        } else {
            first_end.insert(root, label);
        }
    }
    debug_assert!(first_end.is_empty());
    let mut roots: Vec<usize> = (0..2 * n).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    let loops = roots.len() - k;
    let r = Pairing::from_partners(&partner.iter().map(|&j| j + 1).collect::<Vec<_>>())
        .expect("composition of planar diagrams is planar");
    Ok((loops, r))
}

/// Turns the diagram upside down: `i -> 2k+1-i`.
pub fn transpose(p: &Pairing) -> Pairing {
    p.reflect()
}

/// The generator `u_i` of `TL_k(d)`, `1 <= i <= k-1`.
pub fn generator_u(i: usize, k: usize) -> Result<Pairing> {
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k.saturating_sub(1),
        });
    }
    let n = 2 * k;
    let mut blocks = vec![(i, i + 1), (n - i, n + 1 - i)];
    blocks.extend(
        (1..=k)
            .filter(|&j| j != i && j != i + 1)
            .map(|j| (j, n + 1 - j)),
    );
    Pairing::from_blocks(&blocks)
}

/// `ι: NC_2(2k) -> NC_2(2k+2)`: adds a through-strand on the right. Top labels
/// stay, the new strand is `{k+1, k+2}` and old bottom labels move up by two.
pub fn add_right_strand(p: &Pairing) -> Pairing {
    let k = p.k();
    let relabel = |x: usize| if x <= k { x } else { x + 2 };
    let mut blocks: Vec<(usize, usize)> = p
        .blocks()
        .into_iter()
        .map(|(a, b)| (relabel(a), relabel(b)))
        .collect();
    blocks.push((k + 1, k + 2));
    Pairing::from_blocks(&blocks).expect("adding a strand keeps the diagram planar")
}

/// An element of `TL_k(d)` in the diagram basis with rational-function
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TLElement {
    k: usize,
    terms: BTreeMap<Pairing, RationalFunction>,
}

impl TLElement {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: &Pairing) -> Self {
        Self::term(p.clone(), RationalFunction::one())
    }

    pub fn term(p: Pairing, c: RationalFunction) -> Self {
        let mut x = Self::zero(p.k());
        x.add_term(p, c);
        x
    }

    pub fn identity(k: usize) -> Self {
        Self::basis(&Pairing::identity(k))
    }

    pub fn from_terms(
        k: usize,
        terms: impl IntoIterator<Item = (Pairing, RationalFunction)>,
    ) -> Result<Self> {
        let mut x = Self::zero(k);
        for (p, c) in terms {
            if p.k() != k {
                return Err(Error::SizeMismatch {
                    left: k,
                    right: p.k(),
                });
            }
            x.add_term(p, c);
        }
        Ok(x)
    }

    /// Adds `c · D_p`; `p` must have half-size `k`.
    pub fn add_term(&mut self, p: Pairing, c: RationalFunction) {
        debug_assert_eq!(p.k(), self.k);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pairing, &RationalFunction)> {
        self.terms.iter()
    }

    /// Number of non-zero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `D_p` (zero if absent).
    pub fn coeff(&self, p: &Pairing) -> RationalFunction {
        self.terms
            .get(p)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-RationalFunction::one()))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        Self {
            k: self.k,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let d = RationalFunction::d();
        let mut grouped: BTreeMap<Pairing, RationalFunction> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (loops, r) = diagram_multiply(p, q)?;
                let mut c = a * b;
                if loops > 0 {
                    c = &c * &d.pow(loops as u32);
                }
                let slot = grouped.entry(r).or_insert_with(RationalFunction::zero);
                *slot = &*slot + &c;
            }
        }
        Self::from_terms(self.k, grouped)
    }

    pub fn transpose(&self) -> Self {
        Self {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.reflect(), c.clone()))
                .collect(),
        }
    }

    /// Applies [`add_right_strand`] to every diagram.
    pub fn add_right_strand(&self) -> Self {
        Self {
            k: self.k + 1,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (add_right_strand(p), c.clone()))
                .collect(),
        }
    }
}

/// Markov trace, the linear extension of `Tr(D_p) = d^{|p ∨ 1|}`.
pub fn markov_trace(x: &TLElement) -> RationalFunction {
    if x.is_zero() {
        return RationalFunction::zero();
    }
    let one = Pairing::identity(x.k());
    x.terms().fold(RationalFunction::zero(), |acc, (p, c)| {
        let loops = join_block_count(p, &one).expect("same half-size");
        &acc + &(c * &RationalFunction::d_pow(loops as i64))
    })
}

/// `⟨x, y⟩ = Tr(xᵗ y)`, computed through the multiplication engine.
pub fn bilinear_form(x: &TLElement, y: &TLElement) -> Result<RationalFunction> {
    Ok(markov_trace(&x.transpose().mul(y)?))
}

/// Gram matrix `d^{|p ∨ q|}` in canonical order, with that ordering.
pub fn gram_matrix(k: usize) -> Result<(Vec<Pairing>, Vec<Vec<IntPolynomial>>)> {
    gram_matrix_capped(k, DEFAULT_ENUMERATION_CAP)
}

pub fn gram_matrix_capped(k: usize, cap: usize) -> Result<(Vec<Pairing>, Vec<Vec<IntPolynomial>>)> {
    let basis = enumerate_nc2_capped(k, cap)?;
    let entries = basis
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|q| {
                    let e = join_block_count(p, q).expect("same half-size");
                    IntPolynomial::monomial(1.into(), e)
                })
                .collect()
        })
        .collect();
    Ok((basis, entries))
}
