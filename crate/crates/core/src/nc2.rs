//! Non-crossing pair partitions of `{1, ..., 2k}`.
//!
//! Every public function speaks 1-based positions; the partner array is
//! stored 0-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default largest half-size accepted by [`enumerate_nc2`] (`C_10 = 16796`).
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// A fixed-point-free, non-crossing involution of `{1, ..., 2k}`.
///
/// The derived ordering is lexicographic on the partner array, which is the
/// canonical indexing order of Gram and Weingarten matrices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    partner: Vec<usize>,
}

impl Pairing {
    /// Builds a pairing from a 1-based partner array, checking every invariant.
    pub fn from_partners(partners: &[usize]) -> Result<Self> {
        let n = partners.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let describe = || format!("{partners:?}");
        if !n.is_multiple_of(2) {
            return Err(Error::NotInvolution(describe()));
        }
        let mut partner = Vec::with_capacity(n);
        for (i, &j) in partners.iter().enumerate() {
            if j == 0 || j > n || j == i + 1 || partners[j - 1] != i + 1 {
                return Err(Error::NotInvolution(describe()));
            }
            partner.push(j - 1);
        }
        let pairing = Self { partner };
        if !pairing.is_non_crossing() {
            return Err(Error::NotNonCrossing(pairing.to_string()));
        }
        Ok(pairing)
    }

    /// Builds a pairing from a list of 1-based blocks.
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Result<Self> {
        let n = 2 * blocks.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut partners = vec![0usize; n];
        for &(a, b) in blocks {
            let bad = || Error::NotInvolution(format!("{blocks:?}"));
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(bad());
            }
            if partners[a - 1] != 0 || partners[b - 1] != 0 {
                return Err(bad());
            }
            partners[a - 1] = b;
            partners[b - 1] = a;
        }
        Self::from_partners(&partners)
    }

    /// Skips validation; callers guarantee a non-crossing involution.
    fn from_raw(partner: Vec<usize>) -> Self {
        debug_assert!(Self::check_raw(&partner));
        Self { partner }
    }

    fn check_raw(partner: &[usize]) -> bool {
        partner
            .iter()
            .enumerate()
            .all(|(i, &j)| j != i && j < partner.len() && partner[j] == i)
            && Self::raw_non_crossing(partner)
    }

    /// The nested pairing `{1,2k}{2,2k-1}...{k,k+1}`, i.e. the identity diagram.
    pub fn identity(k: usize) -> Self {
        assert!(k > 0, "half-size must be positive");
        let n = 2 * k;
        Self::from_raw((0..n).map(|i| n - 1 - i).collect())
    }

    /// The interval pairing `{1,2}{3,4}...{2k-1,2k}`.
    pub fn intervals(k: usize) -> Self {
        assert!(k > 0, "half-size must be positive");
        Self::from_raw((0..2 * k).map(|i| i ^ 1).collect())
    }

    pub fn k(&self) -> usize {
        self.partner.len() / 2
    }

    /// Number of points, `2k`.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Partner of the 1-based position `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i - 1] + 1
    }

    /// The 1-based partner array.
    pub fn partners(&self) -> Vec<usize> {
        self.partner.iter().map(|&j| j + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.partner
    }

    /// Blocks `(a, b)` with `a < b`, sorted by `a`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i + 1, j + 1))
            .collect()
    }

    /// Whether `{t, t+1}` is a block.
    pub fn has_interval(&self, t: usize) -> bool {
        t >= 1 && t < self.len() && self.partner[t - 1] == t
    }

    /// All `t` such that `{t, t+1}` is a block, ascending.
    pub fn interval_positions(&self) -> Vec<usize> {
        (1..self.len()).filter(|&t| self.has_interval(t)).collect()
    }

    fn is_non_crossing(&self) -> bool {
        Self::raw_non_crossing(&self.partner)
    }

    fn raw_non_crossing(partner: &[usize]) -> bool {
        // Matched parentheses: a closing point must match the innermost open one.
        let mut open = Vec::with_capacity(partner.len() / 2);
        for (i, &j) in partner.iter().enumerate() {
            if i < j {
                open.push(i);
            } else if open.pop() != Some(j) {
                return false;
            }
        }
        open.is_empty()
    }

    /// Image under `i -> 2k+1-i` (turning the diagram upside down).
    pub fn reflect(&self) -> Self {
        let n = self.len();
        Self::from_raw((0..n).map(|i| n - 1 - self.partner[n - 1 - i]).collect())
    }

    /// Deletes positions `t, t+1` (which must form a block) and relabels the
    /// points above them down by two. `None` when nothing is left.
    pub fn remove_interval(&self, t: usize) -> Result<Option<Self>> {
        if !self.has_interval(t) {
            return Err(Error::NotAnInterval {
                pairing: self.to_string(),
                t,
            });
        }
        if self.k() == 1 {
            return Ok(None);
        }
        let cut = t - 1;
        let shift = |x: usize| if x > cut + 1 { x - 2 } else { x };
        let partner = self
            .partner
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != cut && i != cut + 1)
            .map(|(_, &j)| shift(j))
            .collect();
        Ok(Some(Self::from_raw(partner)))
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.blocks() {
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing({self})")
    }
}

/// Parses the canonical block format, e.g. `"{1,4}{2,3}"`; block order and
/// whitespace are free.
pub fn parse_pairing(text: &str) -> Result<Pairing> {
    let mut blocks = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| Error::Parse(format!("expected '{{' at {rest:?}")))?;
        let close = body
            .find('}')
            .ok_or_else(|| Error::Parse(format!("unterminated block in {text:?}")))?;
        let mut parts = body[..close].split(',');
        let mut next = || -> Result<usize> {
            let item = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("block needs two points in {text:?}")))?;
            item.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad point {item:?} in {text:?}")))
        };
        let a = next()?;
        let b = next()?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!(
                "block with more than two points in {text:?}"
            )));
        }
        blocks.push((a, b));
        rest = body[close + 1..].trim_start();
    }
    Pairing::from_blocks(&blocks)
}

pub fn format_pairing(p: &Pairing) -> String {
    p.to_string()
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pairing(s)
    }
}

impl Serialize for Pairing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pairing {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_pairing(&text).map_err(serde::de::Error::custom)
    }
}

/// A vertex of the Weingarten graph: the sink `(∅, ∅)` or a pair of
/// pairings of equal half-size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PairVertex {
    Empty,
    Pair(Pairing, Pairing),
}

impl PairVertex {
    pub fn new(p: Pairing, q: Pairing) -> Result<Self> {
        check_same_size(&p, &q)?;
        Ok(Self::Pair(p, q))
    }

    pub fn k(&self) -> usize {
        match self {
            Self::Empty => 0,
            Self::Pair(p, _) => p.k(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    /// `|p ∨ q|`, with `|∅ ∨ ∅| = 0`.
    pub fn join_blocks(&self) -> usize {
        match self {
            Self::Empty => 0,
            Self::Pair(p, q) => join_count_unchecked(p, q),
        }
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "(∅,∅)"),
            Self::Pair(p, q) => write!(f, "({p}, {q})"),
        }
    }
}

pub(crate) fn check_same_size(p: &Pairing, q: &Pairing) -> Result<()> {
    if p.k() != q.k() {
        return Err(Error::SizeMismatch {
            left: p.k(),
            right: q.k(),
        });
    }
    Ok(())
}

/// All of `NC_2(2k)` in canonical order, with the default cap.
pub fn enumerate_nc2(k: usize) -> Result<Vec<Pairing>> {
    enumerate_nc2_capped(k, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nc2_capped(k: usize, cap: usize) -> Result<Vec<Pairing>> {
    if k == 0 {
        return Err(Error::ZeroSize);
    }
    if k > cap {
        return Err(Error::SizeLimitExceeded { k, cap });
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; 2 * k];
    fill(&mut partner, 0, &mut out);
    out.sort();
    Ok(out)
}

fn fill(partner: &mut [usize], start: usize, out: &mut Vec<Pairing>) {
    let Some(i) = (start..partner.len()).find(|&i| partner[i] == usize::MAX) else {
        out.push(Pairing::from_raw(partner.to_vec()));
        return;
    };
    // i closes with some j before the next already-matched point, so the
    // points strictly between them can only pair among themselves.
    for j in i + 1..partner.len() {
        if partner[j] != usize::MAX {
            break;
        }
        if (j - i) % 2 == 1 {
            partner[i] = j;
            partner[j] = i;
            fill(partner, i + 1, out);
            partner[i] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
}

fn join_count_unchecked(p: &Pairing, q: &Pairing) -> usize {
    let (p, q) = (p.raw(), q.raw());
    let mut seen = vec![false; p.len()];
    let mut blocks = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        blocks += 1;
        let mut i = start;
        loop {
            seen[i] = true;
            let j = p[i];
            seen[j] = true;
            i = q[j];
            if i == start {
                break;
            }
        }
    }
    blocks
}

/// `|p ∨ q|`: components of the union graph of the two matchings.
pub fn join_block_count(p: &Pairing, q: &Pairing) -> Result<usize> {
    check_same_size(p, q)?;
    Ok(join_count_unchecked(p, q))
}

/// Non-crossing neighbours of `p` obtained by joining the interval `{t,t+1}`
/// to another block and re-splitting the four points the other planar way.
pub fn neighbors_via_interval(p: &Pairing, t: usize) -> Result<Vec<Pairing>> {
    if !p.has_interval(t) {
        return Err(Error::NotAnInterval {
            pairing: p.to_string(),
            t,
        });
    }
    let (a, b) = (t - 1, t);
    let base = p.raw();
    let mut found = BTreeSet::new();
    for x in 0..base.len() {
        let y = base[x];
        if x == a || x == b || x > y {
            continue;
        }
        for (u, v) in [(x, y), (y, x)] {
            let mut partner = base.to_vec();
            partner[a] = u;
            partner[u] = a;
            partner[b] = v;
            partner[v] = b;
            if Pairing::raw_non_crossing(&partner) {
                found.insert(Pairing::from_raw(partner));
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Removes the common interval `{t,t+1}` from both pairings.
pub fn remove_common_interval(p: &Pairing, q: &Pairing, t: usize) -> Result<PairVertex> {
    check_same_size(p, q)?;
    if !(p.has_interval(t) && q.has_interval(t)) {
        return Err(Error::NotCommonInterval {
            p: p.to_string(),
            q: q.to_string(),
            t,
        });
    }
    Ok(match (p.remove_interval(t)?, q.remove_interval(t)?) {
        (Some(p), Some(q)) => PairVertex::Pair(p, q),
        _ => PairVertex::Empty,
    })
}

/// `C_k = (2k)! / (k! (k+1)!)`, computed by the recurrence
/// `C_{k+1} = C_k * 2(2k+1) / (k+2)`.
pub fn catalan(k: usize) -> u128 {
    (0..k as u128).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(s: &str) -> Pairing {
        parse_pairing(s).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_nc2(1).unwrap(), vec![pr("{1,2}")]);
        assert_eq!(enumerate_nc2(3).unwrap().len(), 5);
        for k in 1..=8 {
            let all = enumerate_nc2(k).unwrap();
            assert_eq!(all.len() as u128, catalan(k), "k={k}");
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(catalan(8), 1430);
        assert_eq!(
            enumerate_nc2(11),
            Err(Error::SizeLimitExceeded { k: 11, cap: 10 })
        );
        assert_eq!(enumerate_nc2(0), Err(Error::ZeroSize));
    }

    #[test]
    fn parse_and_format() {
        let p = pr("{1,4}{2,3}");
        assert_eq!(p.partners(), vec![4, 3, 2, 1]);
        assert_eq!(format_pairing(&pr("{2,3}{1,4}")), "{1,4}{2,3}");
        assert!(matches!(
            parse_pairing("{1,3}{2,4}"),
            Err(Error::NotNonCrossing(_))
        ));
        assert!(matches!(
            parse_pairing("{1,2}{1,3}"),
            Err(Error::NotInvolution(_))
        ));
        assert!(matches!(
            parse_pairing("{1,1}"),
            Err(Error::NotInvolution(_))
        ));
        assert!(matches!(parse_pairing("{1,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_pairing("1,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_pairing("{1,2,3}"), Err(Error::Parse(_))));
        assert!(matches!(parse_pairing(""), Err(Error::Parse(_))));
        assert_eq!(pr(" {1,2} { 3 , 4 } "), Pairing::intervals(2));
    }

    #[test]
    fn join_counts() {
        let p = pr("{1,2}{3,4}");
        let q = pr("{1,4}{2,3}");
        assert_eq!(join_block_count(&p, &p).unwrap(), 2);
        assert_eq!(join_block_count(&p, &q).unwrap(), 1);
        let p = pr("{1,6}{2,5}{3,4}{7,8}");
        let q = pr("{1,2}{3,8}{4,7}{5,6}");
        assert_eq!(join_block_count(&p, &q).unwrap(), 2);
        assert!(matches!(
            join_block_count(&pr("{1,2}"), &p),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn neighbors() {
        let p = pr("{1,2}{3,4}{5,6}");
        assert_eq!(
            neighbors_via_interval(&p, 1).unwrap()[0],
            pr("{1,4}{2,3}{5,6}")
        );
        let all: BTreeSet<_> = p
            .interval_positions()
            .into_iter()
            .flat_map(|t| neighbors_via_interval(&p, t).unwrap())
            .collect();
        assert!(all.contains(&pr("{1,6}{2,5}{3,4}")));

        assert_eq!(
            neighbors_via_interval(&pr("{1,2}{3,4}"), 1).unwrap(),
            vec![pr("{1,4}{2,3}")]
        );
        assert!(neighbors_via_interval(&pr("{1,2}"), 1).unwrap().is_empty());
        assert!(matches!(
            neighbors_via_interval(&pr("{1,4}{2,3}"), 1),
            Err(Error::NotAnInterval { .. })
        ));
    }

    #[test]
    fn common_interval_removal() {
        let q = pr("{1,4}{2,3}");
        assert_eq!(
            remove_common_interval(&q, &q, 2).unwrap(),
            PairVertex::Pair(pr("{1,2}"), pr("{1,2}"))
        );
        let one = pr("{1,2}");
        assert_eq!(
            remove_common_interval(&one, &one, 1).unwrap(),
            PairVertex::Empty
        );
        assert_eq!(
            remove_common_interval(&pr("{1,2}{3,6}{4,5}"), &pr("{1,2}{3,4}{5,6}"), 1).unwrap(),
            PairVertex::Pair(pr("{1,4}{2,3}"), pr("{1,2}{3,4}"))
        );
        assert!(matches!(
            remove_common_interval(&pr("{1,2}{3,4}"), &q, 1),
            Err(Error::NotCommonInterval { .. })
        ));
    }

    #[test]
    fn reflection() {
        assert_eq!(pr("{1,2}{3,6}{4,5}").reflect(), pr("{1,4}{2,3}{5,6}"));
        for k in 1..=4 {
            assert_eq!(Pairing::identity(k).reflect(), Pairing::identity(k));
        }
    }
}
