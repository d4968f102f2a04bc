//! The Weingarten graph: orthogonality-relation edges between pairs of
//! pairings, Weingarten subgraphs, geodesic lengths and walk counts.
//!
//! Re-signing `Wg̃(p,q) = (-1)^{k+|p∨q|} Wg(p,q)` turns the relation chosen at a
//! vertex into `Wg̃(v) = d^{-1} Σ_{v→u} Wg̃(u)` with `Wg̃(∅,∅) = 1`, so the
//! coefficient of `d^{-s}` is the number of length-`s` walks from the vertex
//! to the sink.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::decimal_strings;
use crate::nc2::{
    check_same_size, join_block_count, neighbors_via_interval, remove_common_interval, PairVertex,
    Pairing,
};

/// Which coordinate of `(p, q)` the chosen interval belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// The orthogonality relation taken at the interval `{t, t+1}` of one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationChoice {
    pub side: Side,
    pub t: usize,
}

/// Deterministic rules for picking one relation per vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    /// Smallest common interval on the first side, else the smallest interval of `p`.
    #[default]
    A,
    /// Largest common interval on the second side, else the largest interval of `q`.
    B,
}

impl Policy {
    pub fn choose(self, p: &Pairing, q: &Pairing) -> RelationChoice {
        let common: Vec<usize> = p
            .interval_positions()
            .into_iter()
            .filter(|&t| q.has_interval(t))
            .collect();
        match self {
            Policy::A => RelationChoice {
                side: Side::First,
                t: common
                    .first()
                    .copied()
                    .unwrap_or_else(|| p.interval_positions()[0]),
            },
            Policy::B => RelationChoice {
                side: Side::Second,
                t: common
                    .last()
                    .copied()
                    .unwrap_or_else(|| *q.interval_positions().last().unwrap()),
            },
        }
    }
}

impl std::str::FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Policy::A),
            "B" | "b" => Ok(Policy::B),
            _ => Err(Error::Parse(format!(
                "unknown policy {s:?}, expected A or B"
            ))),
        }
    }
}

/// Targets of the edges produced by one orthogonality relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEdges {
    /// Vertices of the same half-size, one per non-crossing neighbour.
    pub same_level: Vec<PairVertex>,
    /// The common-interval removal, present iff `{t,t+1}` is a block of both.
    pub reduction: Option<PairVertex>,
}

impl RelationEdges {
    pub fn targets(&self) -> impl Iterator<Item = &PairVertex> {
        self.same_level.iter().chain(self.reduction.as_ref())
    }
}

pub fn relation_edges(v: &PairVertex, c: RelationChoice) -> Result<RelationEdges> {
    let PairVertex::Pair(p, q) = v else {
        return Err(Error::InvalidChoice("the sink has no relations".into()));
    };
    let (own, other) = match c.side {
        Side::First => (p, q),
        Side::Second => (q, p),
    };
    if !own.has_interval(c.t) {
        return Err(Error::InvalidChoice(format!(
            "{{{},{}}} is not a block of {own}",
            c.t,
            c.t + 1
        )));
    }
    let same_level = neighbors_via_interval(own, c.t)?
        .into_iter()
        .map(|n| match c.side {
            Side::First => PairVertex::Pair(n, q.clone()),
            Side::Second => PairVertex::Pair(p.clone(), n),
        })
        .collect();
    let reduction = other
        .has_interval(c.t)
        .then(|| remove_common_interval(p, q, c.t))
        .transpose()?;
    Ok(RelationEdges {
        same_level,
        reduction,
    })
}

/// Every out-neighbour of `v` in the full Weingarten graph.
pub fn full_graph_edges(v: &PairVertex) -> Vec<PairVertex> {
    let PairVertex::Pair(p, q) = v else {
        return Vec::new();
    };
    let mut out = BTreeSet::new();
    for t in p.interval_positions() {
        for n in neighbors_via_interval(p, t).expect("t is an interval of p") {
            out.insert(PairVertex::Pair(n, q.clone()));
        }
        if q.has_interval(t) {
            out.insert(remove_common_interval(p, q, t).expect("common interval"));
        }
    }
    for t in q.interval_positions() {
        for n in neighbors_via_interval(q, t).expect("t is an interval of q") {
            out.insert(PairVertex::Pair(p.clone(), n));
        }
    }
    out.into_iter().collect()
}

/// Shortest directed distance to the sink in the full graph `𝒢`.
pub fn full_graph_distance(p: &Pairing, q: &Pairing) -> Result<usize> {
    check_same_size(p, q)?;
    let root = PairVertex::Pair(p.clone(), q.clone());
    let mut adjacency = BTreeMap::new();
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(v) = queue.pop_front() {
        if adjacency.contains_key(&v) {
            continue;
        }
        let out = full_graph_edges(&v);
        queue.extend(out.iter().filter(|u| !adjacency.contains_key(*u)).cloned());
        adjacency.insert(v, out);
    }
    Ok(distances_to_sink(&adjacency)[&root])
}

/// Reverse breadth-first search from the sink.
fn distances_to_sink(
    adjacency: &BTreeMap<PairVertex, Vec<PairVertex>>,
) -> BTreeMap<PairVertex, usize> {
    let mut reverse: BTreeMap<&PairVertex, Vec<&PairVertex>> = BTreeMap::new();
    for (v, outs) in adjacency {
        for u in outs {
            reverse.entry(u).or_default().push(v);
        }
    }
    let mut dist = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(PairVertex::Empty, 0);
    queue.push_back(&PairVertex::Empty);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in reverse.get(u).map(Vec::as_slice).unwrap_or_default() {
            if !dist.contains_key(v) {
                dist.insert(v.clone(), du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Memoized per-vertex relation choices and out-edges under one policy,
/// shared by every root that reaches the same vertices.
#[derive(Debug, Default)]
pub struct SubgraphBuilder {
    policy: Policy,
    nodes: HashMap<PairVertex, (RelationChoice, Vec<PairVertex>)>,
}

impl SubgraphBuilder {
    pub fn new(policy: Policy) -> Self {
        Self {
            policy,
            nodes: HashMap::new(),
        }
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    fn node(&mut self, v: &PairVertex) -> &(RelationChoice, Vec<PairVertex>) {
        if !self.nodes.contains_key(v) {
            let PairVertex::Pair(p, q) = v else {
                unreachable!("the sink is never expanded")
            };
            let choice = self.policy.choose(p, q);
            let edges = relation_edges(v, choice).expect("policies only pick valid intervals");
            self.nodes
                .insert(v.clone(), (choice, edges.targets().cloned().collect()));
        }
        &self.nodes[v]
    }

    /// Breadth-first closure from `(p, q)`.
    pub fn build(&mut self, p: &Pairing, q: &Pairing) -> Result<WeingartenSubgraph> {
        check_same_size(p, q)?;
        let root = PairVertex::Pair(p.clone(), q.clone());
        let mut choice = BTreeMap::new();
        let mut adjacency = BTreeMap::new();
        let mut queue = VecDeque::from([root.clone()]);
        adjacency.insert(PairVertex::Empty, Vec::new());
        while let Some(v) = queue.pop_front() {
            if adjacency.contains_key(&v) {
                continue;
            }
            let (c, outs) = self.node(&v).clone();
            queue.extend(outs.iter().filter(|u| !adjacency.contains_key(*u)).cloned());
            choice.insert(v.clone(), c);
            adjacency.insert(v, outs);
        }
        Ok(WeingartenSubgraph {
            root,
            policy: Some(self.policy),
            choice,
            adjacency,
        })
    }
}

/// The component of a Weingarten subgraph reachable from a root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeingartenSubgraph {
    root: PairVertex,
    policy: Option<Policy>,
    choice: BTreeMap<PairVertex, RelationChoice>,
    adjacency: BTreeMap<PairVertex, Vec<PairVertex>>,
}

impl WeingartenSubgraph {
    pub fn root(&self) -> &PairVertex {
        &self.root
    }

    /// `None` when the subgraph was built from an explicit choice function.
    pub fn policy(&self) -> Option<Policy> {
        self.policy
    }

    /// All vertices including the sink, in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = &PairVertex> {
        self.adjacency.keys()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(Vec::len).sum()
    }

    pub fn choice(&self, v: &PairVertex) -> Option<RelationChoice> {
        self.choice.get(v).copied()
    }

    pub fn out_edges(&self, v: &PairVertex) -> &[PairVertex] {
        self.adjacency.get(v).map(Vec::as_slice).unwrap_or_default()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&PairVertex, &PairVertex)> {
        self.adjacency
            .iter()
            .flat_map(|(v, outs)| outs.iter().map(move |u| (v, u)))
    }

    /// Distance to the sink for every vertex of the component.
    pub fn distances(&self) -> BTreeMap<PairVertex, usize> {
        distances_to_sink(&self.adjacency)
    }

    pub fn geodesic_length(&self) -> usize {
        self.distances()[&self.root]
    }

    /// `w_s(root)` for `s = 0..=max_len`: the number of walks of length `s`
    /// from the root to the sink.
    pub fn walk_counts(&self, max_len: usize) -> Vec<BigUint> {
        let index: HashMap<&PairVertex, usize> = self
            .adjacency
            .keys()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let outs: Vec<Vec<usize>> = self
            .adjacency
            .values()
            .map(|o| o.iter().map(|u| index[u]).collect())
            .collect();
        let root = index[&self.root];
        let mut w = vec![BigUint::zero(); outs.len()];
        w[index[&PairVertex::Empty]] = BigUint::one();
        let mut counts = vec![w[root].clone()];
        for _ in 0..max_len {
            w = outs
                .iter()
                .map(|o| o.iter().fold(BigUint::zero(), |acc, &u| acc + &w[u]))
                .collect();
            counts.push(w[root].clone());
        }
        counts
    }
}

pub fn build_subgraph(p: &Pairing, q: &Pairing, policy: Policy) -> Result<WeingartenSubgraph> {
    SubgraphBuilder::new(policy).build(p, q)
}

/// Builds the component of `(p, q)` with the relation at each vertex given by
/// `choose`, which must return an interval of the named side.
pub fn build_subgraph_by<F>(p: &Pairing, q: &Pairing, mut choose: F) -> Result<WeingartenSubgraph>
where
    F: FnMut(&Pairing, &Pairing) -> RelationChoice,
{
    check_same_size(p, q)?;
    let root = PairVertex::Pair(p.clone(), q.clone());
    let mut choice = BTreeMap::new();
    let mut adjacency = BTreeMap::from([(PairVertex::Empty, Vec::new())]);
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(v) = queue.pop_front() {
        if adjacency.contains_key(&v) {
            continue;
        }
        let PairVertex::Pair(a, b) = &v else {
            unreachable!("the sink is seeded first")
        };
        let c = choose(a, b);
        let outs: Vec<PairVertex> = relation_edges(&v, c)?.targets().cloned().collect();
        queue.extend(outs.iter().filter(|u| !adjacency.contains_key(*u)).cloned());
        choice.insert(v.clone(), c);
        adjacency.insert(v, outs);
    }
    Ok(WeingartenSubgraph {
        root,
        policy: None,
        choice,
        adjacency,
    })
}

/// `L(p, q)`, the length of a shortest directed path from `(p, q)` to the sink.
pub fn geodesic_length(p: &Pairing, q: &Pairing) -> Result<usize> {
    Ok(build_subgraph(p, q, Policy::A)?.geodesic_length())
}

/// Sign, geodesic length and walk counts of the Laurent expansion
/// `Wg_d(p,q) = sign · Σ_r m_r d^{-L-2r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentData {
    pub k: usize,
    pub p: Pairing,
    pub q: Pairing,
    pub sign: i8,
    #[serde(rename = "L")]
    pub length: usize,
    #[serde(with = "decimal_strings")]
    pub m: Vec<BigUint>,
}

impl LaurentData {
    /// Coefficient of `d^{-e}`, with sign, for `e` inside the computed window.
    pub fn signed_coeff(&self, e: usize) -> Option<BigInt> {
        let last = self.length + 2 * (self.m.len() - 1);
        if e > last {
            return None;
        }
        if e < self.length || (e - self.length) % 2 == 1 {
            return Some(BigInt::zero());
        }
        let m = BigInt::from(self.m[(e - self.length) / 2].clone());
        Some(if self.sign < 0 { -m } else { m })
    }
}

pub fn laurent_series(
    p: &Pairing,
    q: &Pairing,
    r_max: usize,
    policy: Policy,
) -> Result<LaurentData> {
    laurent_series_with(&mut SubgraphBuilder::new(policy), p, q, r_max)
}

/// [`laurent_series`] reusing the memoized subgraph of `builder`.
pub fn laurent_series_with(
    builder: &mut SubgraphBuilder,
    p: &Pairing,
    q: &Pairing,
    r_max: usize,
) -> Result<LaurentData> {
    let g = builder.build(p, q)?;
    let k = p.k();
    let joins = join_block_count(p, q)?;
    let sign = if (joins + k).is_multiple_of(2) { 1 } else { -1 };
    let length = g.geodesic_length();
    let counts = g.walk_counts(length + 2 * r_max + 1);
    for (s, c) in counts.iter().enumerate() {
        if (s + length) % 2 == 1 && !c.is_zero() {
            return Err(Error::VerificationFailure(format!(
                "walk of odd offset length {s} from ({p}, {q})"
            )));
        }
    }
    let m = (0..=r_max)
        .map(|r| counts[length + 2 * r].clone())
        .collect();
    Ok(LaurentData {
        k,
        p: p.clone(),
        q: q.clone(),
        sign,
        length,
        m,
    })
}

/// Exact partial sum `sign · Σ_{r ≤ r_max} m_r d^{-L-2r}`, for `|d| >= 2`.
pub fn evaluate_series(s: &LaurentData, d: &BigRational, r_max: usize) -> Result<BigRational> {
    if d.abs() < BigRational::from_integer(2.into()) {
        return Err(Error::OutsideConvergenceRegion(d.to_string()));
    }
    if r_max >= s.m.len() {
        return Err(Error::IndexOutOfRange {
            index: r_max,
            max: s.m.len() - 1,
        });
    }
    let inv = d.recip();
    let inv2 = &inv * &inv;
    let mut power = num_traits::pow(inv, s.length);
    let mut sum = BigRational::zero();
    for m in &s.m[..=r_max] {
        sum += &power * BigRational::from_integer(BigInt::from(m.clone()));
        power *= &inv2;
    }
    Ok(if s.sign < 0 { -sum } else { sum })
}

fn choice_label(v: &PairVertex, c: RelationChoice) -> String {
    let side = match c.side {
        Side::First => "p",
        Side::Second => "q",
    };
    let common = match v {
        PairVertex::Pair(p, q) => p.has_interval(c.t) && q.has_interval(c.t),
        PairVertex::Empty => false,
    };
    format!(
        "*{side}{{{},{}}}{}",
        c.t,
        c.t + 1,
        if common { " common" } else { "" }
    )
}

/// Graphviz rendering of the component; every edge is tagged with the starred
/// interval of the relation that produced it.
pub fn export_dot(g: &WeingartenSubgraph) -> String {
    let ids: BTreeMap<&PairVertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = String::new();
    writeln!(out, "digraph weingarten {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (v, id) in &ids {
        match v {
            PairVertex::Empty => {
                writeln!(out, "  n{id} [label=\"(∅,∅)\", shape=doublecircle];").unwrap();
            }
            PairVertex::Pair(p, q) => {
                let mut label = format!("{p}\\n{q}");
                if let Some(c) = g.choice(v) {
                    write!(label, "\\n{}", choice_label(v, c)).unwrap();
                }
                let style = if **v == g.root { ", style=bold" } else { "" };
                writeln!(out, "  n{id} [label=\"{label}\"{style}];").unwrap();
            }
        }
    }
    for (v, u) in g.edges() {
        let c = g.choice(v).expect("non-sink vertices carry a choice");
        writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"];",
            ids[v],
            ids[u],
            choice_label(v, c)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
