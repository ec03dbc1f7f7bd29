//! Cayley graphs, Cayley sum graphs and the pair multigraph `M(G, S×S)` as
//! dense integer count matrices.
//!
//! A loop unit at `v` adds exactly one to row `v`, so every builder produces a
//! `d`-regular matrix and `counts / d` is row-stochastic.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{ElementSet, FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("NotSymmetric: {witness} is in S but its inverse {inverse} is not")]
    NotSymmetric { witness: usize, inverse: usize },
    #[error("ContainsIdentity: S contains the identity {identity}")]
    ContainsIdentity { identity: usize },
    #[error("NotConjugationClosed: {conjugator}·{element}·{conjugator}^-1 = {image} is not in S")]
    NotConjugationClosed {
        element: usize,
        conjugator: usize,
        image: usize,
    },
    #[error("NotGenerating: S generates a subgroup of order {generated} < {order}")]
    NotGenerating { generated: usize, order: usize },
    #[error("S is empty")]
    EmptySet,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid count matrix: {0}")]
    InvalidCounts(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Cayley,
    CayleySum,
    PairMultigraph,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Cayley => "cayley",
            GraphKind::CayleySum => "cayley_sum",
            GraphKind::PairMultigraph => "pair_multigraph",
        })
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "cayley" => Ok(GraphKind::Cayley),
            "cayley_sum" | "sum" => Ok(GraphKind::CayleySum),
            "pair_multigraph" => Ok(GraphKind::PairMultigraph),
            other => Err(GraphError::Parse(format!("unknown graph kind `{other}`"))),
        }
    }
}

/// A validated symmetric, identity-free generating set with its structural flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSet {
    elements: ElementSet,
    symmetric: bool,
    identity_free: bool,
    conjugation_closed: bool,
    generates: bool,
    minimal: bool,
}

impl GeneratingSet {
    /// Computes every flag and rejects sets that are not symmetric, contain
    /// the identity, do not generate, or (when requested) are not closed under
    /// conjugation.
    pub fn validate(
        group: &FiniteGroup,
        set: &ElementSet,
        require_conjugation_closed: bool,
    ) -> Result<Self, GraphError> {
        group.check_set(set)?;
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if let Some(witness) = group.symmetry_witness(set) {
            return Err(GraphError::NotSymmetric {
                witness,
                inverse: group.inv(witness),
            });
        }
        if set.contains(group.identity()) {
            return Err(GraphError::ContainsIdentity {
                identity: group.identity(),
            });
        }
        let conj = group.conjugation_witness(set);
        if require_conjugation_closed {
            if let Some((element, conjugator)) = conj {
                return Err(GraphError::NotConjugationClosed {
                    element,
                    conjugator,
                    image: group.conjugate(element, conjugator),
                });
            }
        }
        let generated = group.subgroup_closure(set).len();
        if generated != group.order() {
            return Err(GraphError::NotGenerating {
                generated,
                order: group.order(),
            });
        }
        let minimal = group.minimal_generating_check(set)?;
        Ok(GeneratingSet {
            elements: set.clone(),
            symmetric: true,
            identity_free: true,
            conjugation_closed: conj.is_none(),
            generates: true,
            minimal,
        })
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn identity_free(&self) -> bool {
        self.identity_free
    }

    pub fn conjugation_closed(&self) -> bool {
        self.conjugation_closed
    }

    pub fn generates(&self) -> bool {
        self.generates
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    /// Recomputes every flag from scratch and compares.
    pub fn flags_consistent(&self, group: &FiniteGroup) -> bool {
        let s = &self.elements;
        self.symmetric == group.is_symmetric(s)
            && self.identity_free == !s.contains(group.identity())
            && self.conjugation_closed == group.is_conjugation_closed(s)
            && self.generates == group.generates(s)
            && Ok(self.minimal) == group.minimal_generating_check(s)
    }
}

/// `d`-regular undirected multigraph stored as an `n×n` count matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountGraph {
    n: usize,
    d: usize,
    counts: Vec<u32>,
    kind: GraphKind,
}

impl CountGraph {
    /// Wraps a raw row-major count matrix after checking the invariants.
    pub fn from_counts(
        n: usize,
        d: usize,
        counts: Vec<u32>,
        kind: GraphKind,
    ) -> Result<Self, GraphError> {
        if counts.len() != n * n {
            return Err(GraphError::InvalidCounts(format!(
                "expected {} entries, found {}",
                n * n,
                counts.len()
            )));
        }
        let g = CountGraph { n, d, counts, kind };
        g.check_invariants()?;
        Ok(g)
    }

    pub fn check_invariants(&self) -> Result<(), GraphError> {
        if self.d == 0 {
            return Err(GraphError::InvalidCounts("degree must be positive".into()));
        }
        for u in 0..self.n {
            let mut sum = 0usize;
            for v in 0..self.n {
                let c = self.count(u, v);
                if c != self.count(v, u) {
                    return Err(GraphError::InvalidCounts(format!(
                        "counts[{u}][{v}] = {c} but counts[{v}][{u}] = {}",
                        self.count(v, u)
                    )));
                }
                if c as usize > self.d {
                    return Err(GraphError::InvalidCounts(format!(
                        "counts[{u}][{v}] = {c} exceeds the degree {}",
                        self.d
                    )));
                }
                sum += c as usize;
            }
            if sum != self.d {
                return Err(GraphError::InvalidCounts(format!(
                    "row {u} sums to {sum}, expected {}",
                    self.d
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    #[inline]
    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.counts[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.counts[u * self.n..(u + 1) * self.n]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn loop_total(&self) -> u64 {
        (0..self.n).map(|v| self.count(v, v) as u64).sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.count(v, v) > 0)
    }

    /// Integer matrix square of the count matrix.
    pub fn square_counts(&self) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for u in 0..n {
            for k in 0..n {
                let a = self.count(u, k) as u64;
                if a == 0 {
                    continue;
                }
                for v in 0..n {
                    out[u * n + v] += a * self.count(k, v) as u64;
                }
            }
        }
        out
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for (v, &c) in self.row(u).iter().enumerate() {
                if !seen[v] && c > 0 {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    /// Breadth-first 2-colouring; any loop makes the graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for (v, &c) in self.row(u).iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Text form: a header line `n d kind`, then one row of counts per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.d, self.kind);
        for u in 0..self.n {
            let row: Vec<String> = self.row(u).iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, d, kind] = fields.as_slice() else {
            return Err(GraphError::Parse(format!("bad header `{header}`")));
        };
        let n: usize = n.parse().map_err(|_| GraphError::Parse(format!("bad n `{n}`")))?;
        let d: usize = d.parse().map_err(|_| GraphError::Parse(format!("bad d `{d}`")))?;
        let kind: GraphKind = kind.parse()?;
        let mut counts = Vec::with_capacity(n * n);
        for line in lines {
            for tok in line.split_whitespace() {
                counts.push(
                    tok.parse::<u32>()
                        .map_err(|_| GraphError::Parse(format!("bad count `{tok}`")))?,
                );
            }
        }
        Self::from_counts(n, d, counts, kind)
    }
}

/// Counts of the directed relation `g -> g^-1 s` for an arbitrary set `S`,
/// without any validation. Symmetric iff `S` is closed under conjugation
/// (for symmetric `S`).
pub fn directed_sum_counts(group: &FiniteGroup, set: &ElementSet) -> Vec<u32> {
    let n = group.order();
    let mut counts = vec![0u32; n * n];
    for g in 0..n {
        let gi = group.inv(g);
        for s in set.iter() {
            counts[g * n + group.mul(gi, s)] += 1;
        }
    }
    counts
}

pub fn is_symmetric_matrix(n: usize, counts: &[u32]) -> bool {
    (0..n).all(|u| (0..u).all(|v| counts[u * n + v] == counts[v * n + u]))
}

/// `C(G, S)`: `g` is joined to `g s` for every `s` in `S`.
pub fn build_cayley(group: &FiniteGroup, gens: &GeneratingSet) -> CountGraph {
    let n = group.order();
    let mut counts = vec![0u32; n * n];
    for g in 0..n {
        for s in gens.elements().iter() {
            counts[g * n + group.mul(g, s)] += 1;
        }
    }
    CountGraph {
        n,
        d: gens.degree(),
        counts,
        kind: GraphKind::Cayley,
    }
}

fn require_conjugation_closed(group: &FiniteGroup, gens: &GeneratingSet) -> Result<(), GraphError> {
    match group.conjugation_witness(gens.elements()) {
        Some((element, conjugator)) => Err(GraphError::NotConjugationClosed {
            element,
            conjugator,
            image: group.conjugate(element, conjugator),
        }),
        None => Ok(()),
    }
}

/// `C_Σ(G, S)`: `g` is joined to `g^-1 s`; when `g^-1 s = g` this is a loop
/// unit at `g`.
pub fn build_cayley_sum(group: &FiniteGroup, gens: &GeneratingSet) -> Result<CountGraph, GraphError> {
    if !gens.conjugation_closed() {
        require_conjugation_closed(group, gens)?;
    }
    Ok(CountGraph {
        n: group.order(),
        d: gens.degree(),
        counts: directed_sum_counts(group, gens.elements()),
        kind: GraphKind::CayleySum,
    })
}

/// `M(G, S×S)`: one edge `g ~ s g t` per ordered pair `(s, t)`, kept with
/// multiplicity. Its normalised adjacency matrix is the square of the sum
/// graph's.
pub fn build_pair_multigraph(
    group: &FiniteGroup,
    gens: &GeneratingSet,
) -> Result<CountGraph, GraphError> {
    if !gens.conjugation_closed() {
        require_conjugation_closed(group, gens)?;
    }
    let n = group.order();
    let mut counts = vec![0u32; n * n];
    for g in 0..n {
        for s in gens.elements().iter() {
            let sg = group.mul(s, g);
            for t in gens.elements().iter() {
                counts[g * n + group.mul(sg, t)] += 1;
            }
        }
    }
    Ok(CountGraph {
        n,
        d: gens.degree() * gens.degree(),
        counts,
        kind: GraphKind::PairMultigraph,
    })
}

/// Normalised adjacency matrix `T = counts / d`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedOperator {
    n: usize,
    entries: Vec<f64>,
}

impl NormalizedOperator {
    /// Wraps a raw row-major matrix; used for operators not built from a graph.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be n×n");
        NormalizedOperator { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    pub fn is_row_stochastic(&self, tol: f64) -> bool {
        (0..self.n).all(|i| ((0..self.n).map(|j| self.get(i, j)).sum::<f64>() - 1.0).abs() <= tol)
    }
}

pub fn normalized(graph: &CountGraph) -> NormalizedOperator {
    let d = graph.degree() as f64;
    NormalizedOperator {
        n: graph.n(),
        entries: graph.counts().iter().map(|&c| c as f64 / d).collect(),
    }
}
