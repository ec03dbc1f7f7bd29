//! Vertex and edge Cheeger constants in exact rational arithmetic.
//!
//! For a `d`-regular multigraph and `∅ ≠ V₁` with `2|V₁| <= n`:
//!
//! * vertex ratio `|δ(V₁)| / |V₁|`, where `δ(V₁)` is the set of vertices
//!   outside `V₁` with a neighbour in `V₁` (loops never count);
//! * edge ratio `|E(V₁, V∖V₁)| / (d |V₁|)`.
//!
//! The exact minimisers are found by walking all `2^n` characteristic vectors
//! in reflected Gray-code order, so consecutive subsets differ by one vertex
//! and both boundary sizes are updated in `O(deg)` per step. Ties are broken
//! towards the lexicographically smallest sorted member list.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::CountGraph;
use crate::group::ElementSet;
use crate::rational::{self, Rational};

pub const DEFAULT_EXACT_CAP: usize = 24;

/// Graphs at least this large split the Gray-code walk across rayon workers.
const PARALLEL_MIN_N: usize = 18;
const PARALLEL_CHUNKS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheegerError {
    #[error("TooLarge: {n} vertices exceed the exact-enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    TooSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMethod {
    Exact,
    Sweep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub subset: ElementSet,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub kind: CutKind,
    pub method: CutMethod,
}

impl CutWitness {
    /// Recomputes the ratio of `subset` and compares it with `value`.
    pub fn is_consistent(&self, graph: &CountGraph) -> bool {
        let size_ok = !self.subset.is_empty() && 2 * self.subset.len() <= graph.n();
        size_ok && ratio_of(graph, &self.subset, self.kind) == self.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCheeger {
    pub vertex: CutWitness,
    pub edge: CutWitness,
}

/// `δ(V₁) = N(V₁) ∖ V₁`.
pub fn vertex_boundary(graph: &CountGraph, v1: &ElementSet) -> ElementSet {
    (0..graph.n())
        .filter(|&v| !v1.contains(v) && v1.iter().any(|u| graph.count(v, u) > 0))
        .collect()
}

/// `Σ_{u ∈ V₁, v ∉ V₁} counts[u][v]`.
pub fn edge_boundary_count(graph: &CountGraph, v1: &ElementSet) -> u64 {
    v1.iter()
        .map(|u| {
            (0..graph.n())
                .filter(|&v| !v1.contains(v))
                .map(|v| graph.count(u, v) as u64)
                .sum::<u64>()
        })
        .sum()
}

pub fn vertex_ratio(graph: &CountGraph, v1: &ElementSet) -> Rational {
    rational::ratio(vertex_boundary(graph, v1).len() as i128, v1.len() as i128)
}

pub fn edge_ratio(graph: &CountGraph, v1: &ElementSet) -> Rational {
    rational::ratio(
        edge_boundary_count(graph, v1) as i128,
        (graph.degree() * v1.len()) as i128,
    )
}

pub fn ratio_of(graph: &CountGraph, v1: &ElementSet, kind: CutKind) -> Rational {
    match kind {
        CutKind::Vertex => vertex_ratio(graph, v1),
        CutKind::Edge => edge_ratio(graph, v1),
    }
}

/// `a` precedes `b` when their sorted member lists are compared
/// lexicographically (a proper prefix comes first).
fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let x = (a ^ b).trailing_zeros();
    let above = if x >= 63 { 0 } else { !((2u64 << x) - 1) };
    if a >> x & 1 == 1 {
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Best `(numerator / denominator, mask)` seen so far.
#[derive(Debug, Clone, Copy)]
struct Best {
    num: u64,
    den: u64,
    mask: u64,
}

impl Best {
    fn offer(slot: &mut Option<Best>, num: u64, den: u64, mask: u64) {
        match slot {
            None => *slot = Some(Best { num, den, mask }),
            Some(b) => {
                let lhs = num as u128 * b.den as u128;
                let rhs = b.num as u128 * den as u128;
                if lhs < rhs || (lhs == rhs && lex_less(mask, b.mask)) {
                    *b = Best { num, den, mask };
                }
            }
        }
    }

    fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => {
                let mut slot = Some(x);
                Best::offer(&mut slot, y.num, y.den, y.mask);
                slot
            }
        }
    }
}

struct Walker<'g> {
    n: usize,
    neighbours: &'g [Vec<(usize, u32)>],
    plain_degree: &'g [u32],
    mask: u64,
    size: u32,
    inside: Vec<u32>,
    boundary: u32,
    cut: i64,
}

impl<'g> Walker<'g> {
    fn new(n: usize, neighbours: &'g [Vec<(usize, u32)>], plain_degree: &'g [u32]) -> Self {
        Walker {
            n,
            neighbours,
            plain_degree,
            mask: 0,
            size: 0,
            inside: vec![0; n],
            boundary: 0,
            cut: 0,
        }
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.mask >> v & 1 == 1
    }

    #[inline]
    fn flip(&mut self, v: usize) {
        if self.contains(v) {
            self.mask &= !(1u64 << v);
            self.size -= 1;
            self.cut -= self.plain_degree[v] as i64 - 2 * self.inside[v] as i64;
            for &(u, c) in &self.neighbours[v] {
                self.inside[u] -= c;
                if self.inside[u] == 0 && !self.contains(u) {
                    self.boundary -= 1;
                }
            }
            if self.inside[v] > 0 {
                self.boundary += 1;
            }
        } else {
            if self.inside[v] > 0 {
                self.boundary -= 1;
            }
            self.cut += self.plain_degree[v] as i64 - 2 * self.inside[v] as i64;
            for &(u, c) in &self.neighbours[v] {
                if self.inside[u] == 0 && !self.contains(u) {
                    self.boundary += 1;
                }
                self.inside[u] += c;
            }
            self.mask |= 1u64 << v;
            self.size += 1;
        }
    }

    #[inline]
    fn offer(&self, vertex: &mut Option<Best>, edge: &mut Option<Best>) {
        if self.size == 0 || 2 * self.size as usize > self.n {
            return;
        }
        Best::offer(vertex, self.boundary as u64, self.size as u64, self.mask);
        // the common factor d is applied when the value is reported
        Best::offer(edge, self.cut as u64, self.size as u64, self.mask);
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Walks Gray-code positions `lo..hi`.
fn walk_range(
    n: usize,
    neighbours: &[Vec<(usize, u32)>],
    plain_degree: &[u32],
    lo: u64,
    hi: u64,
) -> (Option<Best>, Option<Best>) {
    let mut w = Walker::new(n, neighbours, plain_degree);
    let start = gray(lo);
    for v in 0..n {
        if start >> v & 1 == 1 {
            w.flip(v);
        }
    }
    let (mut vertex, mut edge) = (None, None);
    w.offer(&mut vertex, &mut edge);
    for i in (lo + 1)..hi {
        w.flip(i.trailing_zeros() as usize);
        w.offer(&mut vertex, &mut edge);
    }
    (vertex, edge)
}

/// Exact vertex and edge Cheeger constants with lexicographically smallest
/// minimising witnesses.
pub fn exact_cheeger(graph: &CountGraph, cap: usize) -> Result<ExactCheeger, CheegerError> {
    if graph.n() <= cap && graph.n() >= 2 && !graph.is_connected() {
        return Err(CheegerError::Disconnected);
    }
    exact_cheeger_any(graph, cap)
}

/// [`exact_cheeger`] without the connectivity precondition: a disconnected
/// graph has both constants equal to zero, witnessed by a union of components.
pub fn exact_cheeger_any(graph: &CountGraph, cap: usize) -> Result<ExactCheeger, CheegerError> {
    let n = graph.n();
    if n > cap || n > 63 {
        return Err(CheegerError::TooLarge { n, cap: cap.min(63) });
    }
    if n < 2 {
        return Err(CheegerError::TooSmall);
    }
    let neighbours: Vec<Vec<(usize, u32)>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && graph.count(v, u) > 0)
                .map(|u| (u, graph.count(v, u)))
                .collect()
        })
        .collect();
    let plain_degree: Vec<u32> = neighbours
        .iter()
        .map(|nb| nb.iter().map(|&(_, c)| c).sum())
        .collect();

    let total = 1u64 << n;
    let (vertex, edge) = if n >= PARALLEL_MIN_N {
        let step = total / PARALLEL_CHUNKS;
        (0..PARALLEL_CHUNKS)
            .into_par_iter()
            .map(|c| walk_range(n, &neighbours, &plain_degree, c * step, (c + 1) * step))
            .reduce(
                || (None, None),
                |a, b| (Best::merge(a.0, b.0), Best::merge(a.1, b.1)),
            )
    } else {
        walk_range(n, &neighbours, &plain_degree, 0, total)
    };
    let vertex = vertex.expect("n >= 2 has a singleton candidate");
    let edge = edge.expect("n >= 2 has a singleton candidate");
    let d = graph.degree() as i128;
    Ok(ExactCheeger {
        vertex: CutWitness {
            subset: ElementSet::from_mask(vertex.mask),
            value: rational::ratio(vertex.num as i128, vertex.den as i128),
            kind: CutKind::Vertex,
            method: CutMethod::Exact,
        },
        edge: CutWitness {
            subset: ElementSet::from_mask(edge.mask),
            value: rational::ratio(edge.num as i128, edge.den as i128 * d),
            kind: CutKind::Edge,
            method: CutMethod::Exact,
        },
    })
}

pub fn vertex_cheeger_exact(graph: &CountGraph, cap: usize) -> Result<CutWitness, CheegerError> {
    exact_cheeger(graph, cap).map(|c| c.vertex)
}

pub fn edge_cheeger_exact(graph: &CountGraph, cap: usize) -> Result<CutWitness, CheegerError> {
    exact_cheeger(graph, cap).map(|c| c.edge)
}

/// Largest `ε` for which the graph is an `(n, d, ε)`-expander, i.e. `h(G)`.
pub fn expander_epsilon(graph: &CountGraph, cap: usize) -> Result<Rational, CheegerError> {
    vertex_cheeger_exact(graph, cap).map(|w| w.value)
}

/// Best prefix cut of the vertices ordered by the `t_2` eigenvector, taken
/// from both ends of the ordering, sizes `1..=n/2`. Always an upper bound on
/// the exact constant of the same kind.
pub fn sweep_upper_bound(
    graph: &CountGraph,
    fiedler: &[f64],
    kind: CutKind,
) -> Result<CutWitness, CheegerError> {
    let n = graph.n();
    assert_eq!(fiedler.len(), n, "one eigenvector entry per vertex");
    if n < 2 {
        return Err(CheegerError::TooSmall);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| fiedler[a].total_cmp(&fiedler[b]).then(a.cmp(&b)));

    let mut best: Option<(Rational, ElementSet)> = None;
    for ends in [order.clone(), order.into_iter().rev().collect::<Vec<_>>()] {
        for k in 1..=n / 2 {
            let subset: ElementSet = ends[..k].iter().copied().collect();
            let value = ratio_of(graph, &subset, kind);
            let better = match &best {
                None => true,
                Some((bv, bs)) => match value.cmp(bv) {
                    Ordering::Less => true,
                    Ordering::Equal => subset < *bs,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((value, subset));
            }
        }
    }
    let (value, subset) = best.expect("n >= 2 gives at least one prefix");
    Ok(CutWitness {
        subset,
        value,
        kind,
        method: CutMethod::Sweep,
    })
}
