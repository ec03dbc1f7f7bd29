//! Naive reference implementations used as oracles by the integration tests.
//! Nothing here shares code with the library beyond the group tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cayley_spectra::group::FiniteGroup;
use num_rational::Ratio;

pub type Q = Ratio<i128>;

/// Count matrix of the sum graph straight from the definition `g ~ g⁻¹s`.
pub fn sum_counts(g: &FiniteGroup, s: &[usize]) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for x in 0..n {
        for &t in s {
            m[x][g.mul(g.inv(x), t)] += 1;
        }
    }
    m
}

/// Count matrix of the Cayley graph `g ~ gs`.
pub fn cayley_counts(g: &FiniteGroup, s: &[usize]) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for x in 0..n {
        for &t in s {
            m[x][g.mul(x, t)] += 1;
        }
    }
    m
}

/// `g ~ s g t` for every ordered pair `(s, t)`.
pub fn pair_counts(g: &FiniteGroup, s: &[usize]) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for x in 0..n {
        for &a in s {
            for &b in s {
                m[x][g.mul(g.mul(a, x), b)] += 1;
            }
        }
    }
    m
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
}

pub fn conjugation_closed(g: &FiniteGroup, s: &[usize]) -> bool {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    (0..g.order()).all(|x| s.iter().all(|&t| set.contains(&g.mul(g.mul(x, t), g.inv(x)))))
}

/// Minimum ratio and lexicographically smallest witness, by plain enumeration
/// of every bitmask and a full recount per subset.
pub struct NaiveCheeger {
    pub h: Q,
    pub h_witness: Vec<usize>,
    pub edge_h: Q,
    pub edge_witness: Vec<usize>,
}

pub fn naive_cheeger(m: &[Vec<i64>]) -> NaiveCheeger {
    let n = m.len();
    let d: i64 = m[0].iter().sum();
    let mut best_v: Option<(Q, Vec<usize>)> = None;
    let mut best_e: Option<(Q, Vec<usize>)> = None;
    for mask in 1u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if 2 * members.len() > n {
            continue;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        let boundary = (0..n)
            .filter(|&v| !inside(v) && members.iter().any(|&u| m[v][u] > 0))
            .count() as i128;
        let cut: i64 = members
            .iter()
            .map(|&u| (0..n).filter(|&v| !inside(v)).map(|v| m[u][v]).sum::<i64>())
            .sum();
        let k = members.len() as i128;
        let vr = Q::new(boundary, k);
        let er = Q::new(cut as i128, d as i128 * k);
        for (slot, value) in [(&mut best_v, vr), (&mut best_e, er)] {
            let better = match slot {
                None => true,
                Some((bv, bw)) => value < *bv || (value == *bv && members < *bw),
            };
            if better {
                *slot = Some((value, members.clone()));
            }
        }
    }
    let (h, h_witness) = best_v.expect("n >= 2");
    let (edge_h, edge_witness) = best_e.expect("n >= 2");
    NaiveCheeger { h, h_witness, edge_h, edge_witness }
}

/// Index-two subgroups as kernels of surjections onto Z/2, found by
/// propagating every 0/1 labelling of `gens` along the Cayley graph.
pub fn index_two_by_labelling(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for labels in 0u32..(1 << gens.len()) {
        let mut f: Vec<Option<u8>> = vec![None; n];
        f[g.identity()] = Some(0);
        let mut queue = vec![g.identity()];
        let mut consistent = true;
        while let Some(x) = queue.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let value = f[x].unwrap() ^ (labels >> i & 1) as u8;
                match f[y] {
                    None => {
                        f[y] = Some(value);
                        queue.push(y);
                    }
                    Some(v) if v != value => consistent = false,
                    _ => {}
                }
            }
        }
        if !consistent || f.iter().any(Option::is_none) {
            continue;
        }
        let f: Vec<u8> = f.into_iter().map(Option::unwrap).collect();
        let hom = (0..n).all(|a| (0..n).all(|b| f[g.mul(a, b)] == f[a] ^ f[b]));
        if hom && f.contains(&1) {
            out.insert((0..n).filter(|&x| f[x] == 0).collect());
        }
    }
    out
}

/// Breadth-first two-colouring; any loop rules it out.
pub fn two_colourable(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut colour = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(0u8);
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for v in 0..n {
                if m[u][v] == 0 {
                    continue;
                }
                let want = 1 - colour[u].unwrap();
                match colour[v] {
                    None => {
                        colour[v] = Some(want);
                        queue.push(v);
                    }
                    Some(c) if c != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn set_of(xs: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    xs.into_iter().collect()
}

/// `{x y : x ∈ a, y ∈ b}`.
pub fn product(g: &FiniteGroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul(x, y))).collect()
}

pub fn inverse(g: &FiniteGroup, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().map(|&x| g.inv(x)).collect()
}

pub fn complement(n: usize, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..n).filter(|x| !a.contains(x)).collect()
}

pub fn symdiff(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.symmetric_difference(b).copied().collect()
}

/// Maxima of the five condition left sides, computed with plain set algebra.
pub struct NaiveConditions {
    pub sas_excess: usize,
    pub right_overlap: usize,
    pub right_symdiff: usize,
    pub left_overlap: usize,
    pub left_symdiff: usize,
}

pub fn naive_conditions(g: &FiniteGroup, s: &[usize], a: &BTreeSet<usize>) -> NaiveConditions {
    let n = g.order();
    let sset = set_of(s.iter().copied());
    let sas = product(g, &product(g, &sset, a), &sset);
    let mut out = NaiveConditions {
        sas_excess: sas.difference(a).count(),
        right_overlap: 0,
        right_symdiff: 0,
        left_overlap: 0,
        left_symdiff: 0,
    };
    for x in 0..n {
        let single = set_of([x]);
        let right = product(g, a, &single);
        let left = product(g, &inverse(g, a), &single);
        for (b, overlap, sym) in [
            (right, &mut out.right_overlap, &mut out.right_symdiff),
            (left, &mut out.left_overlap, &mut out.left_symdiff),
        ] {
            let binv = inverse(g, &b);
            let o = b.intersection(&product(g, &binv, &sset)).count();
            *overlap = (*overlap).max(o);
            for &t in s {
                let shifted = product(g, &binv, &set_of([t]));
                *sym = (*sym).max(symdiff(&shifted, &complement(n, &b)).len());
            }
        }
    }
    out
}

/// `|A ∩ Ag|` and `|A ∩ A⁻¹g|`.
pub fn naive_dichotomy_counts(g: &FiniteGroup, a: &BTreeSet<usize>, x: usize) -> (usize, usize) {
    let right = product(g, a, &set_of([x]));
    let left = product(g, &inverse(g, a), &set_of([x]));
    (a.intersection(&right).count(), a.intersection(&left).count())
}
