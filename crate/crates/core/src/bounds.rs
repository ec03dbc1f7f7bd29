//! Bound formulas and instance-level checks of the eigenvalue, expansion and
//! set-arithmetic statements.
//!
//! Every check returns a [`CheckReport`]. A check whose hypotheses do not hold
//! is `vacuous`, never `fail`. Strict eigenvalue inequalities are tested with
//! an allowance of [`SLACK`] against the floating-point spectrum; bound values
//! are computed as exact rationals and converted last.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::graph::{CountGraph, GraphKind};
use crate::group::{ElementSet, FiniteGroup};
use crate::rational::{self, Rational};
use crate::spectra::Spectrum;

/// Allowance for strict inequalities between float eigenvalues and bounds.
pub const SLACK: f64 = 1e-8;

/// `2⁹ = 512`.
pub const MAIN_CONSTANT: i128 = 512;

/// `ℓ = h⁴ / (κ d⁸)` as an exact rational.
pub fn ell(h: &Rational, d: usize, kappa: i128) -> Rational {
    assert!(d >= 1, "degree must be positive");
    rational::pow(h, 4) / rational::from_int(kappa * (d as i128).pow(8))
}

/// `-1 + h⁴ / (2⁹ d⁸)`.
pub fn main_lower_bound(h: &Rational, d: usize) -> f64 {
    rational::to_f64(&(ell(h, d, MAIN_CONSTANT) - rational::from_int(1)))
}

/// `1 - h² / (2 d²)`.
pub fn upper_gap_bound(h: &Rational, d: usize) -> f64 {
    assert!(d >= 1, "degree must be positive");
    let d = d as i128;
    rational::to_f64(&(rational::from_int(1) - rational::pow(h, 2) / rational::from_int(2 * d * d)))
}

/// `2 - h⁴ / (2⁹ d⁸)`, the Laplacian form of the Cayley-graph bound.
pub fn cayley_laplacian_bound(h: &Rational, d: usize) -> f64 {
    rational::to_f64(&(rational::from_int(2) - ell(h, d, MAIN_CONSTANT)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpTable {
    /// `(κ, d₀)` rows in increasing `d₀`.
    pub rows: Vec<(u32, u32)>,
}

impl SharpTable {
    pub fn standard() -> Self {
        SharpTable {
            rows: vec![
                (477, 3),
                (330, 4),
                (257, 5),
                (214, 6),
                (187, 7),
                (167, 8),
                (153, 9),
                (142, 10),
            ],
        }
    }

    /// `κ` of the row with the largest `d₀ <= d`.
    pub fn kappa_for(&self, d: usize) -> Option<u32> {
        self.rows
            .iter()
            .filter(|&&(_, d0)| d0 as usize <= d)
            .max_by_key(|&&(_, d0)| d0)
            .map(|&(kappa, _)| kappa)
    }

    pub fn is_well_formed(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].1 < w[1].1 && w[0].0 > w[1].0)
    }
}

/// `-1 + h⁴ / (κ d⁸)`, or `None` when no row applies.
pub fn sharp_lower_bound(h: &Rational, d: usize, table: &SharpTable) -> Option<f64> {
    let kappa = table.kappa_for(d)?;
    Some(rational::to_f64(&(ell(h, d, kappa as i128) - rational::from_int(1))))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub d: usize,
    pub zeta: Option<f64>,
    pub beta: Option<f64>,
    pub tau: f64,
    pub r: f64,
    pub ell: f64,
}

impl BoundParams {
    pub fn new(epsilon: Rational, d: usize, zeta: Option<f64>) -> Self {
        assert!(
            epsilon > rational::from_int(0),
            "epsilon must be positive"
        );
        let eps = rational::to_f64(&epsilon);
        let df = d as f64;
        let ell = rational::to_f64(&ell(&epsilon, d, MAIN_CONSTANT));
        let tau = df * df * (2.0 * ell * (2.0 - ell)).sqrt();
        let r = 1.0 - (df * tau / (eps * eps)) * (eps + df + 2.0);
        let beta = zeta.map(|z| beta_for_zeta(z, d));
        BoundParams {
            epsilon,
            d,
            zeta,
            beta,
            tau,
            r,
            ell,
        }
    }

    /// Recomputing from `(ε, d, ζ)` reproduces every stored field exactly.
    pub fn is_consistent(&self) -> bool {
        let again = BoundParams::new(self.epsilon, self.d, self.zeta);
        let same = |a: f64, b: f64| a.to_bits() == b.to_bits();
        same(again.tau, self.tau)
            && same(again.r, self.r)
            && same(again.ell, self.ell)
            && match (again.beta, self.beta) {
                (Some(a), Some(b)) => same(a, b),
                (None, None) => true,
                _ => false,
            }
    }

    /// `ε² / (4 d⁴)`, the largest admissible `ζ`.
    pub fn zeta_max(&self) -> f64 {
        let eps = rational::to_f64(&self.epsilon);
        eps * eps / (4.0 * (self.d as f64).powi(4))
    }
}

/// `β = d² √(2ζ(2 - ζ))`.
pub fn beta_for_zeta(zeta: f64, d: usize) -> f64 {
    let df = d as f64;
    df * df * (2.0 * zeta * (2.0 - zeta)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance_id: String,
    pub verdict: Verdict,
    pub hypotheses_held: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// Positive when the inequality holds with room to spare.
    pub margin: Option<f64>,
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn vacuous(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            instance_id: String::new(),
            verdict: Verdict::Vacuous,
            hypotheses_held: false,
            lhs: None,
            rhs: None,
            margin: None,
            witness: None,
        }
    }

    pub fn decided(check: &str, holds: bool, lhs: f64, rhs: f64, margin: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            instance_id: String::new(),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            hypotheses_held: true,
            lhs: Some(lhs),
            rhs: Some(rhs),
            margin: Some(margin),
            witness: None,
        }
    }

    pub fn with_sides(mut self, lhs: f64, rhs: f64) -> Self {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_instance(mut self, id: &str) -> Self {
        self.instance_id = id.to_string();
        self
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// `vacuous` exactly when the hypotheses did not hold.
    pub fn is_well_formed(&self) -> bool {
        (self.verdict == Verdict::Vacuous) != self.hypotheses_held
    }
}

fn non_bipartite_connected(graph: &CountGraph) -> bool {
    graph.n() >= 2 && graph.is_connected() && !graph.is_bipartite()
}

/// `t_n > -1 + h⁴/(2⁹d⁸)` for connected non-bipartite Cayley sum graphs.
pub fn check_theorem_main(graph: &CountGraph, spectrum: &Spectrum, h: &Rational) -> CheckReport {
    const NAME: &str = "theorem_main";
    let bound = main_lower_bound(h, graph.degree());
    let tn = spectrum.smallest().unwrap_or(f64::NAN);
    if graph.kind() != GraphKind::CayleySum || !non_bipartite_connected(graph) {
        return CheckReport::vacuous(NAME).with_sides(tn, bound);
    }
    CheckReport::decided(NAME, tn > bound - SLACK, tn, bound, tn - bound)
        .with_witness(json!({ "h": h.to_string(), "d": graph.degree() }))
}

/// `t_2 <= 1 - h²/(2d²)` for connected graphs on at least two vertices.
pub fn check_upper_gap(graph: &CountGraph, spectrum: &Spectrum, h: &Rational) -> CheckReport {
    const NAME: &str = "upper_gap";
    if graph.n() < 2 || !graph.is_connected() {
        return CheckReport::vacuous(NAME);
    }
    let t2 = spectrum.second_largest().expect("n >= 2");
    let bound = upper_gap_bound(h, graph.degree());
    CheckReport::decided(NAME, t2 <= bound + SLACK, t2, bound, bound - t2)
}

/// `λ_n < 2 - h⁴/(2⁹d⁸)` for connected non-bipartite Cayley graphs with
/// `|G| != 3`.
pub fn check_bis19(graph: &CountGraph, spectrum: &Spectrum, h: &Rational) -> CheckReport {
    const NAME: &str = "cayley_largest_laplacian";
    if graph.kind() != GraphKind::Cayley || graph.n() == 3 || !non_bipartite_connected(graph) {
        return CheckReport::vacuous(NAME);
    }
    let lambda_n = spectrum.laplacian_largest().expect("n >= 2");
    let bound = cayley_laplacian_bound(h, graph.degree());
    CheckReport::decided(NAME, lambda_n < bound + SLACK, lambda_n, bound, bound - lambda_n)
}

/// `t_n > -1 + h⁴/(κd⁸)` for non-bipartite instances whose generating set is
/// minimal and whose degree reaches the first table row.
pub fn check_sharp(
    graph: &CountGraph,
    spectrum: &Spectrum,
    h: &Rational,
    minimal: bool,
    table: &SharpTable,
) -> CheckReport {
    const NAME: &str = "sharp";
    let applicable = matches!(graph.kind(), GraphKind::Cayley | GraphKind::CayleySum);
    let bound = sharp_lower_bound(h, graph.degree(), table);
    let (Some(bound), true, true, true) = (bound, applicable, minimal, non_bipartite_connected(graph))
    else {
        return CheckReport::vacuous(NAME);
    };
    let tn = spectrum.smallest().expect("n >= 2");
    CheckReport::decided(NAME, tn > bound - SLACK, tn, bound, tn - bound).with_witness(json!({
        "kappa": table.kappa_for(graph.degree()),
        "d": graph.degree(),
    }))
}

fn exact_le(name: &str, lhs: &Rational, rhs: &Rational) -> CheckReport {
    let (l, r) = (rational::to_f64(lhs), rational::to_f64(rhs));
    CheckReport::decided(name, lhs <= rhs, l, r, rational::to_f64(&(rhs - lhs)))
        .with_witness(json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
}

/// Three exact comparisons:
///
/// * `epsilon_sum`: `h <= d - 1` for connected non-bipartite sum graphs;
/// * `epsilon_cayley`: `h <= d - 1` for connected Cayley graphs with `|G| >= 4`;
/// * `epsilon_minimal`: `h <= 2` for connected non-bipartite sum graphs with a
///   minimal generating set.
pub fn check_epsilon_bounds(graph: &CountGraph, h: &Rational, minimal: bool) -> Vec<CheckReport> {
    let d_minus_one = rational::from_int(graph.degree() as i128 - 1);
    let sum_ok = graph.kind() == GraphKind::CayleySum && non_bipartite_connected(graph);
    let cayley_ok =
        graph.kind() == GraphKind::Cayley && graph.n() >= 4 && graph.is_connected();
    vec![
        if sum_ok {
            exact_le("epsilon_sum", h, &d_minus_one)
        } else {
            CheckReport::vacuous("epsilon_sum")
        },
        if cayley_ok {
            exact_le("epsilon_cayley", h, &d_minus_one)
        } else {
            CheckReport::vacuous("epsilon_cayley")
        },
        if sum_ok && minimal {
            exact_le("epsilon_minimal", h, &rational::from_int(2))
        } else {
            CheckReport::vacuous("epsilon_minimal")
        },
    ]
}

/// The graph is bipartite exactly when some index-two subgroup avoids `S`.
/// Both BFS two-colouring and the spectral test (`t_n = -1` on a connected
/// graph) are compared with the group-side criterion.
pub fn check_bipartite_lemma(
    group: &FiniteGroup,
    set: &ElementSet,
    graph: &CountGraph,
    spectrum: &Spectrum,
) -> CheckReport {
    const NAME: &str = "bipartite_lemma";
    let bfs = graph.is_bipartite();
    let spectral = spectrum
        .is_bipartite_spectral(spectrum.tol() * 1e3)
        .unwrap_or(bfs);
    let avoiding = group
        .index_two_subgroups()
        .into_iter()
        .find(|h| !h.intersects(set));
    let group_side = avoiding.is_some();
    let as_f = |b: bool| if b { 1.0 } else { 0.0 };
    let holds = bfs == group_side && spectral == group_side;
    CheckReport::decided(NAME, holds, as_f(bfs), as_f(group_side), if holds { 0.0 } else { -1.0 })
        .with_witness(json!({
            "bfs_bipartite": bfs,
            "spectral_bipartite": spectral,
            "avoiding_subgroup": avoiding,
        }))
}

/// `|A⁻¹S ∖ A| >= (ε/d)|G ∖ A|` for `|A| >= |G|/2`, given that the sum graph
/// is an `ε`-vertex expander (`0 < ε <= h`).
pub fn check_vertex_expansion_complement(
    group: &FiniteGroup,
    set: &ElementSet,
    a: &ElementSet,
    eps: &Rational,
    h: &Rational,
) -> CheckReport {
    const NAME: &str = "vertex_expansion_complement";
    let n = group.order();
    let zero = rational::from_int(0);
    if 2 * a.len() < n || *eps <= zero || eps > h || set.is_empty() {
        return CheckReport::vacuous(NAME);
    }
    let lhs = rational::from_int(neighbourhood_excess(group, set, a) as i128);
    let rhs = *eps / rational::from_int(set.len() as i128)
        * rational::from_int((n - a.len()) as i128);
    let holds = lhs >= rhs;
    CheckReport::decided(
        NAME,
        holds,
        rational::to_f64(&lhs),
        rational::to_f64(&rhs),
        rational::to_f64(&(lhs - rhs)),
    )
    .with_witness(json!({ "a": a, "lhs": lhs.to_string(), "rhs": rhs.to_string() }))
}

/// `|A⁻¹S ∖ A|`, the sum-graph vertex boundary of `A`.
pub fn neighbourhood_excess(group: &FiniteGroup, set: &ElementSet, a: &ElementSet) -> usize {
    let n = group.order();
    let inside = a.to_flags(n);
    let mut hit = vec![false; n];
    for x in a.iter() {
        let xi = group.inv(x);
        for s in set.iter() {
            hit[group.mul(xi, s)] = true;
        }
    }
    (0..n).filter(|&v| hit[v] && !inside[v]).count()
}

/// Largest left-hand sides of the five conditions on a candidate set `A`,
/// with maximising arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AExistsMeasures {
    pub size: usize,
    /// `|SAS ∖ A|`.
    pub sas_excess: usize,
    /// `max_g |Ag ∩ (Ag)⁻¹S|` and the maximising `g`.
    pub right_overlap: (usize, usize),
    /// `max_{s,g} |(Ag)⁻¹s Δ (Ag)ᶜ|` and the maximising `(s, g)`.
    pub right_symdiff: (usize, usize, usize),
    /// Same as `right_overlap` with `A⁻¹g` in place of `Ag`.
    pub left_overlap: (usize, usize),
    /// Same as `right_symdiff` with `A⁻¹g` in place of `Ag`.
    pub left_symdiff: (usize, usize, usize),
}

/// `|B ∩ B⁻¹S|` and, per `s`, `|B⁻¹s Δ Bᶜ|` for a translate `B`.
fn translate_measures(group: &FiniteGroup, set: &ElementSet, b: &[usize]) -> (usize, Vec<usize>) {
    let n = group.order();
    let mut inside = vec![false; n];
    for &x in b {
        inside[x] = true;
    }
    let inverses: Vec<usize> = b.iter().map(|&x| group.inv(x)).collect();
    let mut hit = vec![false; n];
    let mut per_s = Vec::with_capacity(set.len());
    for s in set.iter() {
        let mut outside = 0;
        for &xi in &inverses {
            let y = group.mul(xi, s);
            hit[y] = true;
            if !inside[y] {
                outside += 1;
            }
        }
        // |X Δ Bᶜ| = |X| + |Bᶜ| - 2|X ∩ Bᶜ| with |X| = |B|
        per_s.push(n - 2 * outside);
    }
    let overlap = (0..n).filter(|&v| hit[v] && inside[v]).count();
    (overlap, per_s)
}

pub fn aexists_measures(group: &FiniteGroup, set: &ElementSet, a: &ElementSet) -> AExistsMeasures {
    let n = group.order();
    let inside = a.to_flags(n);
    let mut sas = vec![false; n];
    for s in set.iter() {
        for x in a.iter() {
            let sx = group.mul(s, x);
            for t in set.iter() {
                sas[group.mul(sx, t)] = true;
            }
        }
    }
    let sas_excess = (0..n).filter(|&v| sas[v] && !inside[v]).count();

    let mut right_overlap = (0, group.identity());
    let mut right_symdiff = (0, set.as_slice().first().copied().unwrap_or(0), group.identity());
    let mut left_overlap = right_overlap;
    let mut left_symdiff = right_symdiff;
    let inverse_a: Vec<usize> = a.iter().map(|x| group.inv(x)).collect();
    for g in 0..n {
        let right: Vec<usize> = a.iter().map(|x| group.mul(x, g)).collect();
        let left: Vec<usize> = inverse_a.iter().map(|&x| group.mul(x, g)).collect();
        for (b, overlap_slot, symdiff_slot) in [
            (right, &mut right_overlap, &mut right_symdiff),
            (left, &mut left_overlap, &mut left_symdiff),
        ] {
            let (overlap, per_s) = translate_measures(group, set, &b);
            if overlap > overlap_slot.0 {
                *overlap_slot = (overlap, g);
            }
            for (s, value) in set.iter().zip(per_s) {
                if value > symdiff_slot.0 {
                    *symdiff_slot = (value, s, g);
                }
            }
        }
    }
    AExistsMeasures {
        size: a.len(),
        sas_excess,
        right_overlap,
        right_symdiff,
        left_overlap,
        left_symdiff,
    }
}

impl AExistsMeasures {
    /// Which of the five conditions hold for the given `β` and `ε`.
    pub fn conditions(&self, n: usize, d: usize, beta: f64, eps: &Rational) -> [bool; 5] {
        let eps = rational::to_f64(eps);
        let size = self.size as f64;
        let df = d as f64;
        let lower = n as f64 / (2.0 + beta + df * beta / eps);
        let overlap_cap = beta / eps * size + 1e-9;
        let symdiff_cap = beta / eps * (eps + df + 2.0) * size + 1e-9;
        [
            lower <= size + 1e-9 && 2 * self.size <= n,
            self.right_overlap.0 as f64 <= overlap_cap,
            self.right_symdiff.0 as f64 <= symdiff_cap,
            self.left_overlap.0 as f64 <= overlap_cap,
            self.left_symdiff.0 as f64 <= symdiff_cap,
        ]
    }
}

/// Some eigenvalue in the half-open window `(-1, -1 + ζ]`.
fn has_eigenvalue_near_minus_one(spectrum: &Spectrum, zeta: f64) -> Option<f64> {
    spectrum
        .adjacency_eigs()
        .iter()
        .copied()
        .find(|&t| t > -1.0 + SLACK && t <= -1.0 + zeta)
}

/// Result of the exhaustive search for a set satisfying the five conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AExistsSearch {
    pub report: CheckReport,
    pub witness: Option<ElementSet>,
}

/// When the hypotheses hold (`0 < ε <= h`, `0 < ζ <= ε²/4d⁴` and an eigenvalue
/// in `(-1, -1+ζ]`), searches subsets in lexicographic order for the first `A`
/// meeting all five conditions with `β = d²√(2ζ(2-ζ))`. Passing requires a
/// witness.
pub fn find_aexists_witness(
    group: &FiniteGroup,
    set: &ElementSet,
    spectrum: &Spectrum,
    zeta: f64,
    eps: &Rational,
    h: &Rational,
    cap: usize,
) -> AExistsSearch {
    const NAME: &str = "aexists";
    let n = group.order();
    let d = set.len();
    let zero = rational::from_int(0);
    let vacuous = |report: CheckReport| AExistsSearch { report, witness: None };
    if *eps <= zero || eps > h || d == 0 || n > cap || n > 63 {
        return vacuous(CheckReport::vacuous(NAME));
    }
    let params = BoundParams::new(*eps, d, Some(zeta));
    let window = -1.0 + zeta;
    let tn = spectrum.smallest().unwrap_or(f64::NAN);
    if !(zeta > 0.0 && zeta <= params.zeta_max()) {
        return vacuous(CheckReport::vacuous(NAME).with_sides(tn, window));
    }
    let Some(t) = has_eigenvalue_near_minus_one(spectrum, zeta) else {
        return vacuous(CheckReport::vacuous(NAME).with_sides(tn, window));
    };
    let beta = params.beta.expect("zeta supplied");

    let mut stack: Vec<usize> = Vec::new();
    let found = lexicographic_search(n, n / 2, &mut stack, &mut |members| {
        let a = ElementSet::new(members.iter().copied());
        aexists_measures(group, set, &a)
            .conditions(n, d, beta, eps)
            .iter()
            .all(|&c| c)
    });
    let witness = found.map(ElementSet::new);
    let report = CheckReport::decided(NAME, witness.is_some(), t, window, window - t)
        .with_witness(json!({ "a": witness, "beta": beta, "zeta": zeta }));
    AExistsSearch { report, witness }
}

/// Depth-first walk of nonempty subsets of `0..n` of size at most `max_size`
/// in lexicographic order of their sorted member lists.
fn lexicographic_search(
    n: usize,
    max_size: usize,
    stack: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let start = stack.last().map_or(0, |&x| x + 1);
    for next in start..n {
        stack.push(next);
        if accept(stack) {
            return Some(stack.clone());
        }
        if stack.len() < max_size {
            if let Some(found) = lexicographic_search(n, max_size, stack, accept) {
                return Some(found);
            }
        }
        stack.pop();
    }
    None
}

/// `|A ∩ Ag|` and `|A ∩ A⁻¹g|`.
pub fn dichotomy_counts(group: &FiniteGroup, a: &ElementSet, g: usize) -> (usize, usize) {
    let right = a.iter().filter(|&x| a.contains(group.mul(x, g))).count();
    let left = a
        .iter()
        .filter(|&x| a.contains(group.mul(group.inv(x), g)))
        .count();
    (right, left)
}

/// `c = dβ(ε+d+2)/ε²`; the two ranges are `[0, c|A|]` and `[(1-c)|A|, |A|]`.
pub fn dichotomy_thresholds(size: usize, d: usize, beta: f64, eps: &Rational) -> (f64, f64) {
    let eps = rational::to_f64(eps);
    let df = d as f64;
    let c = df * beta / (eps * eps) * (eps + df + 2.0);
    (c * size as f64, (1.0 - c) * size as f64)
}

/// For the given `A` and `g`, each of `|A ∩ Ag|` and `|A ∩ A⁻¹g|` lies in
/// exactly one of the small and large ranges. Hypotheses: `0 < ε <= h`,
/// `β < ε²/(4d(d+1))`, and `A` satisfies the five conditions with `β`, `ε`.
#[allow(clippy::too_many_arguments)]
pub fn check_dichotomy(
    group: &FiniteGroup,
    set: &ElementSet,
    a: &ElementSet,
    g: usize,
    beta: f64,
    eps: &Rational,
    h: &Rational,
) -> CheckReport {
    const NAME: &str = "dichotomy";
    let n = group.order();
    let d = set.len();
    let zero = rational::from_int(0);
    if *eps <= zero || eps > h || d == 0 || a.is_empty() || beta.is_nan() || beta < 0.0 {
        return CheckReport::vacuous(NAME);
    }
    let e = rational::to_f64(eps);
    let precondition = beta < e * e / (4.0 * d as f64 * (d as f64 + 1.0));
    if !precondition
        || !aexists_measures(group, set, a)
            .conditions(n, d, beta, eps)
            .iter()
            .all(|&c| c)
    {
        return CheckReport::vacuous(NAME);
    }
    let (low, high) = dichotomy_thresholds(a.len(), d, beta, eps);
    let (right, left) = dichotomy_counts(group, a, g);
    // signed distance out of the open gap (low, high); negative inside it
    let distance = |x: usize| {
        let x = x as f64;
        if x <= low + 1e-9 {
            low - x
        } else if x >= high - 1e-9 {
            x - high
        } else {
            -(x - low).min(high - x)
        }
    };
    let (dr, dl) = (distance(right), distance(left));
    // low < high under the precondition, so a count cannot sit in both ranges
    let holds = dr >= -1e-9 && dl >= -1e-9 && low < high;
    CheckReport::decided(NAME, holds, right as f64, low, dr.min(dl)).with_witness(json!({
        "g": g,
        "a": a,
        "right": right,
        "left": left,
        "low": low,
        "high": high,
    }))
}
