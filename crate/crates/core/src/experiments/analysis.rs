use serde::{Deserialize, Serialize};
use serde_json::json;

use super::instance::{instance_id, GroupDescriptor, InstanceSpec};
use super::{ExperimentError, Options};
use crate::bounds::{
    self, beta_for_zeta, check_bipartite_lemma, check_bis19, check_dichotomy,
    check_epsilon_bounds, check_sharp, check_theorem_main, check_upper_gap,
    check_vertex_expansion_complement, find_aexists_witness, BoundParams, CheckReport,
    SharpTable, Verdict, SLACK,
};
use crate::cheeger::{
    edge_boundary_count, exact_cheeger_any, sweep_upper_bound, CutKind, CutWitness,
};
use crate::graph::{
    build_cayley, build_cayley_sum, build_pair_multigraph, directed_sum_counts,
    is_symmetric_matrix, normalized, CountGraph, GeneratingSet, GraphKind,
};
use crate::group::{ElementSet, FiniteGroup};
use crate::rational::{self, Rational};
use crate::spectra::{eig_symmetric, Spectrum};

pub const SCHEMA_VERSION: u32 = 1;

/// Instances up to this order also check `‖TQ - QΛ‖` against `10·tol`.
const RECONSTRUCTION_MAX_N: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub instance_id: String,
    pub group: GroupDescriptor,
    pub kind: GraphKind,
    pub group_core: GroupSection,
    pub graph_core: GraphSection,
    pub spectra: SpectraSection,
    pub cheeger: CheegerSection,
    pub bounds: BoundsSection,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub order: usize,
    pub abelian: bool,
    pub set: ElementSet,
    pub symmetric: bool,
    pub identity_free: bool,
    pub conjugation_closed: bool,
    pub generates: bool,
    pub minimal: bool,
    pub index_two_subgroups: Vec<ElementSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSection {
    pub n: usize,
    pub d: usize,
    pub loops: u64,
    pub connected: bool,
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraSection {
    pub tol: f64,
    pub eigenvalues: Vec<f64>,
    pub t1: f64,
    pub t2: f64,
    pub t_n: f64,
    pub lambda2: f64,
    pub lambda_n: f64,
    pub reconstruction_residual: f64,
    pub orthogonality_defect: f64,
    pub pair_eigenvalues: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheegerSection {
    pub vertex: CutWitness,
    pub edge: CutWitness,
    pub sweep_vertex: CutWitness,
    pub sweep_edge: CutWitness,
    pub pair_edge: Option<CutWitness>,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub main_lower: f64,
    pub upper_gap: f64,
    pub sharp_lower: Option<f64>,
    pub kappa: Option<u32>,
    pub tightness_ratio: Option<f64>,
    pub params: Option<BoundParams>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

impl Summary {
    pub fn of(checks: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for c in checks {
            s.add(c.verdict);
        }
        s
    }

    pub fn add(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Vacuous => self.vacuous += 1,
        }
    }
}

impl AnalysisReport {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn h(&self) -> Rational {
        self.cheeger.vertex.value
    }
}

pub fn analyze(spec: &InstanceSpec, opts: &Options) -> Result<AnalysisReport, ExperimentError> {
    let (group, descriptor) = spec.group.load()?;
    let set = spec.set.resolve(&group)?;
    analyze_group(&group, descriptor, &set, spec.kind, opts)
}

struct PairData {
    graph: CountGraph,
    spectrum: Spectrum,
    edge: CutWitness,
}

pub fn analyze_group(
    group: &FiniteGroup,
    descriptor: GroupDescriptor,
    set: &ElementSet,
    kind: GraphKind,
    opts: &Options,
) -> Result<AnalysisReport, ExperimentError> {
    if !matches!(kind, GraphKind::Cayley | GraphKind::CayleySum) {
        return Err(ExperimentError::Validation(format!(
            "kind must be cayley or cayley_sum, got {kind}"
        )));
    }
    let sum = kind == GraphKind::CayleySum;
    let gens = GeneratingSet::validate(group, set, sum).map_err(ExperimentError::from_graph)?;
    let n = group.order();
    if n > opts.max_exact_n {
        return Err(ExperimentError::TooLarge { n, cap: opts.max_exact_n });
    }
    let graph = if sum {
        build_cayley_sum(group, &gens).map_err(ExperimentError::from_graph)?
    } else {
        build_cayley(group, &gens)
    };
    let op = normalized(&graph);
    let spectrum = eig_symmetric(&op, opts.tol).map_err(ExperimentError::from_spectra)?;
    let exact = exact_cheeger_any(&graph, opts.max_exact_n).map_err(ExperimentError::from_cheeger)?;
    let fiedler = spectrum.fiedler_vector().map_err(ExperimentError::from_spectra)?;
    let sweep_vertex =
        sweep_upper_bound(&graph, fiedler, CutKind::Vertex).map_err(ExperimentError::from_cheeger)?;
    let sweep_edge =
        sweep_upper_bound(&graph, fiedler, CutKind::Edge).map_err(ExperimentError::from_cheeger)?;

    let pair = if sum {
        let graph = build_pair_multigraph(group, &gens).map_err(ExperimentError::from_graph)?;
        let spectrum =
            eig_symmetric(&normalized(&graph), opts.tol).map_err(ExperimentError::from_spectra)?;
        let edge = exact_cheeger_any(&graph, opts.max_exact_n)
            .map_err(ExperimentError::from_cheeger)?
            .edge;
        Some(PairData { graph, spectrum, edge })
    } else {
        None
    };

    let h = exact.vertex.value;
    let epsilon = match opts.epsilon_override {
        Some(e) if e > h => {
            return Err(ExperimentError::Validation(format!(
                "epsilon override {e} exceeds h = {h}"
            )))
        }
        Some(e) => e,
        None => h,
    };
    let d = graph.degree();
    let table = SharpTable::standard();
    let bipartite = graph.is_bipartite();
    let connected = graph.is_connected();
    let eigs = spectrum.adjacency_eigs();
    let t_n = *eigs.last().expect("n >= 2");
    let tightness_ratio = (sum && connected && !bipartite && h > rational::from_int(0)).then(|| {
        (t_n + 1.0) / rational::to_f64(&bounds::ell(&h, d, bounds::MAIN_CONSTANT))
    });
    let zero = rational::from_int(0);
    let params = (epsilon > zero).then(|| {
        let probe = BoundParams::new(epsilon, d, None);
        BoundParams::new(epsilon, d, Some(probe.zeta_max()))
    });

    let id = instance_id(&descriptor, set, kind);
    let ctx = Context {
        group,
        set,
        gens: &gens,
        graph: &graph,
        op_trace: op.trace(),
        op_frobenius: op.frobenius_sq(),
        spectrum: &spectrum,
        residual: spectrum.reconstruction_residual(&op),
        orthogonality: spectrum.orthogonality_defect(),
        vertex: &exact.vertex,
        edge: &exact.edge,
        sweep_vertex: &sweep_vertex,
        sweep_edge: &sweep_edge,
        pair: pair.as_ref(),
        epsilon,
        params: params.as_ref(),
        table: &table,
        tol: opts.tol,
        cap: opts.max_exact_n,
    };
    let checks: Vec<CheckReport> = ctx
        .run()
        .into_iter()
        .map(|c| c.with_instance(&id))
        .collect();
    let summary = Summary::of(&checks);

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        instance_id: id,
        group: descriptor,
        kind,
        group_core: GroupSection {
            order: n,
            abelian: group.is_abelian(),
            set: set.clone(),
            symmetric: gens.symmetric(),
            identity_free: gens.identity_free(),
            conjugation_closed: gens.conjugation_closed(),
            generates: gens.generates(),
            minimal: gens.minimal(),
            index_two_subgroups: group.index_two_subgroups(),
        },
        graph_core: GraphSection {
            n,
            d,
            loops: graph.loop_total(),
            connected,
            bipartite,
        },
        spectra: SpectraSection {
            tol: opts.tol,
            eigenvalues: eigs.to_vec(),
            t1: eigs[0],
            t2: eigs[1],
            t_n,
            lambda2: 1.0 - eigs[1],
            lambda_n: 1.0 - t_n,
            reconstruction_residual: ctx.residual,
            orthogonality_defect: ctx.orthogonality,
            pair_eigenvalues: pair.as_ref().map(|p| p.spectrum.adjacency_eigs().to_vec()),
        },
        cheeger: CheegerSection {
            vertex: exact.vertex.clone(),
            edge: exact.edge.clone(),
            sweep_vertex: sweep_vertex.clone(),
            sweep_edge: sweep_edge.clone(),
            pair_edge: pair.as_ref().map(|p| p.edge.clone()),
            epsilon,
        },
        bounds: BoundsSection {
            main_lower: bounds::main_lower_bound(&h, d),
            upper_gap: bounds::upper_gap_bound(&h, d),
            sharp_lower: bounds::sharp_lower_bound(&h, d, &table),
            kappa: table.kappa_for(d),
            tightness_ratio,
            params,
        },
        checks,
        summary,
    })
}

struct Context<'a> {
    group: &'a FiniteGroup,
    set: &'a ElementSet,
    gens: &'a GeneratingSet,
    graph: &'a CountGraph,
    op_trace: f64,
    op_frobenius: f64,
    spectrum: &'a Spectrum,
    residual: f64,
    orthogonality: f64,
    vertex: &'a CutWitness,
    edge: &'a CutWitness,
    sweep_vertex: &'a CutWitness,
    sweep_edge: &'a CutWitness,
    pair: Option<&'a PairData>,
    epsilon: Rational,
    params: Option<&'a BoundParams>,
    table: &'a SharpTable,
    tol: f64,
    cap: usize,
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn equality(name: &str, holds: bool) -> CheckReport {
    CheckReport::decided(name, holds, flag(holds), 1.0, if holds { 0.0 } else { -1.0 })
}

fn within(name: &str, lhs: f64, rhs: f64, tol: f64) -> CheckReport {
    let gap = (lhs - rhs).abs();
    CheckReport::decided(name, gap <= tol, lhs, rhs, tol - gap)
}

/// `𝔥²/2 <= λ₂ <= 2𝔥` with [`SLACK`].
fn buser(name: &str, edge_h: &Rational, lambda2: f64) -> CheckReport {
    let eh = rational::to_f64(edge_h);
    let lower = eh * eh / 2.0;
    let upper = 2.0 * eh;
    let holds = lower <= lambda2 + SLACK && lambda2 <= upper + SLACK;
    CheckReport::decided(name, holds, lambda2, upper, (lambda2 - lower).min(upper - lambda2))
        .with_witness(json!({ "edge_h": edge_h.to_string(), "lower": lower, "upper": upper }))
}

impl Context<'_> {
    fn run(&self) -> Vec<CheckReport> {
        let mut out = self.structure_checks();
        out.extend(self.spectral_checks());
        out.extend(self.cheeger_checks());
        out.extend(self.bound_checks());
        out.extend(self.conditional_checks());
        out
    }

    fn sum(&self) -> bool {
        self.graph.kind() == GraphKind::CayleySum
    }

    fn structure_checks(&self) -> Vec<CheckReport> {
        let mut out = vec![equality("count_invariants", self.graph.check_invariants().is_ok())];
        let undirected = is_symmetric_matrix(
            self.group.order(),
            &directed_sum_counts(self.group, self.set),
        );
        let closed = self.group.is_conjugation_closed(self.set);
        out.push(
            equality("undirected_iff_conjugation_closed", undirected == closed)
                .with_witness(json!({ "undirected": undirected, "conjugation_closed": closed })),
        );
        out.push(equality("generating_set_flags", self.gens.flags_consistent(self.group)));
        out.push(match self.pair {
            Some(p) => {
                let squared = self.graph.square_counts();
                let same = p.graph.counts().iter().zip(&squared).all(|(&a, &b)| a as u64 == b)
                    && p.graph.counts().len() == squared.len();
                equality("pair_square_identity", same)
            }
            None => CheckReport::vacuous("pair_square_identity"),
        });
        out
    }

    fn spectral_checks(&self) -> Vec<CheckReport> {
        let bound = 10.0 * self.tol;
        let mut out = vec![
            within("trace_identity", self.spectrum.trace(), self.op_trace, bound),
            within("frobenius_identity", self.spectrum.sum_of_squares(), self.op_frobenius, bound),
        ];
        out.push(if self.graph.n() <= RECONSTRUCTION_MAX_N {
            let worst = self.residual.max(self.orthogonality);
            CheckReport::decided("reconstruction", worst < bound, worst, bound, bound - worst)
        } else {
            CheckReport::vacuous("reconstruction")
        });
        let bfs = self.graph.is_connected();
        let spectral = self.spectrum.is_connected_spectral(self.tol * 1e3);
        out.push(
            equality("connectivity_agreement", bfs == spectral)
                .with_witness(json!({ "bfs": bfs, "spectral": spectral })),
        );
        out.push(match self.pair {
            Some(p) => {
                let mut squares: Vec<f64> =
                    self.spectrum.adjacency_eigs().iter().map(|t| t * t).collect();
                squares.sort_by(|a, b| b.total_cmp(a));
                let worst = squares
                    .iter()
                    .zip(p.spectrum.adjacency_eigs())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                let bound = 100.0 * self.tol;
                CheckReport::decided("pair_spectrum_squares", worst <= bound, worst, bound, bound - worst)
            }
            None => CheckReport::vacuous("pair_spectrum_squares"),
        });
        out
    }

    fn cheeger_checks(&self) -> Vec<CheckReport> {
        let h = self.vertex.value;
        let eh = self.edge.value;
        let d = rational::from_int(self.graph.degree() as i128);
        let sandwich = h / d <= eh && eh <= h;
        let mut out = vec![equality("cheeger_sandwich", sandwich).with_witness(json!({
            "h": h.to_string(),
            "edge_h": eh.to_string(),
        }))];
        let lambda2 = 1.0 - self.spectrum.second_largest().expect("n >= 2");
        out.push(buser("buser", &eh, lambda2));
        out.push(match self.pair {
            Some(p) => buser(
                "buser_pair",
                &p.edge.value,
                1.0 - p.spectrum.second_largest().expect("n >= 2"),
            ),
            None => CheckReport::vacuous("buser_pair"),
        });
        for (name, sweep, exact) in [
            ("sweep_vertex_upper", self.sweep_vertex, self.vertex),
            ("sweep_edge_upper", self.sweep_edge, self.edge),
        ] {
            let (s, e) = (rational::to_f64(&sweep.value), rational::to_f64(&exact.value));
            out.push(CheckReport::decided(name, sweep.value >= exact.value, s, e, s - e));
        }
        let consistent = [self.vertex, self.edge, self.sweep_vertex, self.sweep_edge]
            .iter()
            .all(|w| w.is_consistent(self.graph))
            && self.pair.is_none_or(|p| p.edge.is_consistent(&p.graph));
        out.push(equality("witness_consistency", consistent));
        let complement = self.edge.subset.complement(self.graph.n());
        let forward = edge_boundary_count(self.graph, &self.edge.subset);
        let backward = edge_boundary_count(self.graph, &complement);
        out.push(
            equality("edge_complement_identity", forward == backward)
                .with_witness(json!({ "forward": forward, "backward": backward })),
        );
        out
    }

    fn bound_checks(&self) -> Vec<CheckReport> {
        let h = self.vertex.value;
        let mut out = vec![
            check_theorem_main(self.graph, self.spectrum, &h),
            check_upper_gap(self.graph, self.spectrum, &h),
            check_bis19(self.graph, self.spectrum, &h),
            check_sharp(self.graph, self.spectrum, &h, self.gens.minimal(), self.table),
        ];
        out.extend(check_epsilon_bounds(self.graph, &h, self.gens.minimal()));
        out.push(check_bipartite_lemma(self.group, self.set, self.graph, self.spectrum));
        out.push(match self.params {
            Some(p) => equality("bound_params_consistency", p.is_consistent()),
            None => CheckReport::vacuous("bound_params_consistency"),
        });
        out
    }

    fn conditional_checks(&self) -> Vec<CheckReport> {
        if !self.sum() || self.params.is_none() {
            return vec![
                CheckReport::vacuous("vertex_expansion_complement"),
                CheckReport::vacuous("aexists"),
                CheckReport::vacuous("dichotomy"),
            ];
        }
        let params = self.params.expect("checked above");
        let h = self.vertex.value;
        let eps = self.epsilon;
        let n = self.group.order();
        let complement = self.vertex.subset.complement(n);
        let expansion =
            check_vertex_expansion_complement(self.group, self.set, &complement, &eps, &h);
        let zeta = params.zeta.expect("zeta supplied");
        let search =
            find_aexists_witness(self.group, self.set, self.spectrum, zeta, &eps, &h, self.cap);

        // an index-two subgroup avoiding S meets every condition with all left sides zero
        let d = self.set.len() as f64;
        let e = rational::to_f64(&eps);
        let (a, beta) = match (&search.witness, self.graph.is_bipartite()) {
            (Some(a), _) => (a.clone(), params.beta.expect("zeta supplied")),
            (None, true) => match self
                .group
                .index_two_subgroups()
                .into_iter()
                .find(|sub| !sub.intersects(self.set))
            {
                Some(sub) => (sub, e * e / (8.0 * d * (d + 1.0))),
                None => (self.vertex.subset.clone(), beta_for_zeta(zeta, self.set.len())),
            },
            (None, false) => (self.vertex.subset.clone(), beta_for_zeta(zeta, self.set.len())),
        };
        let per_g: Vec<CheckReport> = (0..n)
            .map(|g| check_dichotomy(self.group, self.set, &a, g, beta, &eps, &h))
            .collect();
        vec![expansion, search.report, aggregate("dichotomy", per_g)]
    }
}

/// Folds per-element reports: any failure fails, otherwise any pass passes.
fn aggregate(name: &str, reports: Vec<CheckReport>) -> CheckReport {
    let worst = reports
        .iter()
        .filter(|r| r.verdict != Verdict::Vacuous)
        .min_by(|a, b| {
            let key = |r: &CheckReport| (r.verdict != Verdict::Fail, r.margin.unwrap_or(f64::INFINITY));
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        });
    match worst {
        None => CheckReport::vacuous(name),
        Some(r) => {
            let mut r = r.clone();
            r.check = name.to_string();
            let checked = reports.iter().filter(|x| x.hypotheses_held).count();
            if let Some(serde_json::Value::Object(map)) = r.witness.as_mut() {
                map.insert("elements_checked".to_string(), json!(checked));
            }
            r
        }
    }
}
