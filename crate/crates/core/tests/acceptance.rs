//! Acceptance run: one line per criterion, nonzero exit on any unexpected
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cayley_spectra::bounds::{aexists_measures, check_dichotomy, dichotomy_counts, neighbourhood_excess};
use cayley_spectra::experiments::{
    analyze_group, default_corpus, scan, verify, AnalysisReport, CorpusEntry, GroupDescriptor,
    Manifest, Options, ScanItem, ScanRow, SetSource, SetSpec, CSV_HEADER,
};
use cayley_spectra::graph::{build_cayley, build_cayley_sum, build_pair_multigraph, directed_sum_counts, is_symmetric_matrix};
use cayley_spectra::group::{ElementSet, FamilySpec, FiniteGroup};
use cayley_spectra::{GeneratingSet, GraphKind, Verdict};
use common::{Q, naive_cheeger};
use rayon::prelude::*;

const MARGIN: f64 = 1e-8;
const TIME_BUDGET: Duration = Duration::from_secs(120);
const KAPPA: [(i128, usize); 8] = [
    (477, 3),
    (330, 4),
    (257, 5),
    (214, 6),
    (187, 7),
    (167, 8),
    (153, 9),
    (142, 10),
];

struct Instance {
    entry: CorpusEntry,
    group: FiniteGroup,
    report: AnalysisReport,
    counts: Vec<Vec<i64>>,
}

impl Instance {
    fn label(&self) -> String {
        format!("{} {:?} {}", self.entry.family, self.entry.set.as_slice(), self.entry.kind)
    }

    fn sum(&self) -> bool {
        self.entry.kind == GraphKind::CayleySum
    }

    fn set(&self) -> Vec<usize> {
        self.entry.set.as_slice().to_vec()
    }

    fn h(&self) -> Q {
        to_q(&self.report.h())
    }

    fn d(&self) -> usize {
        self.report.graph_core.d
    }

    fn n(&self) -> usize {
        self.report.graph_core.n
    }

    fn connected(&self) -> bool {
        self.report.graph_core.connected
    }

    fn non_bipartite(&self) -> bool {
        self.connected() && !common::two_colourable(&self.counts)
    }
}

fn to_q(r: &cayley_spectra::Rational) -> Q {
    Q::new(*r.numer(), *r.denom())
}

fn f(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// `-1 + h⁴/(κ d⁸)` evaluated from exact rationals.
fn lower(h: &Q, d: usize, kappa: i128) -> f64 {
    let h4 = h * h * h * h;
    let d8 = (d as i128).pow(8);
    f(&(h4 / Q::from_integer(kappa * d8))) - 1.0
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Outcome { failures: Vec::new(), summary: summary.into() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Ledger {
    unexpected: usize,
}

impl Ledger {
    fn print(&mut self, id: &str, outcome: Outcome) {
        self.emit(id, outcome, &[]);
    }

    /// Failures matching `known` are still printed as FAIL but do not set the
    /// exit code.
    fn emit(&mut self, id: &str, outcome: Outcome, known: &[&str]) {
        if outcome.failures.is_empty() {
            println!("criterion {id}: PASS {}", outcome.summary);
            return;
        }
        let expected = outcome
            .failures
            .iter()
            .all(|f| known.iter().any(|k| f.contains(k)));
        if !expected {
            self.unexpected += 1;
        }
        let shown: Vec<&String> = outcome.failures.iter().take(5).collect();
        println!(
            "criterion {id}: FAIL {} ({} failure(s){}): {}",
            outcome.summary,
            outcome.failures.len(),
            if expected { ", known counterexample" } else { "" },
            shown.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")
        );
    }
}

fn load_corpus(opts: &Options) -> (Vec<Instance>, Vec<String>, Duration) {
    let start = Instant::now();
    let entries = default_corpus(0);
    let results: Vec<Result<Instance, String>> = entries
        .into_par_iter()
        .map(|entry| {
            let group = entry.family.build().map_err(|e| e.to_string())?;
            let descriptor = GroupDescriptor::family(&entry.family, &group);
            let report = analyze_group(&group, descriptor, &entry.set, entry.kind, opts)
                .map_err(|e| format!("{} {:?}: {e}", entry.family, entry.set.as_slice()))?;
            let counts = match entry.kind {
                GraphKind::Cayley => common::cayley_counts(&group, entry.set.as_slice()),
                _ => common::sum_counts(&group, entry.set.as_slice()),
            };
            Ok(Instance { entry, group, report, counts })
        })
        .collect();
    let elapsed = start.elapsed();
    let mut ok = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(i) => ok.push(i),
            Err(e) => errors.push(e),
        }
    }
    (ok, errors, elapsed)
}

fn criterion_1(corpus: &[Instance], errors: &[String], elapsed: Duration) -> Outcome {
    let mut out = Outcome::new(format!(
        "main lower bound over {} instances in {:.1}s",
        corpus.len(),
        elapsed.as_secs_f64()
    ));
    out.require(corpus.len() >= 200, || format!("only {} instances", corpus.len()));
    out.require(elapsed < TIME_BUDGET, || format!("took {:.1}s", elapsed.as_secs_f64()));
    for e in errors {
        out.failures.push(format!("error {e}"));
    }
    let mut decided = 0;
    for inst in corpus.iter().filter(|i| i.sum()) {
        let verdict = inst.report.check("theorem_main").map(|c| c.verdict);
        if inst.non_bipartite() {
            decided += 1;
            let bound = lower(&inst.h(), inst.d(), 512);
            let margin = inst.report.spectra.t_n - bound;
            out.require(margin > MARGIN, || format!("{} margin {margin:e}", inst.label()));
            out.require(verdict == Some(Verdict::Pass), || format!("{} verdict {verdict:?}", inst.label()));
        } else {
            out.require(verdict == Some(Verdict::Vacuous), || format!("{} verdict {verdict:?}", inst.label()));
        }
    }
    out.require(decided > 0, || "no decided sum-graph instance".into());
    out.summary.push_str(&format!(", {decided} decided"));
    out
}

fn criterion_2(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("t2 <= 1 - h^2/(2d^2)");
    for inst in corpus.iter().filter(|i| i.connected()) {
        let h = inst.h();
        let d = inst.d() as i128;
        let bound = 1.0 - f(&(h * h / Q::from_integer(2 * d * d)));
        let t2 = inst.report.spectra.t2;
        out.require(t2 <= bound + MARGIN, || format!("{} t2={t2} bound={bound}", inst.label()));
        let verdict = inst.report.check("upper_gap").map(|c| c.verdict);
        out.require(verdict == Some(Verdict::Pass), || format!("{} verdict {verdict:?}", inst.label()));
    }
    out
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("Cayley graphs: lambda_n < 2 - h^4/(512 d^8)");
    let mut decided = 0;
    for inst in corpus.iter().filter(|i| !i.sum() && i.n() != 3 && i.non_bipartite()) {
        decided += 1;
        let bound = 1.0 - lower(&inst.h(), inst.d(), 512);
        let lambda_n = inst.report.spectra.lambda_n;
        out.require(lambda_n < bound, || format!("{} lambda_n={lambda_n} bound={bound}", inst.label()));
        let verdict = inst.report.check("cayley_largest_laplacian").map(|c| c.verdict);
        out.require(verdict == Some(Verdict::Pass), || format!("{} verdict {verdict:?}", inst.label()));
    }
    out.summary.push_str(&format!(" ({decided} decided)"));
    out
}

/// No nonempty proper symmetric subset of `s` generates the group.
fn naive_minimal(group: &FiniteGroup, s: &[usize]) -> bool {
    let n = group.order();
    let generates = |sub: &[usize]| {
        let mut seen = BTreeSet::from([group.identity()]);
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &t in sub {
                let y = group.mul(x, t);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.len() == n
    };
    (1u32..(1 << s.len()) - 1).all(|mask| {
        let sub: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        let symmetric = sub.iter().all(|&x| sub.contains(&group.inv(x)));
        !(symmetric && generates(&sub))
    })
}

fn criterion_4(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("sharp bounds with the kappa table");
    let mut decided = 0;
    for inst in corpus {
        let minimal = naive_minimal(&inst.group, &inst.set());
        out.require(minimal == inst.report.group_core.minimal, || {
            format!("{} minimal flag {}", inst.label(), inst.report.group_core.minimal)
        });
        let verdict = inst.report.check("sharp").map(|c| c.verdict);
        let kappa = KAPPA.iter().filter(|&&(_, d0)| d0 <= inst.d()).map(|&(k, _)| k).next_back();
        match (kappa, minimal && inst.non_bipartite()) {
            (Some(kappa), true) => {
                decided += 1;
                let bound = lower(&inst.h(), inst.d(), kappa);
                let tn = inst.report.spectra.t_n;
                out.require(tn > bound, || format!("{} t_n={tn} bound={bound}", inst.label()));
                out.require(verdict == Some(Verdict::Pass), || format!("{} verdict {verdict:?}", inst.label()));
            }
            _ => out.require(verdict == Some(Verdict::Vacuous), || format!("{} verdict {verdict:?}", inst.label())),
        }
    }
    out.require(decided > 0, || "no instance met the hypotheses".into());
    out.summary.push_str(&format!(" ({decided} decided)"));
    out
}

fn library_counts(inst: &Instance, pair: bool) -> Vec<Vec<i64>> {
    let sum = inst.sum();
    let gens = GeneratingSet::validate(&inst.group, &inst.entry.set, sum).expect("corpus set");
    let graph = match (sum, pair) {
        (true, true) => build_pair_multigraph(&inst.group, &gens).expect("sum graph"),
        (true, false) => build_cayley_sum(&inst.group, &gens).expect("sum graph"),
        _ => build_cayley(&inst.group, &gens),
    };
    let n = graph.n();
    (0..n).map(|u| (0..n).map(|v| graph.count(u, v) as i64).collect()).collect()
}

fn criterion_5a(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("pair multigraph counts equal the squared sum-graph counts");
    let mut checked = 0;
    for inst in corpus.iter().filter(|i| i.sum()) {
        checked += 1;
        out.require(library_counts(inst, false) == inst.counts, || format!("{} graph counts", inst.label()));
        let pair = library_counts(inst, true);
        out.require(pair == common::matmul(&inst.counts, &inst.counts), || format!("{} M != C^2", inst.label()));
        out.require(pair == common::pair_counts(&inst.group, &inst.set()), || format!("{} M != naive", inst.label()));
    }
    out.summary.push_str(&format!(" ({checked} sum graphs)"));
    out
}

fn criterion_5b(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("bipartite iff an index-two subgroup avoids S");
    let (mut yes, mut no) = (0, 0);
    for inst in corpus.iter().filter(|i| i.sum()) {
        let subgroups = common::index_two_by_labelling(&inst.group, &inst.set());
        let library: BTreeSet<Vec<usize>> = inst
            .report
            .group_core
            .index_two_subgroups
            .iter()
            .map(|s| s.as_slice().to_vec())
            .collect();
        out.require(library == subgroups, || format!("{} index-two subgroups differ", inst.label()));
        let avoiding = subgroups.iter().any(|h| h.iter().all(|x| !inst.entry.set.contains(*x)));
        let bfs = common::two_colourable(&inst.counts);
        let spectral = (inst.report.spectra.t_n + 1.0).abs() < 1e-8;
        out.require(avoiding == bfs && bfs == spectral && bfs == inst.report.graph_core.bipartite, || {
            format!("{} avoiding={avoiding} bfs={bfs} spectral={spectral}", inst.label())
        });
        if bfs {
            yes += 1;
        } else {
            no += 1;
        }
    }
    out.require(yes > 0 && no > 0, || "battery lacks one side".into());
    out.summary.push_str(&format!(" ({yes} bipartite, {no} not)"));
    out
}

fn criterion_5c() -> Outcome {
    let mut out = Outcome::new("undirected iff conjugation-closed");
    let (mut closed, mut open, mut dihedral_open) = (0, 0, 0);
    for family in ["dihedral:3", "dihedral:4", "symmetric:3", "quaternion8", "cyclic:6", "dihedral:5"] {
        let spec: FamilySpec = family.parse().expect("family");
        let group = spec.build().expect("group");
        let n = group.order();
        for mask in 1u64..(1 << n) {
            let set = ElementSet::from_mask(mask);
            let naive = common::conjugation_closed(&group, set.as_slice());
            let undirected = is_symmetric_matrix(n, &directed_sum_counts(&group, &set));
            let oracle_undirected = common::is_symmetric(&common::sum_counts(&group, set.as_slice()));
            out.require(
                naive == undirected && undirected == oracle_undirected && naive == group.is_conjugation_closed(&set),
                || format!("{family} {:?}", set.as_slice()),
            );
            if naive {
                closed += 1;
            } else {
                open += 1;
                if family.starts_with("dihedral") {
                    dihedral_open += 1;
                }
            }
        }
    }
    out.require(closed > 0 && dihedral_open > 0, || "battery lacks counterexamples".into());
    out.summary.push_str(&format!(" ({closed} closed, {open} not, {dihedral_open} dihedral counterexamples)"));
    out
}

fn buser_holds(edge_h: &Q, lambda2: f64) -> bool {
    let e = f(edge_h);
    e * e / 2.0 <= lambda2 + MARGIN && lambda2 <= 2.0 * e + MARGIN
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("Cheeger sandwich, Buser and brute-force agreement");
    let mut oracle_checked = 0;
    for inst in corpus {
        let h = inst.h();
        let eh = to_q(&inst.report.cheeger.edge.value);
        let d = Q::from_integer(inst.d() as i128);
        out.require(h / d <= eh && eh <= h, || format!("{} sandwich h={h} edge={eh}", inst.label()));
        out.require(buser_holds(&eh, inst.report.spectra.lambda2), || format!("{} buser", inst.label()));
        if let (Some(pe), Some(eigs)) = (&inst.report.cheeger.pair_edge, &inst.report.spectra.pair_eigenvalues) {
            out.require(buser_holds(&to_q(&pe.value), 1.0 - eigs[1]), || format!("{} pair buser", inst.label()));
        }
        if inst.n() > 12 {
            continue;
        }
        oracle_checked += 1;
        let naive = naive_cheeger(&inst.counts);
        let c = &inst.report.cheeger;
        out.require(naive.h == h && naive.h_witness == c.vertex.subset.as_slice(), || {
            format!("{} vertex {} {:?} vs {} {:?}", inst.label(), naive.h, naive.h_witness, h, c.vertex.subset.as_slice())
        });
        out.require(naive.edge_h == eh && naive.edge_witness == c.edge.subset.as_slice(), || {
            format!("{} edge {} {:?} vs {} {:?}", inst.label(), naive.edge_h, naive.edge_witness, eh, c.edge.subset.as_slice())
        });
        if let Some(pe) = &c.pair_edge {
            let pair = naive_cheeger(&common::pair_counts(&inst.group, &inst.set()));
            out.require(pair.edge_h == to_q(&pe.value) && pair.edge_witness == pe.subset.as_slice(), || {
                format!("{} pair edge {} vs {}", inst.label(), pair.edge_h, pe.value)
            });
        }
    }
    out.summary.push_str(&format!(" ({oracle_checked} instances with n <= 12 brute-forced)"));
    out
}

/// Literal reading over every Cayley graph, the failures are reported with
/// the instance so the K3 counterexample shows up by name.
fn criterion_7(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("h <= d-1 and h <= 2 in exact rationals");
    let (mut sums, mut cayleys, mut minimal) = (0, 0, 0);
    for inst in corpus {
        let h = inst.h();
        let d_minus_one = Q::from_integer(inst.d() as i128 - 1);
        if inst.sum() {
            if !inst.non_bipartite() {
                continue;
            }
            sums += 1;
            out.require(h <= d_minus_one, || format!("{} h={h} > d-1", inst.label()));
            if inst.report.group_core.minimal {
                minimal += 1;
                out.require(h <= Q::from_integer(2), || format!("{} h={h} > 2", inst.label()));
            }
        } else {
            cayleys += 1;
            out.require(h <= d_minus_one, || {
                format!("Cayley graph of order {} {} h={h} > d-1={d_minus_one}", inst.n(), inst.label())
            });
        }
        for name in ["epsilon_sum", "epsilon_cayley", "epsilon_minimal"] {
            let verdict = inst.report.check(name).map(|c| c.verdict);
            out.require(verdict != Some(Verdict::Fail), || format!("{} {name} failed", inst.label()));
        }
    }
    out.summary.push_str(&format!(" ({sums} sum, {minimal} minimal sum, {cayleys} Cayley)"));
    out
}

fn fixture(family: &str, set: &str, expected: &[f64], out: &mut Outcome) {
    let spec: FamilySpec = family.parse().expect("family");
    let group = spec.build().expect("group");
    let set = SetSpec(set.split(',').map(|x| x.parse().unwrap()).collect()).resolve(&group).expect("set");
    let report = analyze_group(&group, GroupDescriptor::family(&spec, &group), &set, GraphKind::Cayley, &Options::default())
        .expect("fixture");
    let eigs = &report.spectra.eigenvalues;
    let close = eigs.len() == expected.len() && eigs.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-9);
    out.require(close, || format!("{family} {set:?}: {eigs:?}"));
}

fn criterion_8(corpus: &[Instance], opts: &Options) -> Outcome {
    let mut out = Outcome::new("trace, Frobenius, reconstruction and fixtures");
    let bound = 10.0 * opts.tol;
    let mut worst: f64 = 0.0;
    for inst in corpus {
        let d = inst.d() as f64;
        let n = inst.n();
        let trace: f64 = (0..n).map(|i| inst.counts[i][i] as f64).sum::<f64>() / d;
        let frob: f64 = inst.counts.iter().flatten().map(|&c| (c * c) as f64).sum::<f64>() / (d * d);
        let eigs = &inst.report.spectra.eigenvalues;
        let t_gap = (eigs.iter().sum::<f64>() - trace).abs();
        let f_gap = (eigs.iter().map(|t| t * t).sum::<f64>() - frob).abs();
        let residual = inst.report.spectra.reconstruction_residual;
        worst = worst.max(t_gap).max(f_gap).max(residual);
        out.require(t_gap <= bound, || format!("{} trace gap {t_gap:e}", inst.label()));
        out.require(f_gap <= bound, || format!("{} frobenius gap {f_gap:e}", inst.label()));
        if n <= 24 {
            out.require(residual < bound, || format!("{} residual {residual:e}", inst.label()));
        }
    }
    let third = -1.0 / 3.0;
    fixture("cyclic:4", "1,2,3", &[1.0, third, third, third], &mut out);
    fixture("cyclic:4", "1,3", &[1.0, 0.0, 0.0, -1.0], &mut out);
    out.summary.push_str(&format!(" (worst deviation {worst:e})"));
    out
}

fn scan_csv(opts: &Options) -> String {
    let items: Vec<ScanItem> = default_corpus(0)
        .into_iter()
        .map(|e| ScanItem {
            group: cayley_spectra::experiments::GroupSource::Family(e.family),
            set: SetSource::Explicit(SetSpec(e.set.iter().map(|x| x as i64).collect())),
            kind: e.kind,
        })
        .collect();
    let mut text = format!("{CSV_HEADER}\n");
    for row in scan(&items, opts) {
        text.push_str(&ScanRow::to_csv(&row));
        text.push('\n');
    }
    text
}

fn verify_text(opts: &Options) -> String {
    let manifest: Manifest = "@default\ncyclic:8 1,4,7 cayley_sum bipartite=false\n".parse().expect("manifest");
    verify(&manifest, opts, 0).render()
}

fn criterion_9(opts: &Options) -> Outcome {
    let mut out = Outcome::new("scan and verify reruns are byte-identical");
    let (a, b) = (scan_csv(opts), scan_csv(opts));
    out.require(a == b, || "scan output differs".into());
    let (x, y) = (verify_text(opts), verify_text(opts));
    out.require(x == y, || "verify output differs".into());
    out.summary.push_str(&format!(" ({} + {} bytes)", a.len(), x.len()));
    out
}

fn criterion_10(corpus: &[Instance]) -> Outcome {
    let mut out = Outcome::new("conditional checks never fail; set arithmetic matches the oracle");
    let mut passes = 0;
    for inst in corpus {
        for name in ["aexists", "dichotomy"] {
            let verdict = inst.report.check(name).map(|c| c.verdict);
            out.require(verdict != Some(Verdict::Fail), || format!("{} {name} failed", inst.label()));
            passes += usize::from(verdict == Some(Verdict::Pass));
        }
    }

    // Z/8 with {1,7} is bipartite; adding the central involution 4 breaks it
    let group = FiniteGroup::cyclic(8).expect("Z8");
    let bipartite = ElementSet::new([1, 7]);
    let perturbed = ElementSet::new([1, 4, 7]);
    let n = group.order();
    let opts = Options::default();
    let descriptor = || GroupDescriptor::family(&FamilySpec::Cyclic(8), &group);
    let report = analyze_group(&group, descriptor(), &perturbed, GraphKind::CayleySum, &opts).expect("near-bipartite");
    out.require(!report.graph_core.bipartite && report.graph_core.connected, || "perturbed graph is bipartite".into());
    out.require(!report.failed(), || "near-bipartite instance has a failed check".into());
    let base = analyze_group(&group, descriptor(), &bipartite, GraphKind::CayleySum, &opts).expect("bipartite");
    out.require(base.check("dichotomy").map(|c| c.verdict) == Some(Verdict::Pass), || "bipartite dichotomy not exercised".into());

    let mut nonzero = 0;
    for set in [&bipartite, &perturbed] {
        for mask in 1u64..(1 << n) {
            let a = ElementSet::from_mask(mask);
            let a_set = common::set_of(a.iter());
            let naive = common::naive_conditions(&group, set.as_slice(), &a_set);
            let m = aexists_measures(&group, set, &a);
            let agree = m.size == a.len()
                && m.sas_excess == naive.sas_excess
                && m.right_overlap.0 == naive.right_overlap
                && m.right_symdiff.0 == naive.right_symdiff
                && m.left_overlap.0 == naive.left_overlap
                && m.left_symdiff.0 == naive.left_symdiff;
            out.require(agree, || format!("measures differ for A={:?} S={:?}", a.as_slice(), set.as_slice()));
            let inv_s = common::product(&group, &common::inverse(&group, &a_set), &common::set_of(set.iter()));
            let excess = inv_s.difference(&a_set).count();
            out.require(neighbourhood_excess(&group, set, &a) == excess, || format!("excess for A={:?}", a.as_slice()));
            for g in 0..n {
                out.require(dichotomy_counts(&group, &a, g) == common::naive_dichotomy_counts(&group, &a_set, g), || {
                    format!("dichotomy counts for A={:?} g={g}", a.as_slice())
                });
            }
            if m.sas_excess > 0 && m.right_overlap.0 > 0 && m.left_symdiff.0 > 0 {
                nonzero += 1;
            }
        }
    }
    out.require(nonzero > 0, || "no nonzero measures exercised".into());

    // evens is the index-two subgroup avoiding {1,7}: every left side vanishes
    let evens = ElementSet::new([0, 2, 4, 6]);
    let h = base.h();
    let eps = h;
    let d = 2.0;
    let beta = cayley_spectra::rational::to_f64(&eps).powi(2) / (8.0 * d * (d + 1.0));
    for g in 0..n {
        let r = check_dichotomy(&group, &bipartite, &evens, g, beta, &eps, &h);
        out.require(r.verdict == Verdict::Pass, || format!("dichotomy on evens g={g}: {:?}", r.verdict));
    }
    out.summary.push_str(&format!(" ({passes} corpus passes, {nonzero} sets with nonzero measures)"));
    out
}

fn main() {
    let opts = Options::default();
    let mut ledger = Ledger { unexpected: 0 };
    let (corpus, errors, elapsed) = load_corpus(&opts);

    ledger.print("1", criterion_1(&corpus, &errors, elapsed));
    ledger.print("2", criterion_2(&corpus));
    ledger.print("3", criterion_3(&corpus));
    ledger.print("4", criterion_4(&corpus));
    ledger.print("5a", criterion_5a(&corpus));
    ledger.print("5b", criterion_5b(&corpus));
    ledger.print("5c", criterion_5c());
    ledger.print("6", criterion_6(&corpus));
    // K3 = Cay(Z/3, {1,2}) has h = 2 > d - 1 = 1
    ledger.emit("7", criterion_7(&corpus), &["Cayley graph of order 3 "]);
    ledger.print("8", criterion_8(&corpus, &opts));
    ledger.print("9", criterion_9(&opts));
    ledger.print("10", criterion_10(&corpus));

    if ledger.unexpected > 0 {
        println!("acceptance: {} criterion line(s) failed", ledger.unexpected);
        std::process::exit(1);
    }
    println!("acceptance: no unexpected failures");
}
