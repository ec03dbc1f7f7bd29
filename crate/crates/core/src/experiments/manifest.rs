//! Corpus manifests, one instance per line:
//!
//! ```text
//! # comment
//! @default
//! cyclic:5 1,4 cayley_sum h=1/2 bipartite=false theorem_main=pass
//! file:tables/q8.tbl 2,3,4,5 cayley
//! ```
//!
//! `@default` expands to the shipped corpus. Trailing `key=value` pairs are
//! expectations, each verified as an extra check named `expect:<key>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use super::analysis::{analyze, analyze_group, AnalysisReport, Summary};
use super::corpus::default_corpus;
use super::instance::{parse_kind, GroupDescriptor, GroupSource, InstanceSpec};
use super::{ExperimentError, Options};
use crate::bounds::{CheckReport, Verdict};
use crate::rational::{self, Rational};

/// Tolerance for floating-point expectations.
const FLOAT_EXPECTATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    Rational { key: String, value: Rational },
    Float { key: String, value: f64 },
    Flag { key: String, value: bool },
    Count { key: String, value: usize },
    Verdict { check: String, value: Verdict },
}

impl Expectation {
    fn parse(key: &str, value: &str) -> Result<Self, ExperimentError> {
        let bad = || ExperimentError::Parse(format!("bad expectation `{key}={value}`"));
        let key_s = key.to_string();
        Ok(match key {
            "h" | "edge_h" | "pair_edge_h" => Expectation::Rational {
                key: key_s,
                value: value.parse().map_err(|_| bad())?,
            },
            "t_1" | "t_2" | "t_n" | "lambda_2" | "lambda_n" => Expectation::Float {
                key: key_s,
                value: value.parse().map_err(|_| bad())?,
            },
            "bipartite" | "connected" | "minimal" | "conjugation_closed" | "abelian" => {
                Expectation::Flag {
                    key: key_s,
                    value: value.parse().map_err(|_| bad())?,
                }
            }
            "n" | "d" | "loops" | "index_two_subgroups" => Expectation::Count {
                key: key_s,
                value: value.parse().map_err(|_| bad())?,
            },
            check => Expectation::Verdict {
                check: check.to_string(),
                value: match value {
                    "pass" => Verdict::Pass,
                    "fail" => Verdict::Fail,
                    "vacuous" => Verdict::Vacuous,
                    _ => return Err(bad()),
                },
            },
        })
    }

    fn key(&self) -> &str {
        match self {
            Expectation::Rational { key, .. }
            | Expectation::Float { key, .. }
            | Expectation::Flag { key, .. }
            | Expectation::Count { key, .. } => key,
            Expectation::Verdict { check, .. } => check,
        }
    }

    fn evaluate(&self, report: &AnalysisReport) -> CheckReport {
        let name = format!("expect:{}", self.key());
        let exact = |holds: bool, lhs: f64, rhs: f64, shown: String| {
            CheckReport::decided(&name, holds, lhs, rhs, if holds { 0.0 } else { -1.0 })
                .with_witness(serde_json::json!({ "observed": shown }))
        };
        match self {
            Expectation::Rational { key, value } => {
                let observed = match key.as_str() {
                    "h" => Some(report.cheeger.vertex.value),
                    "edge_h" => Some(report.cheeger.edge.value),
                    _ => report.cheeger.pair_edge.as_ref().map(|w| w.value),
                };
                match observed {
                    Some(o) => exact(o == *value, rational::to_f64(&o), rational::to_f64(value), o.to_string()),
                    None => exact(false, f64::NAN, rational::to_f64(value), "absent".into()),
                }
            }
            Expectation::Float { key, value } => {
                let s = &report.spectra;
                let observed = match key.as_str() {
                    "t_1" => s.t1,
                    "t_2" => s.t2,
                    "t_n" => s.t_n,
                    "lambda_2" => s.lambda2,
                    _ => s.lambda_n,
                };
                let gap = (observed - value).abs();
                CheckReport::decided(&name, gap <= FLOAT_EXPECTATION_TOL, observed, *value, FLOAT_EXPECTATION_TOL - gap)
            }
            Expectation::Flag { key, value } => {
                let observed = match key.as_str() {
                    "bipartite" => report.graph_core.bipartite,
                    "connected" => report.graph_core.connected,
                    "minimal" => report.group_core.minimal,
                    "conjugation_closed" => report.group_core.conjugation_closed,
                    _ => report.group_core.abelian,
                };
                let f = |b: bool| if b { 1.0 } else { 0.0 };
                exact(observed == *value, f(observed), f(*value), observed.to_string())
            }
            Expectation::Count { key, value } => {
                let observed = match key.as_str() {
                    "n" => report.graph_core.n,
                    "d" => report.graph_core.d,
                    "loops" => report.graph_core.loops as usize,
                    _ => report.group_core.index_two_subgroups.len(),
                };
                exact(observed == *value, observed as f64, *value as f64, observed.to_string())
            }
            Expectation::Verdict { check, value } => match report.check(check) {
                Some(c) => exact(c.verdict == *value, 0.0, 0.0, c.verdict.to_string()),
                None => exact(false, 0.0, 0.0, "no such check".into()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ManifestLine {
    Default,
    Instance {
        line: usize,
        spec: InstanceSpec,
        expectations: Vec<Expectation>,
    },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Manifest {
    pub lines: Vec<ManifestLine>,
}

impl FromStr for Manifest {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_manifest(s, None)
    }
}

/// Relative `file:` paths resolve against `base_dir` when given.
pub fn parse_manifest(text: &str, base_dir: Option<&Path>) -> Result<Manifest, ExperimentError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let at = |e: ExperimentError| match e {
            ExperimentError::Parse(m) => ExperimentError::Parse(format!("line {line_no}: {m}")),
            other => other,
        };
        if content.starts_with('@') {
            if content == "@default" {
                lines.push(ManifestLine::Default);
                continue;
            }
            return Err(at(ExperimentError::Parse(format!("unknown directive `{content}`"))));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() < 3 {
            return Err(at(ExperimentError::Parse(format!(
                "expected `<group> <set> <kind> [key=value ...]`, got `{content}`"
            ))));
        }
        let mut group: GroupSource = fields[0].parse().map_err(at)?;
        if let (GroupSource::File(path), Some(base)) = (&group, base_dir) {
            if path.is_relative() {
                group = GroupSource::File(base.join(path));
            }
        }
        let spec = InstanceSpec::new(group, fields[1].parse().map_err(at)?, parse_kind(fields[2]).map_err(at)?);
        let expectations = fields[3..]
            .iter()
            .map(|kv| {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| ExperimentError::Parse(format!("expected key=value, got `{kv}`")))?;
                Expectation::parse(k, v)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(at)?;
        lines.push(ManifestLine::Instance { line: line_no, spec, expectations });
    }
    Ok(Manifest { lines })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifySummary {
    pub instances: usize,
    pub per_check: BTreeMap<String, Summary>,
    pub totals: Summary,
    /// `<instance> <check>: lhs=… rhs=…` for every failed check.
    pub failures: Vec<String>,
    /// Instances that could not be analysed.
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl VerifySummary {
    pub fn exit_code(&self) -> i32 {
        if self.totals.fail > 0 || !self.errors.is_empty() {
            1
        } else {
            0
        }
    }

    fn record(&mut self, checks: &[CheckReport]) {
        for c in checks {
            self.per_check.entry(c.check.clone()).or_default().add(c.verdict);
            self.totals.add(c.verdict);
            if c.failed() {
                self.failures.push(format!(
                    "{} {}: lhs={} rhs={}",
                    c.instance_id,
                    c.check,
                    c.lhs.map_or("-".into(), |v| v.to_string()),
                    c.rhs.map_or("-".into(), |v| v.to_string()),
                ));
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let _ = writeln!(out, "instances: {}", self.instances);
        let width = self.per_check.keys().map(String::len).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<width$} {:>7} {:>7} {:>7}", "check", "pass", "fail", "vacuous");
        for (name, s) in &self.per_check {
            let _ = writeln!(out, "{name:<width$} {:>7} {:>7} {:>7}", s.pass, s.fail, s.vacuous);
        }
        let t = self.totals;
        let _ = writeln!(out, "{:<width$} {:>7} {:>7} {:>7}", "total", t.pass, t.fail, t.vacuous);
        for f in &self.failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        for e in &self.errors {
            let _ = writeln!(out, "ERROR {e}");
        }
        out
    }
}

enum Job<'m> {
    Corpus(super::corpus::CorpusEntry),
    Listed(usize, &'m InstanceSpec, &'m [Expectation]),
}

/// Runs every instance of the manifest; `seed` drives the default corpus.
pub fn verify(manifest: &Manifest, opts: &Options, seed: u64) -> VerifySummary {
    let mut jobs = Vec::new();
    for line in &manifest.lines {
        match line {
            ManifestLine::Default => jobs.extend(default_corpus(seed).into_iter().map(Job::Corpus)),
            ManifestLine::Instance { line, spec, expectations } => {
                jobs.push(Job::Listed(*line, spec, expectations))
            }
        }
    }
    let results: Vec<Result<Vec<CheckReport>, String>> = jobs
        .par_iter()
        .map(|job| match job {
            Job::Corpus(entry) => {
                let group = entry.family.build().map_err(|e| e.to_string())?;
                let descriptor = GroupDescriptor::family(&entry.family, &group);
                analyze_group(&group, descriptor, &entry.set, entry.kind, opts)
                    .map(|r| r.checks)
                    .map_err(|e| format!("{} {:?} {}: {e}", entry.family, entry.set.as_slice(), entry.kind))
            }
            Job::Listed(line, spec, expectations) => {
                let report = analyze(spec, opts).map_err(|e| format!("line {line}: {spec}: {e}"))?;
                let mut checks = report.checks.clone();
                checks.extend(
                    expectations
                        .iter()
                        .map(|x| x.evaluate(&report).with_instance(&report.instance_id)),
                );
                Ok(checks)
            }
        })
        .collect();

    let mut summary = VerifySummary {
        instances: jobs.len(),
        ..VerifySummary::default()
    };
    if jobs.is_empty() {
        summary.warnings.push("manifest lists no instances".to_string());
    }
    for result in results {
        match result {
            Ok(checks) => summary.record(&checks),
            Err(e) => summary.errors.push(e),
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines() {
        let m: Manifest = "# header\n\n@default\ncyclic:5 1,4 cayley_sum h=1/2 theorem_main=pass\n"
            .parse()
            .unwrap();
        assert_eq!(m.lines.len(), 2);
        assert_eq!(m.lines[0], ManifestLine::Default);
        assert!(matches!("@bogus".parse::<Manifest>(), Err(ExperimentError::Parse(_))));
        assert!(matches!("cyclic:5 1,4".parse::<Manifest>(), Err(ExperimentError::Parse(_))));
        assert!(matches!(
            "cyclic:5 1,4 cayley h=abc".parse::<Manifest>(),
            Err(ExperimentError::Parse(_))
        ));
    }

    #[test]
    fn expectations_and_exit_codes() {
        let good: Manifest = "cyclic:5 1,4 cayley_sum h=1/2 edge_h=1/4 bipartite=false n=5 t_n=-0.8090169943749475 theorem_main=pass"
            .parse()
            .unwrap();
        let s = verify(&good, &Options::default(), 0);
        assert_eq!(s.exit_code(), 0, "{}", s.render());
        assert_eq!(s.per_check["expect:h"].pass, 1);

        let corrupted: Manifest = "cyclic:5 1,4 cayley_sum h=1/3".parse().unwrap();
        let s = verify(&corrupted, &Options::default(), 0);
        assert_eq!(s.totals.fail, 1);
        assert_eq!(s.exit_code(), 1);
        assert!(s.render().contains("FAIL cyclic:5 1,4 cayley_sum expect:h"));

        let empty = verify(&Manifest::default(), &Options::default(), 0);
        assert_eq!(empty.totals, Summary::default());
        assert_eq!(empty.exit_code(), 0);
        assert!(empty.render().starts_with("warning: manifest lists no instances"));
    }
}
