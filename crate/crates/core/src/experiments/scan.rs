use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::analysis::{analyze_group, AnalysisReport};
use super::instance::{GroupSource, SetSpec};
use super::sampler::{gen, GenRequest};
use super::{ExperimentError, Options};
use crate::graph::GraphKind;
use crate::group::ElementSet;

/// Column order of [`ScanRow::to_csv`].
pub const CSV_HEADER: &str =
    "family,n,d,set,kind,h,t_n,main_bound,margin,tightness_ratio,verdicts,error";

/// Where the generating set of a scanned instance comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSource {
    Explicit(SetSpec),
    Sampled(GenRequest),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanItem {
    pub group: GroupSource,
    pub set: SetSource,
    pub kind: GraphKind,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ScanRow {
    pub family: String,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub set: Option<ElementSet>,
    pub kind: String,
    pub h: Option<String>,
    pub t_n: Option<f64>,
    pub main_bound: Option<f64>,
    pub margin: Option<f64>,
    pub tightness_ratio: Option<f64>,
    pub verdicts: String,
    pub error: String,
    #[serde(skip)]
    pub failed: bool,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        let set = self
            .set
            .as_ref()
            .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        [
            quote(&self.family),
            opt(&self.n),
            opt(&self.d),
            set,
            self.kind.clone(),
            opt(&self.h),
            opt(&self.t_n),
            opt(&self.main_bound),
            opt(&self.margin),
            opt(&self.tightness_ratio),
            quote(&self.verdicts),
            quote(&self.error),
        ]
        .join(",")
    }

    pub fn from_report(report: &AnalysisReport) -> Self {
        let t_n = report.spectra.t_n;
        let main = report.bounds.main_lower;
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.failed())
            .map(|c| c.check.as_str())
            .collect();
        let mut verdicts = format!(
            "pass={} fail={} vacuous={}",
            report.summary.pass, report.summary.fail, report.summary.vacuous
        );
        if !failed.is_empty() {
            let _ = write!(verdicts, " failed={}", failed.join("|"));
        }
        ScanRow {
            family: report.group.name.clone(),
            n: Some(report.graph_core.n),
            d: Some(report.graph_core.d),
            set: Some(report.group_core.set.clone()),
            kind: report.kind.to_string(),
            h: Some(report.h().to_string()),
            t_n: Some(t_n),
            main_bound: Some(main),
            margin: Some(t_n - main),
            tightness_ratio: report.bounds.tightness_ratio,
            verdicts,
            error: String::new(),
            failed: report.failed(),
        }
    }
}

/// One row; errors are recorded in the row rather than returned.
pub fn scan_row(item: &ScanItem, opts: &Options) -> ScanRow {
    let mut row = ScanRow {
        family: item.group.to_string(),
        kind: item.kind.to_string(),
        ..ScanRow::default()
    };
    let result = (|| -> Result<AnalysisReport, ExperimentError> {
        let (group, descriptor) = item.group.load()?;
        row.family = descriptor.name.clone();
        row.n = Some(group.order());
        let set = match &item.set {
            SetSource::Explicit(spec) => spec.resolve(&group)?,
            SetSource::Sampled(request) => gen(&group, request)?,
        };
        row.set = Some(set.clone());
        row.d = Some(set.len());
        analyze_group(&group, descriptor, &set, item.kind, opts)
    })();
    match result {
        Ok(report) => ScanRow::from_report(&report),
        Err(e) => {
            row.error = e.to_string();
            row.failed = true;
            row
        }
    }
}

/// Rows in input order, computed concurrently.
pub fn scan(items: &[ScanItem], opts: &Options) -> Vec<ScanRow> {
    items.par_iter().map(|item| scan_row(item, opts)).collect()
}
