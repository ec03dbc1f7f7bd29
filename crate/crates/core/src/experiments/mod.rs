//! Analysis pipeline, corpus sweeps, random generating sets and manifest
//! verification.

mod analysis;
mod corpus;
mod instance;
mod manifest;
mod sampler;
mod scan;

pub use analysis::{
    analyze, analyze_group, AnalysisReport, BoundsSection, CheegerSection, GraphSection,
    GroupSection, SpectraSection, Summary, SCHEMA_VERSION,
};
pub use corpus::{default_corpus, default_corpus_groups, CorpusEntry};
pub use instance::{instance_id, parse_kind, GroupDescriptor, GroupSource, InstanceSpec, SetSpec};
pub use manifest::{parse_manifest, verify, Expectation, Manifest, ManifestLine, VerifySummary};
pub use sampler::{feasible_count, gen, GenRequest, Requirements};
pub use scan::{scan, scan_row, ScanItem, ScanRow, SetSource, CSV_HEADER};

use thiserror::Error;

use crate::cheeger::{CheegerError, DEFAULT_EXACT_CAP};
use crate::graph::GraphError;
use crate::group::GroupError;
use crate::rational::Rational;
use crate::spectra::{SpectraError, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("TooLarge: order {n} exceeds the exact-enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("NoValidSet after {attempts} attempts{}", feasible_note(.feasible))]
    NoValidSet {
        attempts: usize,
        feasible: Option<usize>,
    },
    #[error("numerical error: {0}")]
    Numerical(String),
}

fn feasible_note(feasible: &Option<usize>) -> String {
    match feasible {
        Some(k) => format!(" ({k} feasible sets by exhaustive count)"),
        None => String::new(),
    }
}

impl ExperimentError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Parse(_) => 2,
            ExperimentError::Validation(_) | ExperimentError::NoValidSet { .. } => 3,
            ExperimentError::TooLarge { .. } => 4,
            ExperimentError::Numerical(_) => 1,
        }
    }

    pub(crate) fn from_group(e: GroupError) -> Self {
        match e {
            GroupError::OrderCapExceeded { order, cap } => ExperimentError::TooLarge { n: order, cap },
            GroupError::ElementOutOfRange { .. }
            | GroupError::NotSymmetric { .. }
            | GroupError::NotGenerating { .. } => ExperimentError::Validation(e.to_string()),
            other => ExperimentError::Parse(other.to_string()),
        }
    }

    pub(crate) fn from_graph(e: GraphError) -> Self {
        match e {
            GraphError::Group(g) => ExperimentError::from_group(g),
            GraphError::Parse(p) => ExperimentError::Parse(p),
            other => ExperimentError::Validation(other.to_string()),
        }
    }

    pub(crate) fn from_cheeger(e: CheegerError) -> Self {
        match e {
            CheegerError::TooLarge { n, cap } => ExperimentError::TooLarge { n, cap },
            other => ExperimentError::Numerical(other.to_string()),
        }
    }

    pub(crate) fn from_spectra(e: SpectraError) -> Self {
        ExperimentError::Numerical(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub max_exact_n: usize,
    pub tol: f64,
    /// Expansion constant used by the conditional checks; must not exceed `h`.
    pub epsilon_override: Option<Rational>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_exact_n: DEFAULT_EXACT_CAP,
            tol: DEFAULT_TOL,
            epsilon_override: None,
        }
    }
}
