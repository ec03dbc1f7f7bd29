//! Spectra and Cheeger constants of Cayley graphs and Cayley sum graphs of
//! small finite groups.

pub mod bounds;
pub mod cheeger;
pub mod experiments;
pub mod graph;
pub mod group;
pub mod rational;
pub mod spectra;

pub use bounds::{BoundParams, CheckReport, SharpTable, Verdict};
pub use cheeger::{CheegerError, CutKind, CutMethod, CutWitness, ExactCheeger};
pub use graph::{CountGraph, GeneratingSet, GraphError, GraphKind, NormalizedOperator};
pub use group::{ElementSet, FamilySpec, FiniteGroup, GroupError};
pub use rational::Rational;
pub use spectra::{SpectraError, Spectrum};
