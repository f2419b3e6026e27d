//! Measures how much of a function's docstring merely repeats its signature.
//!
//! The pipeline is: [`corpus`] walks project trees and hands each file to
//! [`extract`], which finds function definitions and their docstrings;
//! [`score`] compares docstring words against signature words using the
//! word rules in [`tokenize`]; [`report`] turns the per-function scores and
//! per-file counts into averages, empirical CDFs and CSV files.
//!
//! Statistics are generic over [`Scalar`]. The aliases below pick the exact
//! rational type, which is what the CLI uses; `f64` works everywhere too.

pub mod corpus;
pub mod extract;
pub mod report;
pub mod scalar;
pub mod score;
pub mod tokenize;

pub use corpus::{scan_corpus, select_files, CorpusConfig, CorpusError, FileStats, ScanOutput};
pub use extract::{extract_functions, FunctionRecord, ParseFailure, SignatureWordSet};
pub use report::{
    avg_undocumented, central_band, compute_cdf, emit_reports, flag_degenerate_projects,
    DegeneracyThresholds, EmitOptions, ReportError,
};
pub use scalar::Scalar;
pub use score::{score_function, DocWordBag, ScoreRecord, WordClass, WordCounts};
pub use tokenize::{filter_meaningful, partition_text, split_identifier, StopWordList, Word};

pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Exact = BigRational;

pub type Cdf = report::Cdf<Exact>;
pub type CorpusReport = report::CorpusReport<Exact>;
pub type Thresholds = report::DegeneracyThresholds<Exact>;

pub type CdfF64 = report::Cdf<f64>;
pub type CorpusReportF64 = report::CorpusReport<f64>;
