//! Detects mutual plagiarism among programming-contest submissions.
//!
//! The pipeline normalizes each source file (preprocessor directives,
//! comments, then whitespace are removed), computes all-pairs Levenshtein
//! similarity, thresholds it into a relation graph, extracts connected
//! components as plagiarism clusters, scores each participant's plagiarism
//! propensity, and proposes per-participant grades.

#![forbid(unsafe_code)]

pub mod cluster;
pub mod corpus;
mod error;
pub mod grading;
pub mod metric;
pub mod pipeline;
pub mod stats;

pub use error::{Error, Result};
