//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("node count n = {0} is too small (need n >= 2)")]
    TooFewNodes(usize),
    #[error("unknown graph mode {0:?} (expected restricted or complete)")]
    BadMode(String),
    #[error("arc ({0}, {1}) is not present in the digraph")]
    MissingArc(usize, usize),
    #[error("node sequence repeats a node")]
    NotSimple,
    #[error("block {0:?} overlaps another block at node {1}")]
    OverlappingBlocks(String, usize),
    #[error("{0}")]
    BadParameters(String),
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("path class is empty for the requested (n, p)")]
    EmptyClass,
    #[error("no dimension formula covers p = {p} on this digraph")]
    NoDimensionFormula { p: usize },
    #[error("computed dimension {computed} disagrees with the formula value {formula}")]
    DimensionMismatch { computed: usize, formula: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Other(String),
}

impl ParseError {
    pub fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Line { line, msg: msg.into() }
    }
}
