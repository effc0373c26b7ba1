use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph on {n} vertices exceeds capacity of {max}", max = crate::graph::MAX_N)]
    Capacity { n: usize },
    #[error("invalid edge {u}-{v}{}", n.map(|n| format!(" for graph on {n} vertices")).unwrap_or_default())]
    InvalidEdge {
        u: usize,
        v: usize,
        n: Option<usize>,
    },
    #[error("vertex {u} out of range for graph on {n} vertices")]
    InvalidVertex { u: usize, n: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl GraphError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> GraphError {
        GraphError::Parse {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("rational arithmetic overflowed 128 bits")]
    Overflow,
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("{index} is undefined for a disconnected graph")]
    Disconnected { index: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("edge set is not a block of this graph")]
    NotABlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("{family} is defined for {range}; got n={n}, k={k}")]
    Range {
        family: &'static str,
        range: &'static str,
        n: usize,
        k: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraftError {
    #[error("instance has not been validated")]
    Unvalidated,
    #[error("instance is for {found}, expected {expected}")]
    WrongLemma {
        expected: &'static str,
        found: &'static str,
    },
    #[error("hypotheses violated: {}", .0.join("; "))]
    Violations(Vec<String>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("n={n} is outside the supported enumeration range {range}")]
    Range { n: usize, range: &'static str },
    #[error("{path}:{line}: {source}")]
    Line {
        path: PathBuf,
        line: usize,
        source: GraphError,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("building worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Graft(#[from] GraftError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
