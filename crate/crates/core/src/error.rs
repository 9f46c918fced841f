use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Lie type `{0}`: expected one of A<n>, B<n> (n>=2), C<n> (n>=3), D<n> (n>=4), E6, E7, E8, F4, G2")]
    InvalidType(String),

    #[error("node index {index} out of range for rank {rank} (nodes are numbered 1..={rank})")]
    NodeOutOfRange { index: usize, rank: usize },

    #[error("{0} is not a positive root of this root system")]
    NotAPositiveRoot(String),

    #[error("Chevalley sign construction failed at roots {alpha} + {beta}: {detail}")]
    ChevalleyInconsistent {
        alpha: String,
        beta: String,
        detail: String,
    },

    #[error("trace form is degenerate on basis element {0}")]
    DegenerateKilling(String),

    #[error("isotropy module m_{0} is empty")]
    EmptyModule(usize),

    #[error("metric entry x_{index} = {value} is not strictly positive")]
    NonPositiveMetric { index: usize, value: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("linear system is singular ({rank} independent equations for {unknowns} unknowns)")]
    Singular { rank: usize, unknowns: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("the submersion method is only wired for E8 painted at node 4 or node 5")]
    NoSubmersionMethod,

    #[error("bracket cache {path}: {detail}")]
    Cache { path: PathBuf, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
