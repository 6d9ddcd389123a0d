use thiserror::Error;

use crate::bd::BdViolation;
use crate::checkers::CheckReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation pole at q = {0}")]
    EvaluationPole(String),
    #[error("subspaces are not paired by the form")]
    NotPaired,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("tensors live over different algebras")]
    AlgebraMismatch,
    #[error("trace form is degenerate")]
    DegenerateForm,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("bad twist data: {0}")]
    BadTwistData(String),
    #[error("twist does not preserve the canonical element Q")]
    TwistIncompatible,
    #[error("input does not satisfy the Hecke condition")]
    NotHecke,
    #[error("no classical limit: R(1) is not 1⊗1")]
    NoClassicalLimit,
    #[error("matrix size too small: {0}")]
    TooSmall(String),
    #[error("invalid BD triple: {}", fmt_violations(.0))]
    InvalidBd(Vec<BdViolation>),
    #[error("triple validation failed: {}", .0.join("; "))]
    InvalidTriple(Vec<String>),
    #[error("precondition failed: {} residual has {} terms", .0.identity, .0.residual_len())]
    Precondition(Box<CheckReport>),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_violations(v: &[BdViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
