use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("isometry check failed: {0}")]
    NotAnIsometry(String),
    #[error("quadratic torsion form requires an even lattice")]
    OddLattice,
    #[error("twist is invalid: {0}")]
    InvalidTwist(String),
    #[error("degenerate sublattice: {0}")]
    Degenerate(String),
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("trace polynomial does not exist: {0}")]
    NoTracePolynomial(String),
    #[error("element vanishes at a real embedding (sign undefined)")]
    VanishesAtRoot,
    #[error("no glue map at p = {prime}: {obstruction}")]
    NoGlueMap { prime: String, obstruction: Obstruction },
    #[error("invalid glue map: {0}")]
    InvalidGlueMap(String),
    #[error("gluing consistency failure: {0}")]
    GluingInconsistent(String),
    #[error("extended isometry is not integral (glue map is not equivariant)")]
    NonIntegralExtension,
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Why no glue map could be found for a prime part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    GroupMismatch,
    FormMismatch,
    Equivariance,
    SearchTooLarge,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Obstruction::GroupMismatch => "group mismatch",
            Obstruction::FormMismatch => "form mismatch",
            Obstruction::Equivariance => "equivariance",
            Obstruction::SearchTooLarge => "search space too large",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
