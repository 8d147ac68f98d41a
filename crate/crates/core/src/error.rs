use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("ambient dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division is not exact")]
    NonExactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

/// One broken quiver invariant. Vertex labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("edges in both directions between {a} and {b}")]
    Antiparallel { a: usize, b: usize },
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },
    #[error("edge {from} -> {to} has a non-positive valuation")]
    ZeroValuation { from: usize, to: usize },
    #[error("vertex {vertex} out of range 1..={size}")]
    OutOfRange { vertex: usize, size: usize },
    #[error("symmetrizer has length {found}, expected {expected}")]
    BadSymmetrizerLength { expected: usize, found: usize },
    #[error("symmetrizer entry for vertex {vertex} is not positive")]
    NonPositiveSymmetrizer { vertex: usize },
    #[error("no positive symmetrizer satisfies d_i*v_ij = v_ji*d_j at edge {from} -> {to}")]
    NoSymmetrizer { from: usize, to: usize },
    #[error("exchangeable part is disconnected")]
    Disconnected,
    #[error("quiver has no exchangeable vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("vertex {vertex} is not an exchangeable vertex (rank {rank})")]
    NotExchangeable { vertex: usize, rank: usize },
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("rank {rank} exceeds the symmetry search limit {limit}")]
    TooLarge { rank: usize, limit: usize },
    #[error("cannot freeze every exchangeable vertex")]
    FreezeAll,
    #[error("not a permutation of 1..={0}")]
    BadPermutation(usize),
    #[error("matrix entry overflow during mutation")]
    Overflow,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown catalog entry {0}")]
    UnknownCatalog(String),
    #[error("Laurent phenomenon violated: {0}")]
    LaurentViolation(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
