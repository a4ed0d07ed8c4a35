//! Exact rank computations for tropical curves and tropical hypersurfaces.
//!
//! The rank of a tropical hypersurface is the dimension of its equisingular
//! deformation space: the coefficient vectors that induce the same dual
//! subdivision of the Newton polytope, modulo the global additive constant.
//! This crate computes that number exactly (see [`rank::oracle_rank`]) and
//! evaluates the combinatorial formulas and bounds that predict it:
//!
//! * expected ranks of embedded and parameterized curves ([`rank`]),
//! * defect bounds, ordered upper bounds and the three-cell exact formula for
//!   plane curves ([`curves`]),
//! * parameterized plane curves, end markings and the bounded-component
//!   formula ([`param`]),
//! * the bloc-growing bounds for surfaces in three-space ([`surface`]),
//! * 1-skeleton lower bounds with closed volumes ([`skeleton`]),
//! * ordered bounds and exact values in higher dimension ([`hypersurface`]).
//!
//! Everything is computed over the rationals; there is no floating point in
//! any rank or bound.

pub mod cli;
pub mod compare;
pub mod curves;
pub mod gen;
pub mod geometry;
pub mod hypersurface;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod param;
pub mod polytope;
pub mod rank;
pub mod search;
pub mod skeleton;
pub mod subdivision;
pub mod surface;
pub mod svg;

use thiserror::Error;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use geometry::{GenericVector, LatticePoint, PolygonClass};
pub use linalg::Matrix;
pub use rank::{Certificate, RankKind, RankReport};
pub use subdivision::{Cell, Subdivision, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid cell {cell}: {reason}")]
    InvalidCell { cell: usize, reason: String },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate cell: vertices do not span the ambient space")]
    DegenerateCell,
    #[error("vector is not generic for this configuration")]
    NonGeneric,
    #[error("coorientation relation has a cycle")]
    CyclicOrder,
    #[error("NonRegular: no coefficient vector induces this subdivision")]
    NonRegular,
    #[error("coefficients are not interior for cell {cell}")]
    NonInterior { cell: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ordering is not a permutation of the required cells")]
    NotPermutation,
    #[error("exhaustive search over {cells} cells exceeds the limit of {limit}")]
    Budget { cells: usize, limit: usize },
    #[error("cells {0} and {1} do not share a 2-face")]
    NotAdjacent(usize, usize),
    #[error("cells unreachable from the starting bloc: {0:?}")]
    Unreachable(Vec<usize>),
    #[error("inconsistent identification: {0}")]
    InconsistentIdentification(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Integer as an exact rational.
pub fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
