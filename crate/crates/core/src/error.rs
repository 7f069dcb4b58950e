use thiserror::Error;

/// Every failure the engine reports. Names follow the operation contracts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    NotDivisible(String),
    #[error("label {label} out of range for n = {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("invalid Koszul row: {0}")]
    InvalidRow(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("twist matrix does not square to zero")]
    NotSquareZero,
    #[error("map is not filtered: {0}")]
    NotFiltered(String),
    #[error("degree bound violated: {0}")]
    DegreeBoundViolated(String),
    #[error("row {0} is not solvable for a variable")]
    NotSubstitutable(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("potentials differ")]
    PotentialMismatch,
    #[error("truncated cohomology did not stabilize: {0}")]
    TruncationUnstable(String),
    #[error("cohomology is not concentrated in one parity")]
    NotConcentrated,
    #[error("element is not a cocycle")]
    NotCocycle,
    #[error("edge {0} carries no marking")]
    UnmarkedEdge(String),
    #[error("graph could not be reduced: {0}")]
    Irreducible(String),
    #[error("graph has no such circle component")]
    NoCircle,
    #[error("incompatible orientation: {0}")]
    IncompatibleOrientation(String),
    #[error("parse error at {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("pivot block is not invertible")]
    PivotNotInvertible,
    #[error("pivot block is not filtered")]
    PivotNotFiltered,
    #[error("homology is zero")]
    EmptyHomology,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("cobordism has a closed component")]
    ClosedComponent,
    #[error("diagram has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
