//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while parsing, validating, or operating on
/// complexes, chains, covers, and bound ledgers.
#[derive(Debug, Error)]
pub enum Error {
    /// A document could not be parsed (syntax or shape).  The message carries
    /// the line/column when the underlying JSON parser provides one.
    #[error("parse error: {0}")]
    Parse(String),

    /// The face-map tables are structurally broken: an index out of range, a
    /// wrong arity, or a violated simplicial identity.
    #[error("inconsistent face maps: {0}")]
    InconsistentFaces(String),

    /// A complex-level argument is malformed (bad dimension, empty layer
    /// where one is required, non-uniform facet arity, ...).
    #[error("malformed complex: {0}")]
    Malformed(String),

    /// An operation that needs a pseudomanifold was given something else.
    #[error("not a pseudomanifold: {0}")]
    NotPseudomanifold(String),

    /// An operation that needs a coherent orientation was given a
    /// non-orientable complex.
    #[error("not orientable: {0}")]
    NotOrientable(String),

    /// An operation that needs a connected complex was given a disconnected
    /// one.
    #[error("complex is not connected")]
    NotConnected,

    /// A chain degree outside 0..=dimension was requested.
    #[error("degree {degree} out of range for a {dimension}-dimensional complex")]
    DegreeOutOfRange { degree: usize, dimension: usize },

    /// A chain refers to simplex ids that do not exist in its complex.
    #[error("chain does not live on the complex: {0}")]
    BadChain(String),

    /// A chain expected to be a cycle has non-zero boundary.
    #[error("chain is not a cycle: {0}")]
    NotACycle(String),

    /// An ordered chain strayed off the base simplex it must live on.
    #[error("chain is not supported on the base simplex: {0}")]
    ChainNotOnBase(String),

    /// The complex is not a simplicial complex (some simplex is not
    /// determined by its vertex set) but the operation requires one.
    #[error("not a simplicial complex: {0}")]
    NotSimplicial(String),

    /// A permutation assignment failed a relator or edge-compatibility check.
    #[error("relator violation: {0}")]
    RelatorViolation(String),

    /// A subgroup record is internally inconsistent (not transitive, wrong
    /// index, wrong generator count).
    #[error("bad subgroup record: {0}")]
    BadSubgroupRecord(String),

    /// A combinatorial move cannot be applied where requested.
    #[error("move not admissible: {0}")]
    MoveInadmissible(String),

    /// The operation is not implemented for this dimension.
    #[error("unsupported dimension {dimension}: {context}")]
    UnsupportedDimension { dimension: usize, context: String },

    /// A parameter that must be positive (or otherwise in range) is not.
    #[error("parameter out of range: {0}")]
    BadParameter(String),

    /// The dihedral-angle ratio 2*pi/alpha is an exact integer, so no strict
    /// overlap window exists.
    #[error("overlap ratio 2*pi/alpha = {ratio} is an integer; no strict window exists")]
    IntegerOverlap { ratio: u64 },

    /// A numeric routine could not reach the requested precision or received
    /// an out-of-domain argument.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A bound ledger was asked to accept a lower bound above an upper bound
    /// (or vice versa) for the same target.
    #[error("contradictory bounds: {0}")]
    Contradiction(String),

    /// Certification was requested but the interval is not tight.
    #[error("bounds not tight: best lower {lower}, best upper {upper}")]
    NotTight { lower: String, upper: String },

    /// Plain I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
