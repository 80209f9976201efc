use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has {actual} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, actual: usize },
    #[error("vector {index} has length {actual}, expected {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("map {map} does not preserve the subspace")]
    NotInvariant { map: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("arrow {arrow}: matrix is {actual_rows}x{actual_cols}, expected {rows}x{cols}")]
    ShapeMismatch {
        arrow: String,
        rows: usize,
        cols: usize,
        actual_rows: usize,
        actual_cols: usize,
    },
    #[error("dimension vector has length {actual}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("vertex {vertex}: {reason}")]
    NotAMorphism { vertex: usize, reason: String },
    #[error("morphism is not injective at vertex {vertex}")]
    NotInjective { vertex: usize },
    #[error("no injective morphism found in {attempts} samples")]
    NoEmbedding { attempts: usize },

    #[error("bad window ({i},{j}): need i <= j and n >= 1")]
    BadWindow { i: i64, j: i64 },
    #[error("quiver is not a cyclic quiver with arrows l -> l-1")]
    NotCyclic,
    #[error("representation is not nilpotent")]
    NotNilpotent,
    #[error("cyclic ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("residue {0} is out of range or absent from the socle/top")]
    BadResidue(usize),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("not a degeneration")]
    NotADegeneration,
    #[error("socle of M does not embed in the socle of N at residue {0}")]
    SocleNotEmbeddable(usize),
    #[error("top of M is not a summand of the top of N at residue {0}")]
    TopNotLiftable(usize),
    #[error("codimension {0} is outside the classifier's range (at most 2)")]
    OutOfScope(usize),
    #[error("point has {actual} coordinates, expected {expected}")]
    BadArity { expected: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
