use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse Cartan type {0:?}: {1}")]
    BadType(String, String),

    #[error("rank {rank} is not admissible for family {family}")]
    BadRank { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("{0:?} is not a positive root")]
    NotPositive(Vec<i64>),

    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("{0:?} is not locally high")]
    NotLocallyHigh(Vec<i64>),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("element has a nonzero n_- component, expected an element of b")]
    NotInBorel,

    #[error("polynomial is not an N-invariant weight vector")]
    NotInvariant,

    #[error("irreducible module of dimension {required} exceeds the bound {bound}")]
    DimensionBound { required: u64, bound: u64 },

    #[error("max degree {max_degree} too small: only {found} of {expected} generators found")]
    MaxDegreeTooSmall {
        max_degree: u32,
        found: usize,
        expected: usize,
    },

    #[error("{0:?} is not in the lattice spanned by the generator weights")]
    OutsideGeneratorLattice(Vec<i64>),

    #[error("cannot parse rational {0:?}")]
    BadRational(String),

    #[error("unknown check identifier {0:?}")]
    UnknownCheck(String),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
