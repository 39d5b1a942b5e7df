use thiserror::Error;

use crate::rootdata::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root datum type `{0}`")]
    UnsupportedType(String),

    #[error("simple reflection index {index} out of range 1..={rank}")]
    BadIndex { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} does not lie in the weight lattice of K")]
    OffLattice(Weight),

    #[error("unknown symmetric pair `{0}`")]
    UnknownPair(String),

    #[error("corrupt catalog entry `{name}`: {reason}")]
    CorruptCatalog { name: String, reason: String },

    #[error("pair `{0}` is not split")]
    NotSplit(String),

    #[error("pair `{0}` has no explicit matrix model")]
    UnsupportedPair(String),

    #[error("truncation degree {degree} too small{}", tau.as_ref().map(|t| format!(" for K-type {t}")).unwrap_or_default())]
    TruncationTooSmall { degree: usize, tau: Option<Weight> },

    #[error("operation applied to a class on the wrong side")]
    WrongSide,
}

pub type Result<T> = std::result::Result<T, Error>;
