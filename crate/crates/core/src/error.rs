use thiserror::Error;

use crate::matrix::ParabolicSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square or has rank 0 ({0})")]
    BadShape(String),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry ({0}, {0}) must be 1")]
    BadDiagonal(usize),
    #[error("off-diagonal entry ({0}, {1}) must be at least 2 or infinite")]
    BadOffDiagonal(usize, usize),
    #[error("rank {0} exceeds the supported maximum of 64 generators")]
    RankTooLarge(usize),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "word of length {len} exceeds the reduction cap of {cap}; use an enumeration table instead"
    )]
    WordTooLong { len: usize, cap: usize },
    #[error("elements belong to different Coxeter matrices")]
    MatrixMismatch,

    #[error("parabolic subgroup on {0} is not spherical")]
    NotSpherical(ParabolicSubset),
    #[error("closure left the enumerated ball; enlarge the radius")]
    BallEscape,
    #[error("closure exceeded {0} elements")]
    ClosureTooLarge(usize),

    #[error("element is not an involution")]
    NotInvolution,
    #[error("conjugation descent exhausted its cap of {0} states without certification")]
    DescentStuck(usize),
    #[error("image of the generator is already a reflection")]
    IsReflection,
    #[error("Coxeter system does not have a two-dimensional Davis complex")]
    NotTwoDimensional,
    #[error("no match found within search radius {0}")]
    NotFoundInRadius(usize),
    #[error("more than one parabolic matches a maximal spherical subgroup (internal error)")]
    AmbiguousMatch,
    #[error("twist hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("check {clause} failed: {detail}")]
    CheckFailed {
        clause: &'static str,
        detail: String,
    },
    #[error("invalid generator map: {0}")]
    InvalidMap(String),
}

impl Error {
    /// True for errors that mean "a search cap was hit", as opposed to bad input.
    pub fn is_cap_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::WordTooLong { .. }
                | Error::NotFoundInRadius(_)
                | Error::DescentStuck(_)
                | Error::BallEscape
                | Error::ClosureTooLarge(_)
        )
    }
}
