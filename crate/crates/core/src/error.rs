//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different catalog groups.
    #[error("group mismatch: operands belong to different groups")]
    GroupMismatch,

    /// An element is not a valid normal form for the stated group.
    #[error("element does not belong to the stated group")]
    ElementNotInGroup,

    /// Ball radius above the configured cap.
    #[error("radius {radius} exceeds the cap {cap}")]
    RadiusTooLarge { radius: u32, cap: u32 },

    /// Rank parameter outside of the supported range.
    #[error("rank {rank} is outside the supported range 1..={max}")]
    RankTooLarge { rank: usize, max: usize },

    /// Join complex would exceed the size cap.
    #[error("complex size {size} exceeds the cap {cap}")]
    SizeTooLarge { size: u64, cap: u64 },

    /// Class degree above the algebra rank.
    #[error("degree {degree} exceeds the maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    /// Exterior classes over algebras of different rank.
    #[error("exterior classes have different generator counts")]
    RankMismatch,

    /// Class is not homogeneous of the stated degree.
    #[error("class is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: usize },

    /// Index computation on descriptors that are not nested.
    #[error("second descriptor is not a subgroup of the first")]
    NotASubgroup,

    /// Stabilizer of an empty tuple requested.
    #[error("tuple must contain at least one element")]
    EmptyTuple,

    /// Resolution and module have different ranks.
    #[error("resolution rank {resolution} does not match module rank {module}")]
    IncompatibleRank { resolution: usize, module: usize },

    /// A descriptor-algebra case that the closed case table does not cover.
    /// This is a hard error by design: the algebra never approximates.
    #[error("descriptor algebra has no closed form for this case: {0}")]
    DescriptorCase(&'static str),

    /// Orbit module data fails validation (non-commuting or non-invertible
    /// actions, or actions incompatible with the relations).
    #[error("invalid orbit module: {0}")]
    InvalidModule(&'static str),
}
