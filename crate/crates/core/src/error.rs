use thiserror::Error;

use crate::scalars::ZetaMode;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grading spec must contain at least one block")]
    EmptySpec,
    #[error("block {block}: degree list has {got} entries, block size is {want}")]
    DegreeCountMismatch { block: usize, got: usize, want: usize },
    #[error(
        "block {block} has size 1 with nonzero degree {degree}: a circle action on a \
         commuting projection is necessarily trivial, so this grading is meaningless"
    )]
    CommutativeGrading { block: usize, degree: i64 },
    #[error("operands belong to different algebras")]
    MixedParents,
    #[error("scalar mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: ZetaMode, found: ZetaMode },
    #[error("specializing at a primitive {order}-th root of unity hits a pole")]
    SpecializationPole { order: u64 },
    #[error("tensor elements have different slot counts ({left} vs {right})")]
    SlotMismatch { left: usize, right: usize },
    #[error("matrix shapes do not match ({left} vs {right})")]
    ShapeMismatch { left: usize, right: usize },
    #[error("degree cap {cap} is below the longest target word ({need} letters)")]
    CapTooSmall { cap: u32, need: u32 },
    #[error("operation requires a braided presentation, found {found}")]
    NotBraided { found: &'static str },
    #[error("operation is defined for single-block gradings only")]
    MultiBlockUnsupported,
    #[error("substitution image for generator {generator} is not degree-consistent")]
    InconsistentSubstitution { generator: String },
    #[error("substitution rule missing an image for generator {generator}")]
    IncompleteSubstitution { generator: String },
    #[error("{0}")]
    Invalid(String),
}
