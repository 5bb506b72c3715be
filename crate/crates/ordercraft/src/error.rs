use thiserror::Error;

/// Crate-wide error type. Every failure mode of the workbench maps onto one
/// of these variants; the CLI groups them into exit-code classes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("duplicate element label: {0}")]
    DuplicateElement(String),
    #[error("cycle detected: antisymmetry fails between {0} and {1}")]
    CycleDetected(String, String),
    #[error("size limit exceeded: needed {needed}, cap {cap}")]
    SizeLimitExceeded { needed: usize, cap: usize },
    #[error("missing part for index element {0}")]
    MissingPart(String),
    #[error("sequences live over different base posets")]
    BaseMismatch,
    #[error("element {0} is not minimal in the base poset")]
    NotMinimal(String),
    #[error("sequence length {len} exceeds requested length {requested}")]
    LengthExceeded { len: usize, requested: usize },
    #[error("elements do not form an antichain: {0} and {1} are comparable")]
    NotAntichain(String, String),
    #[error("vectors belong to different families")]
    FamilyMismatch,
    #[error("component for index element {0} has no unique minimum at the designated zero")]
    ComponentNotPointed(String),
    #[error("index poset is not a linear order: {0} and {1} are incomparable")]
    IndexNotLinear(String, String),
    #[error("shift-extension is undefined for an empty left operand")]
    EmptyLeftOperand,
    #[error("rank {rank} too large for base of size {base}")]
    RankTooLarge { rank: usize, base: usize },
    #[error("not a valid finite barrier: {0}")]
    InvalidBarrier(String),
    #[error("{0} is not a block of the barrier square")]
    NotASquareBlock(String),
    #[error("blocks are not separated: {0} and {1} do not satisfy r << s")]
    NotSeparated(String, String),
    #[error("successive sequence needs block {0}, which is missing from the barrier")]
    BlocksMissing(String),
    #[error("finite base exhausted: {0}")]
    BaseExhausted(String),
    #[error("no homogeneous sub-barrier of size {requested} exists in base of size {base}")]
    BaseTooSmall { requested: usize, base: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("iteration cap {0} exceeded before the search stabilised")]
    IterationCapExceeded(usize),
    #[error("invalid input: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit-code class used by the CLI: 2 parse, 3 invariant violation,
    /// 4 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::SizeLimitExceeded { .. } | Error::IterationCapExceeded(_) => 4,
            _ => 3,
        }
    }
}
