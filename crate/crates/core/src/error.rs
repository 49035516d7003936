use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: relation joins paths that are not parallel")]
    NonParallelRelation { line: usize },

    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("modules live over different quivers")]
    MismatchedAlgebras,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("map is not a morphism between direct sums of projectives: {0}")]
    NotProjectiveMap(String),

    #[error("{0} is not projective")]
    NotProjective(String),

    #[error("could not split a decomposable module (endomorphism ring has semisimple rank {rank})")]
    SplittingFailure { rank: usize },

    #[error("decomposition needs characteristic zero")]
    UnsupportedCharacteristic,

    #[error("no second completion found among {candidates} candidates of dimension at most {max_dim}")]
    NoCompletion { candidates: usize, max_dim: usize },

    #[error("pair is not tau-tilting: {0}")]
    NotTauTilting(String),

    #[error("g-matrix has determinant {0}, expected +1 or -1")]
    Determinant(i64),

    #[error("weights must be positive")]
    NonPositiveWeight,

    #[error("entry {entry} has a denominator divisible by {prime}")]
    DenominatorClash { entry: String, prime: u64 },

    #[error("submodule enumeration exceeds the budget {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("bricks are not pairwise Hom-orthogonal")]
    NotHomOrthogonal,

    #[error("exchange graph is truncated")]
    Truncated,

    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("stereographic figures need exactly 3 vertices, got {0}")]
    NotRankThree(usize),

    #[error("malformed module literal: {0}")]
    ModuleLiteral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
