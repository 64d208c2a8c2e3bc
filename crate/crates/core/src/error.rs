use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("field coefficient is not holomorphic: {0}")]
    AntiholomorphicCoefficient(String),

    #[error("model polynomial is not real-valued")]
    NonRealModel,

    #[error("model polynomial contains a pluriharmonic term: {0}")]
    PluriharmonicInput(String),

    #[error("no finite multitype in the given coordinates: {0}")]
    NoFiniteMultitype(String),

    #[error("polynomial is not weighted homogeneous of degree 1: {0}")]
    NotHomogeneous(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("field is not a monomial multiple of a linear diagonal field")]
    NotMonomialDiagonal,

    #[error("rotation is not linear in z: {0}")]
    NonlinearRotation(String),

    #[error("rotation split has irrational parts: {0}")]
    IrrationalSplit(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("built model is holomorphically degenerate: {0}")]
    DegenerateInstance(String),

    #[error("chain relation failed: {0}")]
    ChainRelation(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InternalInconsistency(_) => 2,
            _ => 1,
        }
    }
}
