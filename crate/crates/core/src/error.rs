use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("backend or dimension mismatch: {0}")]
    Mismatch(String),

    #[error("matrix is singular over GF({0})")]
    SingularMatrix(u32),

    #[error("enumeration exceeded cap of {0}")]
    CapExceeded(usize),

    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not invariant under the action")]
    NotInvariant,

    #[error("generator assignment is not a homomorphism: relation at element #{element} times generator #{generator}")]
    NotAHomomorphism { element: usize, generator: usize },

    #[error("generator assignment does not extend to a bijection")]
    NotBijective,

    #[error("automorphisms belong to different groups")]
    DomainMismatch,

    #[error("operation requires an odd prime")]
    OddPrimeRequired,

    #[error("group of order {0} is not a p-group for the given prime")]
    NotPGroup(usize),

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("malformed encoding: {0}")]
    Decode(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
