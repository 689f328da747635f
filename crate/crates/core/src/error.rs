use thiserror::Error;

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} cap exceeded: limit {limit}, reached {reached}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("group must be nontrivial")]
    TrivialGroup,

    #[error("group is not nonabelian simple")]
    NotSimple,

    #[error("group is not soluble")]
    NotSoluble,

    #[error("module is reducible: {0}")]
    Reducible(String),

    #[error("counting formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("sampling exceeded {0} draws without generating the group")]
    IterationCap(u64),

    #[error("unknown builder: {0}")]
    UnknownBuilder(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl GroupError {
    pub(crate) fn cap(what: &'static str, limit: usize, reached: usize) -> Self {
        GroupError::CapExceeded {
            what,
            limit,
            reached,
        }
    }
}
