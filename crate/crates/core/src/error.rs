use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cayley table at row {row}, column {col}: {reason}")]
    InvalidTable {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("group operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: conjugate of {member} by {by} leaves it")]
    NotNormal { member: usize, by: usize },

    #[error("group `{0}` is not abelian")]
    NotAbelian(String),

    #[error("{what} has size {size}, above the limit {limit}")]
    SizeBound { what: String, size: u128, limit: u128 },

    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid Gr-category: {0}")]
    InvalidCategory(String),

    #[error("invalid Gr-functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("cochain degree {0} out of range")]
    DegreeOutOfRange(usize),

    #[error("cochain does not match module: {0}")]
    ModuleMismatch(String),

    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(what: impl Into<String>, size: u128, limit: u128) -> Self {
        Error::SizeBound {
            what: what.into(),
            size,
            limit,
        }
    }
}
