use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sets belong to different groups")]
    GroupMismatch,
    #[error("the trivial group has no sum-free classification")]
    TrivialGroup,
    #[error("{0} is not of type I")]
    NotTypeI(String),
    #[error("premise failed: {0}")]
    Premise(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("search failed: {0}")]
    SearchFailure(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
