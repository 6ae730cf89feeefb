use sumfree_core::Error as CoreError;
use sumfree_lp::LpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::InvalidSpec(_)
        | CoreError::InvalidArgument(_)
        | CoreError::InvalidSubgroup(_)
        | CoreError::GroupMismatch
        | CoreError::TrivialGroup
        | CoreError::NotTypeI(_) => 2,
        CoreError::Budget(_) => 3,
        _ => 1,
    }
}

impl CliError {
    /// 0 pass, 1 check failure, 2 usage, 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Check(_) => 1,
            CliError::Core(e) => core_code(e),
            CliError::Lp(LpError::InvalidProblem(_) | LpError::Parse(_)) => 2,
            CliError::Lp(LpError::Core(e)) => core_code(e),
            CliError::Lp(_) => 1,
        }
    }
}
