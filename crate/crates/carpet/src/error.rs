use thiserror::Error;

#[derive(Debug, Error)]
pub enum CarpetError {
    #[error(transparent)]
    Core(#[from] carpet_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("symmetry acceleration needs a metric invariant under the square's symmetries; use --rule complete")]
    SymmetryUnsupported,
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CarpetError>;

/// Process exit codes of the command line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DISAGREEMENT: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    pub const IO: i32 = 4;
}

impl CarpetError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CarpetError::Core(carpet_core::Error::LevelCap { .. }) => exit::RESOURCE,
            CarpetError::Core(_) | CarpetError::Usage(_) | CarpetError::SymmetryUnsupported => exit::USAGE,
            CarpetError::Io(_) => exit::IO,
        }
    }
}
