use thiserror::Error;

/// CLI failures carrying their process exit code: 1 for check failures,
/// 2 for usage/config problems, 3 for I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<ccrk_core::Error> for CliError {
    fn from(e: ccrk_core::Error) -> Self {
        use ccrk_core::Error as E;
        match e {
            E::Io(err) => CliError::Io(err.to_string()),
            E::InvalidParameter(_)
            | E::MalformedFacet(_)
            | E::UnknownVertex(_)
            | E::FacetParse { .. }
            | E::Unsupported(_) => CliError::Config(e.to_string()),
            E::NotSimplicial | E::NotAHomologySphere(_) | E::TheoremViolation(_) | E::Internal(_) => {
                CliError::CheckFailed(e.to_string())
            }
        }
    }
}
