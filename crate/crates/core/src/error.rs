use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("Singular: {0}")]
    Singular(String),

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("no overlap between charts {0} and {1}")]
    NoOverlap(usize, usize),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("not a section of the quotient map: {0}")]
    NotASection(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimMismatch(what()))
    }
}
