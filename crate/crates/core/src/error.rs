use alloc::string::String;

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input does not describe a well-formed object.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The point is zero where a nonzero point is required.
    #[error("degenerate point: {0}")]
    Degenerate(String),
    /// A numerical parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An enumeration would exceed the caller's budget.
    #[error("enumeration budget exceeded: {needed} candidates needed, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn parameter(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
