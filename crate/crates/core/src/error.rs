use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain of the operation (bad parameters, invalid map).
    Domain(String),
    /// Two independent computations disagreed. Always an implementation bug.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}
macro_rules! violation {
    ($($arg:tt)*) => { $crate::error::Error::InvariantViolation(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use violation;
