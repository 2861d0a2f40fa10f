use thiserror::Error;

use crate::numtheory::ParamError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("residue {value} is outside [0, {n})")]
    OutOfRange { value: u64, n: u64 },
    #[error("period {n} exceeds the determinant cap {cap}")]
    DeterminantCap { n: usize, cap: usize },
    #[error("closed-form determinant needs p = 1 and q = 3 (mod 4), got p = {p}, q = {q}")]
    NotStrict { p: u64, q: u64 },
    #[error("rational approximation needs at least 2 bits, got {0}")]
    PrefixTooShort(usize),
    #[error("bit string contains {0:?}; only '0' and '1' are allowed")]
    BadBit(char),
}

impl Error {
    /// Stable reason code for the CLI and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Params(e) => e.code(),
            Error::OutOfRange { .. } => "out-of-range",
            Error::DeterminantCap { .. } => "determinant-cap",
            Error::NotStrict { .. } => "not-strict",
            Error::PrefixTooShort(_) => "prefix-too-short",
            Error::BadBit(_) => "bad-bit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
