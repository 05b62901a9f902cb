use std::env;

use crate::dsl::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A prefix enumeration was requested beyond [`Limits::max_enum`].
    #[error("enumerating up to {requested} exceeds the cap of {cap} (set NSIZE_MAX_ENUM to raise it)")]
    EnumerationCap { requested: u128, cap: u64 },
    /// Some other computation would exceed a fixed size bound.
    #[error("{what} exceeds the supported bound of {limit}")]
    TooLarge { what: String, limit: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot classify the finiteness of `{0}`")]
    CannotClassify(String),
    #[error("standard part of x/α is infinite: exponent {0} exceeds 1")]
    InfiniteRatio(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// True for errors caused by configured or fixed resource bounds.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::EnumerationCap { .. } | Error::TooLarge { .. })
    }
}

/// Resource bounds shared by everything that falls back to enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which `S ∩ {1,…,n}` may be enumerated explicitly.
    pub max_enum: u64,
}

impl Limits {
    pub const DEFAULT_MAX_ENUM: u64 = 1 << 24;

    /// Reads `NSIZE_MAX_ENUM`, falling back to the default cap when it is
    /// unset or unparsable.
    pub fn from_env() -> Self {
        let max_enum = env::var("NSIZE_MAX_ENUM")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_ENUM);
        Limits { max_enum }
    }

    pub(crate) fn check_enum(&self, n: u128) -> Result<u64> {
        if n > self.max_enum as u128 {
            return Err(Error::EnumerationCap {
                requested: n,
                cap: self.max_enum,
            });
        }
        Ok(n as u64)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: Self::DEFAULT_MAX_ENUM,
        }
    }
}
