//! Failure classification with the exit-code contract:
//! 0 success, 2 mathematical cross-check failure, 64 parse, 65 guard.

use resonance_core::Error;

#[derive(Debug)]
pub enum Failure {
    /// Malformed input of any kind (exit 64).
    Parse(String),
    /// A size guard tripped (exit 65).
    Guard(String),
    /// An internal mathematical cross-check failed (exit 2).
    Math(String),
}

impl Failure {
    pub fn parse(msg: String) -> Self {
        Failure::Parse(msg)
    }

    pub fn math(msg: String) -> Self {
        Failure::Math(msg)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 64,
            Failure::Guard(_) => 65,
            Failure::Math(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Guard(m) | Failure::Math(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            Error::RouteDisagreement { .. } | Error::NonIntegralCount { .. } => {
                Failure::Math(e.to_string())
            }
            other => Failure::Parse(other.to_string()),
        }
    }
}
