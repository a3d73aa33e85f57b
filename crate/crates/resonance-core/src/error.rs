//! Error type shared by the whole crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two subspaces live in different ambient spaces.
    AmbientMismatch { left: usize, right: usize },
    /// A supplied family of vectors is linearly dependent where a basis is required.
    DependentVectors,
    /// A nonzero vector was required.
    ZeroVector,
    /// The modulus is not prime or divides an entry denominator.
    BadPrime(u64),
    /// A size guard tripped; rerun with the force flag to override.
    GuardExceeded { detail: String },
    /// The two independent computation routes disagree. This is an internal
    /// cross-check, so it signals a bug, not a user error.
    RouteDisagreement {
        q: usize,
        homology: usize,
        cokernel: usize,
    },
    /// A component supplied to a decomposition check failed separability.
    NonSeparableComponent { index: usize },
    /// An exact division in a closed-form count failed; the formula was
    /// transcribed wrong if this ever fires.
    NonIntegralCount { context: String },
    /// A vertex subset does not induce a maximally disconnected full subgraph.
    NotMaximallyDisconnected { subset: Vec<usize> },
    /// Malformed input (graph, pair data, parameter ranges).
    InvalidInput { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AmbientMismatch { left, right } => {
                write!(f, "ambient dimension mismatch: {left} vs {right}")
            }
            Error::DependentVectors => write!(f, "supplied vectors are linearly dependent"),
            Error::ZeroVector => write!(f, "the zero vector is not allowed here"),
            Error::BadPrime(p) => write!(f, "bad prime {p}"),
            Error::GuardExceeded { detail } => write!(f, "size guard exceeded: {detail}"),
            Error::RouteDisagreement {
                q,
                homology,
                cokernel,
            } => write!(
                f,
                "internal route disagreement at q={q}: homology {homology} vs cokernel {cokernel}"
            ),
            Error::NonSeparableComponent { index } => {
                write!(f, "component #{index} is not separable")
            }
            Error::NonIntegralCount { context } => {
                write!(f, "non-integral count in {context}")
            }
            Error::NotMaximallyDisconnected { subset } => {
                write!(
                    f,
                    "subset {subset:?} is not a maximally disconnected full subgraph"
                )
            }
            Error::InvalidInput { detail } => write!(f, "invalid input: {detail}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
