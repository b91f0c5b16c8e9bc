//! plovlab-core: exact-arithmetic growth invariants for automorphism actions
//! on rational intersection models.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. The main pipeline is
//!
//! 1. build an [`IntersectionModel`] (torus, Fujiki, product, or file-defined)
//!    together with an [`AutoAction`],
//! 2. certify quasi-unipotence and reduce to a unipotent power ([`spectral`]),
//! 3. compute the growth polynomial, its degree `plov` and `gkdim = plov + 1`
//!    ([`growth`]),
//! 4. verify filtration structure ([`filtration`]) and numeric bounds
//!    ([`verdict`]).
//!
//! [`analysis::analyze`] runs the pipeline end to end and produces the JSON
//! report consumed by the CLI.

pub mod analysis;
pub mod cyclo;
pub mod filtration;
pub mod fuzz;
pub mod gallery;
pub mod growth;
pub mod matrix;
pub mod model;
pub mod par;
pub mod poly;
pub mod rat;
pub mod spectral;
pub mod verdict;

pub use matrix::RatMatrix;
pub use model::{AutoAction, ClassVec, IntersectionModel, ModelKind};
pub use poly::QPoly;
pub use rat::Rat;

use std::fmt;

#[derive(Debug)]
pub enum Error {
    /// Malformed or out-of-contract input.
    Invalid(String),
    /// The action is not quasi-unipotent; the growth degree is infinite.
    /// Carries a monic factor of the characteristic polynomial with no
    /// cyclotomic divisor.
    NotQuasiUnipotent(QPoly),
    /// An internal consistency condition failed (e.g. contradictory
    /// filtration memberships).
    Integrity(String),
    /// A theorem-level check failed on a model claiming geometric origin.
    Violation(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::NotQuasiUnipotent(witness) => write!(
                f,
                "not quasi-unipotent: witness factor {}",
                witness.display_var('x')
            ),
            Error::Integrity(msg) => write!(f, "integrity error: {msg}"),
            Error::Violation(msg) => write!(f, "violated check: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 1 for input-level
    /// problems, 2 for violated mathematical guarantees.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::NotQuasiUnipotent(_) | Error::Io(_) | Error::Json(_) => 1,
            Error::Integrity(_) | Error::Violation(_) => 2,
        }
    }
}
