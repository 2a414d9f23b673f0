use thiserror::Error;

use crate::word::Letter;

/// Errors reported by the quaternion, presentation and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quaternion has zero imaginary part")]
    RealQuaternion,
    #[error("quaternion is zero")]
    ZeroQuaternion,
    #[error("quaternion is central")]
    CentralQuaternion,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("primes must be distinct, got p = l = {0}")]
    EqualPrimes(u64),
    #[error("{0} is not a generator of the presentation")]
    NotAGenerator(String),
    #[error("no square completes the corner ({0}, {1})")]
    NoMatch(Letter, Letter),
    #[error("corner ({0}, {1}) occurs in more than one square")]
    DuplicateCorner(Letter, Letter),
    #[error("link condition violated at {} corner(s)", .0.len())]
    LinkViolation(Vec<CornerDefect>),
    #[error("word belongs to a different presentation")]
    AlphabetMismatch,
    #[error("element is not in the {expected} free factor")]
    SideMismatch { expected: &'static str },
    #[error("relation evaluated to zero")]
    ZeroProduct,
    #[error("{0} is not admissible for this group")]
    NotAdmissible(String),
    #[error("no factorization found for {0}")]
    NoFactorization(String),
    #[error("coset table is not closed")]
    TableNotClosed,
    #[error("{0} does not have integer coordinates")]
    NotIntegral(String),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A corner pair of the link whose multiplicity differs from one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerDefect {
    pub h: Letter,
    pub v: Letter,
    pub count: usize,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
