//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors and verifiers.
///
/// Variants ending in `Violation`, `NotWellDefined` or `VerificationFailed`
/// signal that a proved statement failed to hold numerically; they indicate a
/// bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is composite")]
    CompositeModulus(u64),
    #[error("prime {0} is too small (need N >= 5)")]
    BadPrime(u64),
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("{p} does not divide the numerator of (N-1)/12 for N = {n}")]
    NotEisensteinPrime { n: u64, p: u64 },
    #[error("r = {r} is outside 1..={t}")]
    RangeError { r: u32, t: u32 },
    #[error("prime p = {0} is not supported by this operation")]
    UnsupportedPrime(u64),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("e1.e1 is only defined when e1.e0 = 0")]
    PairingUndefined,
    #[error("value is not a supersingular lambda-invariant")]
    NotSupersingular,
    #[error("isogeny degree {0} is not supported (only 3 and 5)")]
    UnsupportedDegree(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("index {n} is not prime to the level {level}")]
    BadIndex { n: u64, level: u64 },
    #[error("Hecke operator T_{0} does not preserve the Manin relations")]
    NotWellDefined(u64),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("Eisenstein filtration did not stabilise with generator primes up to {max_prime}")]
    GeneratorInstability { max_prime: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
