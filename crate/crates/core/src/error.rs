//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by validation, factorization, and file handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A radial node lies outside the open interval (-1, 1).
    #[error("node {value} lies outside the open interval (-1, 1)")]
    NodeOutOfRange { value: f64 },

    /// Two radial nodes coincide within the distinctness tolerance.
    #[error("duplicate nodes: {a} and {b} are closer than {tolerance}")]
    DuplicateNodes { a: f64, b: f64, tolerance: f64 },

    /// The node set contains a mirrored pair {t, -t}.
    #[error("symmetric node pair: {a} and {b} sum to less than {tolerance} in magnitude")]
    SymmetricNodes { a: f64, b: f64, tolerance: f64 },

    /// A node sits at the origin, which is forbidden for odd target degree.
    #[error("node {value} is within {tolerance} of zero, forbidden for odd-degree node sets")]
    ZeroNodeOddParity { value: f64, tolerance: f64 },

    /// A node set has the wrong cardinality for its parity.
    #[error("node set has {got} values, expected {expected}")]
    WrongNodeCount { expected: usize, got: usize },

    /// The free node of the U-zero scheme coincides with a zero of U_{2m}.
    #[error("t0 = {t0} is a zero of U_{degree} (|U_{degree}(t0)| = {magnitude:e} <= {tolerance:e})")]
    T0AtChebyshevZero {
        t0: f64,
        degree: usize,
        magnitude: f64,
        tolerance: f64,
    },

    /// A value that must be finite is NaN or infinite.
    #[error("non-finite value encountered: {context}")]
    NonFinite { context: String },

    /// A chord parameter t with |t| >= 1 was supplied.
    #[error("chord parameter t = {t} must satisfy |t| < 1")]
    ChordParameterOutOfRange { t: f64 },

    /// A chord parameter too close to the rim for stable normalization.
    #[error("node t = {t} is within {margin:e} of the rim; normalization rejects it")]
    NodeTooCloseToRim { t: f64, margin: f64 },

    /// Block index outside the valid range for a Xi or Y matrix.
    #[error("block index {index} outside valid range [{min}, {max}]")]
    BlockIndexOutOfRange { index: usize, min: usize, max: usize },

    /// Node-set parity does not match the operation's requirement.
    #[error("node set parity {got} does not match required parity {expected}")]
    ParityMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// A matrix is numerically singular.
    #[error("matrix is numerically singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    /// One of the per-harmonic linear systems of the reconstruction is singular.
    #[error("linear system for block j = {block} is singular for scheme {scheme}")]
    SingularBlock { block: usize, scheme: String },

    /// Grid entry count does not match the angle/node geometry.
    #[error("projection grid has {got} entries, expected {expected} ((2m+1) angles x {nodes} nodes)")]
    GridShapeMismatch {
        expected: usize,
        got: usize,
        nodes: usize,
    },

    /// Degree and node-set parity are inconsistent.
    #[error("degree {degree} is inconsistent with node set parity {parity}")]
    DegreeParityMismatch { degree: usize, parity: &'static str },

    /// Malformed input document.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
