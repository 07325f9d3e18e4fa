use alloc::vec::Vec;
use core::fmt;

use crate::plan::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand dimensions disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// A rank (or dimension) outside what the operation supports.
    RankOutOfRange { rank: usize, min: usize, max: usize },
    /// A vector that must be nonzero was zero.
    ZeroVector,
    /// A matrix that must be invertible was singular.
    Singular,
    /// The Postnikov–Wu identity fails on the given basis pair (0-based).
    PostnikovWu { i: usize, j: usize },
    /// The nonorientable normalization was asked to work with `w = 0`.
    OrientableClass,
    /// A surgery plan failed validation.
    InvalidPlan(Vec<Violation>),
    /// Splicing an orientable plan with a nonorientable one.
    OrientabilityMismatch,
    /// A coefficient field the operation does not handle.
    UnsupportedModulus(u64),
    /// An index outside `0..bound`.
    IndexOutOfRange { index: usize, bound: usize },
    /// A malformed integral 3-form or Bo-plan.
    InvalidIntegral(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::RankOutOfRange { rank, min, max } => {
                write!(f, "rank {rank} outside supported range {min}..={max}")
            }
            Error::ZeroVector => f.write_str("vector must be nonzero"),
            Error::Singular => f.write_str("matrix is singular"),
            Error::PostnikovWu { i, j } => write!(
                f,
                "Postnikov-Wu identity violated on basis pair ({}, {})",
                i + 1,
                j + 1
            ),
            Error::OrientableClass => {
                f.write_str("distinguished class is zero; use the orientable path")
            }
            Error::InvalidPlan(v) => {
                write!(f, "invalid surgery plan:")?;
                for violation in v {
                    write!(f, " {violation};")?;
                }
                Ok(())
            }
            Error::OrientabilityMismatch => {
                f.write_str("cannot splice orientable and nonorientable plans")
            }
            Error::UnsupportedModulus(p) => write!(f, "unsupported coefficient modulus {p}"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 0..{bound}")
            }
            Error::InvalidIntegral(msg) => write!(f, "invalid integral data: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
