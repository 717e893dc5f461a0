use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Shape { expected: usize, found: usize },
    AmbientMismatch { left: usize, right: usize },
    DependentInput,
    NotExtendable { index: String },
    ZeroVector,
    InvalidFan(String),
    NotComplete(String),
    NotACone(Vec<usize>),
    NotNef { wall: Vec<usize> },
    DegenerateConormal { ray: usize },
    NotLocallyConvex { ray: usize, wall: Vec<usize> },
    NotFlag(Vec<usize>),
    OddDimension(usize),
    NotPalindromic(Vec<i64>),
    InvalidDimFunction(String),
    ParityMismatch { n: usize, total: i64 },
    Degenerate(String),
    Precondition(String),
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape { expected, found } => write!(f, "shape mismatch: expected length {expected}, found {found}"),
            Error::AmbientMismatch { left, right } => write!(f, "ambient dimensions differ: {left} vs {right}"),
            Error::DependentInput => f.write_str("input vectors are linearly dependent"),
            Error::NotExtendable { index } => {
                write!(f, "vectors do not extend to a lattice basis (lattice index {index})")
            }
            Error::ZeroVector => f.write_str("zero vector has no primitive generator"),
            Error::InvalidFan(m) => write!(f, "invalid fan: {m}"),
            Error::NotComplete(m) => write!(f, "fan is not complete: {m}"),
            Error::NotACone(c) => write!(f, "ray set {c:?} is not a cone of the fan"),
            Error::NotNef { wall } => write!(f, "divisor is not nef: negative on wall {wall:?}"),
            Error::DegenerateConormal { ray } => {
                write!(f, "link ray {ray} lies in the span of the center (zero conormal coefficient)")
            }
            Error::NotLocallyConvex { ray, wall } => {
                write!(f, "fan is not locally convex: ray {ray} has positive self-intersection on wall {wall:?}")
            }
            Error::NotFlag(w) => write!(f, "fan is not flag: minimal non-face {w:?}"),
            Error::OddDimension(d) => write!(f, "operation needs even dimension, got {d}"),
            Error::NotPalindromic(h) => write!(f, "h-vector {h:?} is not palindromic"),
            Error::InvalidDimFunction(m) => write!(f, "invalid dimension function: {m}"),
            Error::ParityMismatch { n, total } => {
                write!(f, "b_[N] = {total} and N = {n} have different parity; no odd tuple sums to b_[N]")
            }
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Inconsistent(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl core::error::Error for Error {}
