use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix shape does not fit the operation.
    Shape(String),
    /// Input matrix is not Hermitian within tolerance.
    NotHermitian { deviation: f64, scale: f64 },
    /// Sequences or point sets live on different groups.
    GroupMismatch,
    /// Operation is not defined for this group (e.g. cyclic groups in bound machinery).
    UnsupportedGroup(String),
    /// A point has the wrong arity or lies outside `[0, N)` for a cyclic group.
    InvalidPoint(String),
    /// Support does not fit the requested interval.
    SupportOutOfRange { n: usize },
    /// An index list contains a repeated entry.
    DuplicateIndex(i64),
    /// Exponents violate `1/p + 1/q = 1 + 1/r`.
    YoungExponents { p: f64, q: f64, r: f64 },
    /// Combinatorial search would exceed its budget.
    Budget { needed: u128, limit: u128, advice: &'static str },
    /// No Freiman map with diameter below the bound exists.
    NotFound { n_max: usize },
    /// Any other violated precondition.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::NotHermitian { deviation, scale } => write!(
                f,
                "matrix is not Hermitian: max |M - M*| = {deviation:e} exceeds 1e-12 * {scale:e}"
            ),
            Error::GroupMismatch => f.write_str("operands live on different groups"),
            Error::UnsupportedGroup(msg) => write!(f, "unsupported group: {msg}"),
            Error::InvalidPoint(msg) => write!(f, "invalid point: {msg}"),
            Error::SupportOutOfRange { n } => {
                write!(f, "support is not contained in [0, {n})")
            }
            Error::DuplicateIndex(j) => write!(f, "index {j} appears more than once"),
            Error::YoungExponents { p, q, r } => write!(
                f,
                "exponents p={p}, q={q}, r={r} violate 1/p + 1/q = 1 + 1/r"
            ),
            Error::Budget { needed, limit, advice } => write!(
                f,
                "combinatorial budget exceeded ({needed} > {limit}); {advice}"
            ),
            Error::NotFound { n_max } => {
                write!(f, "no order-2 Freiman map into [0, {n_max}) exists")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for Error {}
