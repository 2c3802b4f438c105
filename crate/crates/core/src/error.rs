use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus below the supported range.
    InvalidModulus(usize),
    /// A generator is zero modulo `n`.
    InvalidGenerator { n: usize, generator: usize },
    /// The two generators coincide up to sign.
    DegenerateGenerators { n: usize, i: usize, j: usize },
    /// The triple is not of the form `0 < i < j <= n/2`.
    NormalizationRequired { n: usize, i: usize, j: usize },
    /// `gcd(n, i, j) > 1`.
    Disconnected { n: usize, i: usize, j: usize, components: usize },
    /// The operation is defined for a different family of specs.
    WrongRegime(&'static str),
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    /// A group element cannot act in the requested context.
    ContextMismatch(&'static str),
    InvariantViolation(String),
    /// A search or oracle would exceed its configured limits.
    BudgetExceeded { what: &'static str, limit: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(n) => write!(f, "invalid modulus {n}: expected n >= 3"),
            Error::InvalidGenerator { n, generator } => {
                write!(f, "generator {generator} is 0 modulo {n}")
            }
            Error::DegenerateGenerators { n, i, j } => {
                write!(f, "generators {i} and {j} coincide up to sign modulo {n}")
            }
            Error::NormalizationRequired { n, i, j } => {
                write!(f, "({n}, {i}, {j}) is not normalized: need 0 < i < j <= n/2")
            }
            Error::Disconnected { n, i, j, components } => write!(
                f,
                "C_{n}({i},{j}) is disconnected ({components} components)"
            ),
            Error::WrongRegime(msg) => write!(f, "wrong regime: {msg}"),
            Error::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex {vertex} out of range (graph has {vertex_count} vertices)")
            }
            Error::ContextMismatch(msg) => write!(f, "group element does not act here: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            Error::BudgetExceeded { what, limit } => {
                write!(f, "budget exceeded: {what} (limit {limit})")
            }
        }
    }
}
