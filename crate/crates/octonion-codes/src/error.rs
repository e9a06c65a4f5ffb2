use std::fmt;

/// Errors reported by the exact-arithmetic and coding layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Integer overflow in exact arithmetic.
    Overflow,
    /// An octonion product left the half-integer coordinate lattice.
    NotHalfInteger,
    /// Division by zero.
    DivisionByZero,
    /// `p` is not a prime congruent to 1 mod 7, or it has no
    /// representation `a^2 + ab + 2b^2`.
    NotSplitPrime { p: i64 },
    /// No primitive element with the requested power of `w` exists.
    NoPrimitive { p: i64 },
    /// Discrete logarithm of zero requested.
    DlogOfZero,
    /// The label lies outside the subgroup generated by alpha (only
    /// possible when alpha is not primitive).
    NoDiscreteLog { label: u64 },
    /// The discrete-log tables have not been populated yet.
    AlphaNotSet,
    /// `alpha^n` is not `w` or `-w`, so `alpha` cannot drive a code.
    AlphaPowerNotOmega { alpha: u64 },
    /// Two parity-check rows share the same locator value.
    LocatorCollision { alpha: u64 },
    /// Row count outside the supported range `1..=4`.
    BadRows { rows: usize },
    /// More parity rows than code coordinates.
    TooManyRows { rows: usize, n: usize },
    /// A message or word has the wrong number of coordinates.
    WrongLength { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
            Error::NotHalfInteger => {
                write!(f, "octonion product is not a half-integer octonion")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotSplitPrime { p } => {
                write!(
                    f,
                    "{p} is not a prime congruent to 1 mod 7 with a norm representation"
                )
            }
            Error::NoPrimitive { p } => {
                write!(
                    f,
                    "no primitive element reaches the requested power of w modulo {p}"
                )
            }
            Error::DlogOfZero => write!(f, "zero has no discrete logarithm"),
            Error::NoDiscreteLog { label } => {
                write!(
                    f,
                    "label {label} is outside the subgroup generated by alpha"
                )
            }
            Error::AlphaNotSet => write!(f, "no generator has been selected for this field"),
            Error::AlphaPowerNotOmega { alpha } => {
                write!(f, "alpha = {alpha}: alpha^n is neither w nor -w")
            }
            Error::LocatorCollision { alpha } => {
                write!(
                    f,
                    "alpha = {alpha}: parity-check rows share a locator value"
                )
            }
            Error::BadRows { rows } => write!(f, "row count {rows} is not in 1..=4"),
            Error::TooManyRows { rows, n } => {
                write!(f, "{rows} parity rows exceed the code length {n}")
            }
            Error::WrongLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
