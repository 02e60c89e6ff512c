use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cone multiplicity {value} at position {index} must be at least 2")]
    InvalidMultiplicity { index: usize, value: u32 },

    #[error("isotropy {value} at cone point {index} must lie in [0, {multiplicity})")]
    InvalidIsotropy { index: usize, value: u32, multiplicity: u32 },

    #[error("isotropy pair ({minus},{plus}) at cone point {index} must satisfy 0 <= b- <= b+ < {multiplicity}")]
    InvalidIsotropyPair { index: usize, minus: u32, plus: u32, multiplicity: u32 },

    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("bundles live on different orbifold surfaces")]
    SurfaceMismatch,

    #[error(
        "isotropy pair at cone point {index} does not sum to the determinant isotropy {expected} mod {multiplicity}"
    )]
    DeterminantMismatch { index: usize, expected: u32, multiplicity: u32 },

    #[error("line isotropy {value} at cone point {index} is not one of ({minus},{plus})")]
    IncompatibleLine { index: usize, value: u32, minus: u32, plus: u32 },

    #[error("cone multiplicities {first} and {second} are not coprime")]
    NotCoprime { first: u32, second: u32 },

    #[error("the surface has no cone points")]
    NoConePoints,

    #[error("the surface has {0} cone points; a smooth surface is required")]
    NotSmooth(usize),

    #[error("divisor references cone point {0}, which does not exist")]
    UnknownConePoint(usize),

    #[error("weight sum requires a >= 2 and 0 < b < a, got a={a}, b={b}")]
    Domain { a: i64, b: i64 },

    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error is an internal invariant failure rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
