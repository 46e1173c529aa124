use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two generators (or a generator and a container) come from different alphabets.
    #[error("generators belong to different alphabets")]
    ForeignGenerator,

    /// A request reaches past the degree at which a truncated alphabet was cut off.
    #[error("requested bound {requested} exceeds the alphabet's truncation bound {bound}")]
    CutoffExceeded { requested: u32, bound: u32 },

    /// The operation is only defined for x/y-family alphabets.
    #[error("operation is not defined for sphere-family generators")]
    UnsupportedAlphabet,

    #[error("operation requires a product of weight >= 2")]
    WeightOneInput,

    #[error("operands live in different tensor algebras")]
    AlphabetMismatch,

    #[error("polynomial is not homogeneous")]
    InhomogeneousInput,

    #[error("polynomials do not share a single degree")]
    MixedDegreeInput,

    /// The power-series back-substitution produced an impossible coefficient.
    /// This signals a bug, not bad input.
    #[error("series factorization produced {value} at degree {degree}")]
    InconsistentSeries { degree: u32, value: String },

    #[error("dimension {dim} is outside the table range {min}..={max}")]
    OutOfRange { dim: u32, min: u32, max: u32 },

    #[error(
        "verification failed at dimension {dim}: enumeration {enumeration}, span rank {span_rank}, series {series}"
    )]
    VerificationFailure {
        dim: u32,
        enumeration: u64,
        span_rank: u64,
        series: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
