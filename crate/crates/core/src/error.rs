use thiserror::Error;

/// Errors surfaced by the algebra kernels and the enumeration pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be an odd prime >= 7 (got {0})")]
    InvalidPrime(u64),

    #[error("characteristic too large: p must fit below 2^31 (got {0})")]
    PrimeTooLarge(u64),

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("{0} requires a nonzero polynomial")]
    ZeroInput(&'static str),

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("expected degree in {{2g+1, 2g+2}} = {{{low}, {high}}}, got {got}")]
    WrongDegree { low: usize, high: usize, got: usize },

    #[error("duplicate interpolation node")]
    DuplicateNode,

    #[error("interpolation needs at least one point")]
    EmptyInterpolation,

    #[error("total degree {degree} exceeds the bound {bound}")]
    BoundExceeded { degree: usize, bound: usize },

    #[error("polynomial is not divisible by b: monomial a^{a_degree} has a nonzero coefficient")]
    NotDivisibleByB { a_degree: usize },

    #[error("randomized {0} did not converge within the retry budget")]
    RetriesExhausted(&'static str),

    #[error("cover type is invalid: {0}")]
    InvalidCover(&'static str),

    #[error("p = {p} divides the cover degree n = {n}")]
    CharacteristicDividesCover { p: u64, n: u64 },

    #[error("p = {p} exceeds the brute-force oracle bound {bound}")]
    OracleBoundExceeded { p: u64, bound: u64 },

    #[error("cannot parse field element {0:?}: expected \"c0\" or \"c0+c1*t\" in decimal")]
    BadElementEncoding(String),

    #[error("while processing p = {p}: {source}")]
    AtPrime {
        p: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the prime being processed to an error bubbling out of the pipeline.
    pub fn at_prime(self, p: u64) -> Error {
        Error::AtPrime {
            p,
            source: Box::new(self),
        }
    }
}
