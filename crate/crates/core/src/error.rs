use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty weight vector")]
    EmptyInput,
    #[error("weight vector needs at least two entries, got {0}")]
    TooFewWeights(usize),
    #[error("weight vector has {0} entries; at most 32 are supported")]
    TooManyWeights(usize),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weight vector {weights:?} is not well-formed: gcd of {subset:?} is {gcd}")]
    NotWellFormed {
        weights: Vec<u64>,
        subset: Vec<u64>,
        gcd: u64,
    },
    #[error("{what} = {value} is out of range 0..{bound}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: i64,
    },
    #[error("weight vector {0:?} does not have the IP property")]
    NotIP(Vec<u64>),
    #[error("face subset must have at least two vertices, got {0}")]
    SubsetTooSmall(usize),
    #[error("face subset {mask:#b} is not contained in 0..{len}")]
    SubsetOutOfRange { mask: u32, len: usize },
    #[error("series reconstruction failed: coefficient of degree {degree} in the guard band is nonzero")]
    ReconstructionFailure { degree: usize },
    #[error("series reconstruction needs {need} coefficients, got {have}")]
    InsufficientTerms { have: usize, need: usize },
    #[error("rational function has a pole at t = 1")]
    PoleAtOne,
    #[error("mirror transform leaves a negative power of u (degree {degree} > {dim})")]
    NegativeExponent { degree: i64, dim: u32 },
    #[error("division by uv is not exact")]
    DivisionNotExact,
    #[error("Milnor number {0} is not an integer for a weight vector claimed transverse")]
    NonIntegerMilnor(String),
    #[error("E-function is not a polynomial")]
    NotPolynomial,
    #[error("coefficient {coeff} of u^{p} v^{q} violates the (-1)^(p+q) sign pattern")]
    SignPatternViolation { p: u32, q: u32, coeff: String },
    #[error("coefficient {coeff} of u^{p} v^{q} is not an integer")]
    NonIntegerCoefficient { p: u32, q: u32, coeff: String },
    #[error("monomial u^{p} v^{q} does not fit a Hodge table of dimension {dim}")]
    DimensionMismatch { p: u32, q: u32, dim: u32 },
}
