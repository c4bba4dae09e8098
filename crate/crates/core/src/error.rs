use thiserror::Error;

/// Errors raised by the lattice, cone, arc and ideal computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pairing requires one N-side and one M-side vector")]
    SameSide,

    #[error("lattice side mismatch: {0}")]
    SideMismatch(String),

    #[error("the zero vector has no primitive part")]
    ZeroVector,

    #[error("subspace generators are linearly dependent")]
    DependentGenerators,

    #[error("cone is not strongly convex")]
    NotStronglyConvex,

    #[error("generator {0:?} is not an extreme ray of the cone")]
    RedundantGenerator(Vec<String>),

    #[error("generator {0:?} is proportional to another generator")]
    DuplicateRay(Vec<String>),

    #[error("cone is not full-dimensional: {0}")]
    NotFullDimensional(String),

    #[error("ray subset {0:?} is not a face")]
    NotAFace(Vec<usize>),

    #[error("point {0:?} does not lie in the cone")]
    OutsideCone(Vec<String>),

    #[error("fan is invalid: {0}")]
    InvalidFan(String),

    #[error("semigroup homomorphism is inconsistent: {0}")]
    InconsistentHom(String),

    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("the first orbit does not dominate the second")]
    NotDominated,

    #[error("negative exponent in a power series term")]
    NegativeExponent,

    #[error("series precision {given} is too low, need at least {needed}")]
    PrecisionTooLow { needed: String, given: String },

    #[error("the ideal has no generators")]
    EmptyIdeal,

    #[error("exponent {0:?} does not lie in the dual cone")]
    OutsideDual(Vec<String>),

    #[error("order function value {found} differs from the level {level}")]
    WrongLevel { level: String, found: String },

    #[error("contact level must be positive")]
    NonPositiveLevel,

    #[error("minimal-element enumeration did not stabilize after {0} margin doublings")]
    NotStabilized(usize),

    #[error("polynomial has empty support")]
    EmptySupport,

    #[error("polynomial term has a zero coefficient")]
    ZeroCoefficient,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn show<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}
