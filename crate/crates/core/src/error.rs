use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} exceeds the supported maximum of 64")]
    DimensionTooLarge(usize),
    #[error("index list {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("multi-index of length {len} used in a form of degree {degree}")]
    DegreeMismatch { len: usize, degree: usize },
    #[error("a nonzero {degree}-form cannot live in dimension {dim}")]
    DegreeExceedsDimension { degree: usize, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected {expected} arguments, got {got}")]
    ArgumentCount { expected: usize, got: usize },
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("the zero form has no {0}")]
    ZeroForm(&'static str),
    #[error("interior product with the given vector is nonzero, so no preimage exists")]
    NotInKernel,
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("subspace must be proper: dim C = {sub} but ambient dimension is {dim}")]
    NotProper { sub: usize, dim: usize },
    #[error("derivative order {order} outside 1..={max}")]
    DerivativeOrder { order: usize, max: usize },
    #[error("main-part degree {s} outside the admissible range [{lo}, {hi}]")]
    MainDegreeOutOfRange { s: usize, lo: usize, hi: usize },
    #[error("need {needed} complementary covectors but only {available} exist")]
    NotEnoughComplement { needed: usize, available: usize },
    #[error("kernel element with main-part degree {s} below rank {p}")]
    LemmaViolation { s: usize, p: usize },
    #[error("coordinate lists differ")]
    CoordinateMismatch,
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("pole: coordinate `{0}` vanishes where it carries a negative power")]
    Pole(String),
    #[error("hypothesis violated: d(omega) - beta^omega is nonzero")]
    HypothesisViolated,
    #[error("no nonzero derivative found")]
    NoDerivative,
}
