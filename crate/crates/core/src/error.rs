use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("polynomial is not linear in x, y with z-coefficients: {0}")]
    NotXYLinear(String),
    #[error("zero input where a nonzero polynomial is required")]
    ZeroInput,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("matrix is not invertible over the polynomial ring")]
    NotInvertible,
    #[error("the pair (0, 0) has no reduction")]
    ZeroPair,
    #[error("endomorphism does not fix `{0}`")]
    NotFixed(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("endomorphism does not induce the identity on the polynomial algebra")]
    IdentityInductionFailed,
    #[error("reduced metabelian Jacobian has unexpected shape: {0}")]
    ShapeViolation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
