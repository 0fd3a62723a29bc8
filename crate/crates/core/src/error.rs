use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("constant input")]
    ConstantInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("factors are not coprime modulo {0}")]
    NotCoprime(u64),
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("torsion hit: [{0}]P is the point at infinity")]
    TorsionHit(u64),
    #[error("place polynomial is reducible")]
    ReduciblePlace,
    #[error("kernel polynomial does not define a subgroup: {0}")]
    KernelNotSubgroup(String),
    #[error("curves are not isomorphic over the rationals")]
    NotIsomorphic,
    #[error("pair invariant violated: {0}")]
    PairInvariant(String),
    #[error("q = {q} divides the isogeny degree {degree}")]
    PrimeDividesDegree { q: u64, degree: u64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("missing binding '{0}'")]
    MissingBinding(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 2,
            Error::ResourceLimit(_) => 3,
            _ => 1,
        }
    }
}
