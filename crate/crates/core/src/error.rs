use thiserror::Error;

use crate::expr::ExprError;
use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("frame is not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("frame is rank deficient at {0}")]
    RankDeficientAtPoint(String),
    #[error("groupoid axiom `{identity}` violated at {witness}")]
    AxiomViolation { identity: String, witness: String },
    #[error("tangent vectors are not composable at {0}")]
    NotComposableTangent(String),
    #[error("covectors are not composable at {0}")]
    NotComposableCovector(String),
    #[error("multiplication is not submersive at {0}")]
    SingularSystem(String),
    #[error("bisection is not invertible: {0}")]
    NonInvertibleBisection(String),
    #[error("rank drop: {0}")]
    RankDrop(String),
    #[error("generic solve failed: {0}")]
    GenericSolveFailed(String),
    #[error("section is not in the required kernel: {0}")]
    WrongKernel(String),
    #[error("bracket is not well defined modulo the core: {0}")]
    WellDefinednessViolation(String),
    #[error("data does not belong to the {0} family")]
    FamilyMismatch(String),
    #[error("no lift through the source at {0}")]
    NoLift(String),
    #[error("no sample point avoided the poles after {0} attempts")]
    SamplingExhausted(usize),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for input problems, 3 for internal degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_)
            | Error::UnknownCommand(_)
            | Error::Io(_)
            | Error::FamilyMismatch(_)
            | Error::Expr(ExprError::SyntaxError { .. })
            | Error::Expr(ExprError::UnknownVariable(_))
            | Error::Expr(ExprError::DivisionByZeroPolynomial)
            | Error::Geometry(_) => 2,
            _ => 3,
        }
    }
}
