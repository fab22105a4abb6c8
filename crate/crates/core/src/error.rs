use thiserror::Error;

/// Errors produced anywhere in the exact engine or the quadrature layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("pole at x = {0}")]
    Pole(f64),
    #[error("x^alpha with non-integer alpha is undefined at x = {0}")]
    NegativeArgument(f64),
    #[error("operator must have order {expected}, found {found:?}")]
    WrongOrder {
        expected: usize,
        found: Option<usize>,
    },
    #[error("seed is not a formal eigenfunction at lambda0 = {0}")]
    Riccati(String),
    #[error("factorization gauge is zero")]
    ZeroGauge,
    #[error("q/p is not integrable in closed quasi-rational form: {0}")]
    Unsupported(String),
    #[error("factorization invariant violated: {0}")]
    Invariant(String),
    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),
    #[error("both the seed and its partner are polynomial: {0}")]
    AmbiguousClassification(String),
    #[error("polynomial seed, ground-state status unknown")]
    GroundStateUnknown,
    #[error("polynomial seed is not the ground state: {0}")]
    NotGroundState(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
