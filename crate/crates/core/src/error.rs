use thiserror::Error;

/// Errors reported by the set calculus, measure library, integrators and solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set: {0}")]
    EmptySet(&'static str),

    #[error("direction outside the dual ball: l1 mass {mass} exceeds 1")]
    InvalidDirection { mass: f64 },

    #[error("negative radius {0} in a set description")]
    NegativeRadius(f64),

    #[error("non-finite value in a set description")]
    NonFinite,

    #[error("block count mismatch: {left} vs {right}")]
    BlockMismatch { left: usize, right: usize },

    #[error("invalid measure spec: {0}")]
    InvalidMncSpec(String),

    #[error("measure is not sublinear: {0}")]
    NotSublinear(String),

    #[error("no finite positive-functional representation: {0}")]
    UnsupportedRepresentation(String),

    #[error("unsupported oracle input: {0}")]
    UnsupportedInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter {s} outside the family interval [0, {a}]")]
    OutOfInterval { s: f64, a: f64 },

    #[error("invalid piecewise polynomial: {0}")]
    InvalidPath(String),

    #[error("quadrature missed its target tolerance {target}: achieved {achieved}")]
    QuadratureAccuracy { target: f64, achieved: f64 },

    #[error("invalid Cauchy problem: {0}")]
    InvalidProblem(String),

    #[error(
        "ball hypothesis violated: certified right-hand-side bound {xi} exceeds working radius {radius}"
    )]
    BallHypothesis { xi: f64, radius: f64 },

    #[error("iterate left the working ball of radius {radius} at t = {t}")]
    LeftWorkingBall { t: f64, radius: f64 },

    #[error("{channel} iteration did not converge within {iterations} iterations: {detail}")]
    NoConvergence {
        channel: &'static str,
        iterations: usize,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
